import { badgeClass, SEVERITY_TITLES } from "./severity";
import { escapeHtml } from "./html";
import type { TriageItem } from "./types";

export function renderQueue(items: TriageItem[], pending: number, selected: number): string {
  if (items.length === 0) {
    return `
      <section class="queue" data-screen="queue">
        <h1>Triage queue</h1>
        <p class="empty-state" data-role="queue-clear">Queue clear — nothing awaiting review.</p>
      </section>`;
  }
  const rows = items
    .map((item, position) => {
      const cls = position === selected ? "queue-row selected" : "queue-row";
      return `
        <tr class="${cls}" data-key="${escapeHtml(item.citation_key)}" data-position="${position}">
          <td><span class="${badgeClass(item.severity)}">${escapeHtml(SEVERITY_TITLES[item.severity])}</span></td>
          <td class="key">${escapeHtml(item.citation_key)}</td>
          <td class="title">${escapeHtml(item.parsed.title ?? "(no parsed title)")}</td>
          <td class="status">${escapeHtml(item.status)}</td>
        </tr>`;
    })
    .join("");
  return `
    <section class="queue" data-screen="queue">
      <h1>Triage queue <span class="pending-count" data-role="pending-count">${pending}</span> pending</h1>
      <table class="queue-table">
        <thead><tr><th>severity</th><th>citation</th><th>parsed title</th><th>status</th></tr></thead>
        <tbody>${rows}</tbody>
      </table>
      <p class="hint">j/k or arrows to move, Enter to open.</p>
    </section>`;
}

export function renderErrorBanner(message: string): string {
  return `
    <div class="error-banner" data-role="error-banner">
      <span>${escapeHtml(message)}</span>
      <button type="button" data-action="retry">Retry</button>
    </div>`;
}
