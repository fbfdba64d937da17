import { tokenDiff, type DiffToken } from "./diff";
import { escapeHtml } from "./html";
import { badgeClass, SEVERITIES, SEVERITY_TITLES } from "./severity";
import type { CandidateEvidence, TriageItem } from "./types";

function diffHtml(tokens: DiffToken[]): string {
  return tokens
    .map((token) =>
      token.match
        ? `<span class="tok tok-same">${escapeHtml(token.text)}</span>`
        : `<mark class="tok tok-diff">${escapeHtml(token.text)}</mark>`,
    )
    .join(" ");
}

function candidateHtml(item: TriageItem, candidate: CandidateEvidence, position: number): string {
  const diff = tokenDiff(item.cited_title_tokens, candidate.title_tokens);
  const links = candidate.links
    .map((url) => `<a href="${escapeHtml(url)}" target="_blank" rel="noopener noreferrer">${escapeHtml(url)}</a>`)
    .join(" ");
  return `
    <article class="candidate" data-candidate="${position}">
      <header>
        <span class="source-tag">${escapeHtml(candidate.source)}</span>
        <span class="score">title ${candidate.title_score.toFixed(3)}</span>
        <span class="score">authors ${candidate.author_score.toFixed(3)}</span>
        ${candidate.location_confirmed ? '<span class="confirmed">location confirmed</span>' : ""}
      </header>
      <p class="cand-title">${escapeHtml(candidate.title)}</p>
      <div class="diff" data-role="diff">
        <div class="diff-row"><span class="diff-label">cited</span> <span data-role="diff-cited">${diffHtml(diff.cited)}</span></div>
        <div class="diff-row"><span class="diff-label">found</span> <span data-role="diff-candidate">${diffHtml(diff.candidate)}</span></div>
      </div>
      <p class="cand-meta">${escapeHtml(candidate.authors.join(", "))}${
        candidate.venue ? ` — ${escapeHtml(candidate.venue)}` : ""
      }${candidate.year ? ` (${candidate.year})` : ""}</p>
      <p class="cand-links">${links}</p>
    </article>`;
}

export function renderDetail(item: TriageItem, rubric: string[]): string {
  const candidates = item.candidates.length
    ? item.candidates.map((candidate, i) => candidateHtml(item, candidate, i)).join("")
    : '<p class="empty-state" data-role="no-candidates">No candidates from any source.</p>';
  const severityOptions = SEVERITIES.map(
    (severity, i) =>
      `<label class="severity-option"><input type="radio" name="decided_severity" value="${severity}" ${
        severity === item.severity ? "checked" : ""
      }> ${i + 1}&nbsp;${escapeHtml(SEVERITY_TITLES[severity])}</label>`,
  ).join("");
  const rubricItems = rubric.map((line) => `<li>${escapeHtml(line)}</li>`).join("");
  const authors = item.parsed.authors.map((a) => escapeHtml(a.raw)).join("; ");
  return `
    <section class="detail" data-screen="detail" data-key="${escapeHtml(item.citation_key)}">
      <header class="detail-header">
        <button type="button" data-action="back">&larr; queue</button>
        <span class="${badgeClass(item.severity)}">${escapeHtml(SEVERITY_TITLES[item.severity])}</span>
        <h1>${escapeHtml(item.citation_key)}</h1>
      </header>
      <pre class="raw-entry" data-role="raw-entry">${escapeHtml(item.raw_text)}</pre>
      <dl class="parsed-fields">
        <dt>title</dt><dd>${escapeHtml(item.parsed.title ?? "—")}</dd>
        <dt>authors</dt><dd>${authors || "—"}${item.parsed.et_al ? " et al." : ""}</dd>
        <dt>venue</dt><dd>${escapeHtml(item.parsed.venue ?? "—")}</dd>
        <dt>year</dt><dd>${item.parsed.year ?? "—"}</dd>
        <dt>doi</dt><dd>${escapeHtml(item.parsed.doi ?? "—")}</dd>
        <dt>arxiv</dt><dd>${escapeHtml(item.parsed.arxiv_id ?? "—")}</dd>
      </dl>
      <p class="rationale" data-role="rationale">${escapeHtml(item.rationale)}</p>
      <h2>Candidate evidence</h2>
      ${candidates}
      <aside class="rubric" data-role="rubric">
        <h2>Validation rubric</h2>
        <ol>${rubricItems}</ol>
      </aside>
      <form class="verdict-form" data-role="verdict-form">
        <h2>Record verdict</h2>
        <div class="severity-options">${severityOptions}</div>
        <label>reviewer <input name="reviewer" required placeholder="your id"></label>
        <label>note <textarea name="note" rows="2"></textarea></label>
        <label>evidence URL <input name="evidence_url" type="url" placeholder="https://..."></label>
        <button type="submit" data-action="submit-verdict">Submit verdict (s)</button>
        <span class="form-error" data-role="form-error"></span>
      </form>
      <p class="hint">1-4 pick severity, s submits, Esc returns to the queue.</p>
    </section>`;
}
