// Rendering fidelity: what the UI shows must be exactly what the service
// sent — severity badges one-to-one with the enum, diff tokens identical to
// the service-provided normalized token lists.

import { describe, expect, it } from "vitest";

import { TriageApi } from "../src/api";
import { TriageApp } from "../src/app";
import { SEVERITY_TITLES } from "../src/severity";
import { tenItemQueue } from "./fixtures";
import { installMock, MockService } from "./mockService";

function mount(): HTMLElement {
  document.body.innerHTML = "<div id='app'></div>";
  return document.getElementById("app")!;
}

describe("rendering fidelity on a 10-item fixture queue", () => {
  it("severity badges match the service values exactly", async () => {
    const service = new MockService(tenItemQueue());
    installMock(service);
    const root = mount();
    const app = new TriageApp(root, new TriageApi(""), "run-1");
    await app.start();

    const rows = [...root.querySelectorAll(".queue-row")];
    expect(rows).toHaveLength(10);
    const served = service.pendingItems();
    rows.forEach((row, i) => {
      const badge = row.querySelector(".badge")!;
      expect(badge.textContent).toBe(SEVERITY_TITLES[served[i].severity]);
      expect(badge.className).toContain(`badge-${served[i].severity}`);
    });
  });

  it("title diffs render the service-provided tokens verbatim", async () => {
    const service = new MockService(tenItemQueue());
    installMock(service);
    const root = mount();
    const app = new TriageApp(root, new TriageApi(""), "run-1");
    await app.start();

    for (const item of service.pendingItems()) {
      app.open(item.citation_key);
      const citedTokens = [...root.querySelectorAll("[data-role=diff-cited] .tok")].map(
        (span) => span.textContent,
      );
      const candidateTokens = [...root.querySelectorAll("[data-role=diff-candidate] .tok")].map(
        (span) => span.textContent,
      );
      expect(citedTokens).toEqual(item.cited_title_tokens);
      expect(candidateTokens).toEqual(item.candidates[0].title_tokens);
    }
  });

  it("scores are displayed with the exact service values", async () => {
    const service = new MockService(tenItemQueue());
    installMock(service);
    const root = mount();
    const app = new TriageApp(root, new TriageApi(""), "run-1");
    await app.start();

    const item = service.pendingItems()[0];
    app.open(item.citation_key);
    const scores = [...root.querySelectorAll(".candidate .score")].map((s) => s.textContent);
    expect(scores[0]).toBe(`title ${item.candidates[0].title_score.toFixed(3)}`);
    expect(scores[1]).toBe(`authors ${item.candidates[0].author_score.toFixed(3)}`);
  });
});
