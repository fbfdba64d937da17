import { beforeEach, describe, expect, it } from "vitest";

import { TriageApi } from "../src/api";
import { TriageApp } from "../src/app";
import { makeCandidate, makeItem, threeItemQueue } from "./fixtures";
import { installMock, MockService } from "./mockService";

function mount(): HTMLElement {
  document.body.innerHTML = "<div id='app'></div>";
  return document.getElementById("app")!;
}

async function openedApp(service: MockService, key: string): Promise<{ app: TriageApp; root: HTMLElement }> {
  const root = mount();
  installMock(service);
  const app = new TriageApp(root, new TriageApi(""), "run-1");
  await app.start();
  app.open(key);
  return { app, root };
}

describe("detail screen", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders a no-candidates notice for a mysterious item with zero hits", async () => {
    const { root } = await openedApp(new MockService(threeItemQueue()), "gamma:2");
    expect(root.querySelector("[data-role=no-candidates]")!.textContent).toContain(
      "No candidates from any source",
    );
    expect(root.querySelector("[data-role=raw-entry]")!.textContent).toContain("gamma:2");
    expect(root.querySelector("[data-role=rationale]")!.textContent).toContain(
      "machine rationale for gamma:2",
    );
  });

  it("highlights token-level title differences from the service-provided tokens", async () => {
    const { root } = await openedApp(new MockService(threeItemQueue()), "beta:2");
    const citedSpans = [...root.querySelectorAll("[data-role=diff-cited] .tok")];
    const candidateSpans = [...root.querySelectorAll("[data-role=diff-candidate] .tok")];
    // cited:    energy efficient scheduling of tensor pipelines
    // found:    energy aware scheduling of tensor workloads
    expect(citedSpans.map((s) => s.textContent)).toEqual([
      "energy", "efficient", "scheduling", "of", "tensor", "pipelines",
    ]);
    const citedDiff = citedSpans.filter((s) => s.classList.contains("tok-diff"));
    expect(citedDiff.map((s) => s.textContent)).toEqual(["efficient", "pipelines"]);
    const candidateDiff = candidateSpans.filter((s) => s.classList.contains("tok-diff"));
    expect(candidateDiff.map((s) => s.textContent)).toEqual(["aware", "workloads"]);
  });

  it("shows the rubric including the ResearchGate rule and evidence links", async () => {
    const { root } = await openedApp(new MockService(threeItemQueue()), "beta:2");
    expect(root.querySelector("[data-role=rubric]")!.textContent).toContain("ResearchGate");
    const link = root.querySelector(".cand-links a")!;
    expect(link.getAttribute("href")).toBe("https://dblp.org/rec/conf/x/y1");
    expect(link.getAttribute("rel")).toContain("noopener");
  });

  it("keeps form state and surfaces the error when submission fails", async () => {
    const service = new MockService(threeItemQueue());
    const { root } = await openedApp(service, "gamma:2");
    service.failNextSubmit = true;

    (root.querySelector("input[name=reviewer]") as HTMLInputElement).value = "rev-7";
    (root.querySelector("textarea[name=note]") as HTMLTextAreaElement).value = "half-typed note";
    (root.querySelector("input[value=minor_error]") as HTMLInputElement).checked = true;
    const form = root.querySelector("form") as HTMLFormElement;
    form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await new Promise((resolve) => setTimeout(resolve, 0));

    // still on the detail screen, text intact, error visible
    expect(root.querySelector("[data-screen=detail]")).not.toBeNull();
    expect((root.querySelector("textarea[name=note]") as HTMLTextAreaElement).value).toBe(
      "half-typed note",
    );
    expect(root.querySelector("[data-role=form-error]")!.textContent).toContain("503");
    expect(service.verdicts).toHaveLength(0);
  });

  it("requires a reviewer id before submitting", async () => {
    const service = new MockService(threeItemQueue());
    const { root } = await openedApp(service, "gamma:2");
    (root.querySelector("input[value=ok]") as HTMLInputElement).checked = true;
    const form = root.querySelector("form") as HTMLFormElement;
    form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(root.querySelector("[data-role=form-error]")!.textContent).toContain("reviewer");
    expect(service.verdicts).toHaveLength(0);
  });

  it("severity options map one-to-one onto the service enum", async () => {
    const { root } = await openedApp(new MockService(threeItemQueue()), "gamma:2");
    const values = [...root.querySelectorAll("input[name=decided_severity]")].map((input) =>
      (input as HTMLInputElement).value,
    );
    expect(values).toEqual(["ok", "minor_error", "rephrased_title", "mysterious"]);
  });

  it("digit keys pick a severity without touching the mouse", async () => {
    const { root } = await openedApp(new MockService(threeItemQueue()), "gamma:2");
    document.dispatchEvent(new KeyboardEvent("keydown", { key: "2", bubbles: true }));
    const checked = root.querySelector(
      "input[name=decided_severity]:checked",
    ) as HTMLInputElement;
    expect(checked.value).toBe("minor_error");
  });
});

describe("candidate rendering edge cases", () => {
  it("renders multiple candidates with confirmed markers", async () => {
    const item = makeItem("solo:1", "rephrased_title", "Alpha Beta Gamma Delta", [
      makeCandidate("Alpha Beta Gamma Delta", {
        native_id: "rec/1",
        title_score: 1.0,
        location_confirmed: true,
      }),
      makeCandidate("Alpha Beta Something Else", { native_id: "rec/2", title_score: 0.5 }),
    ]);
    const { root } = await openedApp(new MockService([item]), "solo:1");
    expect(root.querySelectorAll(".candidate")).toHaveLength(2);
    expect(root.querySelectorAll(".confirmed")).toHaveLength(1);
  });
});
