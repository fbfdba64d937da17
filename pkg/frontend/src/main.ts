import { TriageApi } from "./api";
import { TriageApp } from "./app";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app mount point");
  const api = new TriageApi("");
  const fromQuery = new URLSearchParams(window.location.search).get("run");
  let runId = fromQuery;
  if (!runId) {
    const { runs } = await api.listRuns();
    runId = runs[0];
  }
  if (!runId) {
    root.innerHTML = "<p class='empty-state'>No runs available on this service.</p>";
    return;
  }
  const app = new TriageApp(root, api, runId);
  await app.start();
}

void boot();
