import { ApiError, TriageApi } from "./api";
import { renderDetail } from "./detail";
import { renderErrorBanner, renderQueue } from "./queue";
import { isSeverity, SEVERITIES } from "./severity";
import type { TriageItem, TriageResponse, VerdictPayload } from "./types";

interface AppState {
  runId: string;
  queue: TriageResponse | null;
  view: "queue" | "detail";
  selected: number;
  openKey: string | null;
  reviewer: string;
  error: string | null;
}

export class TriageApp {
  readonly state: AppState;

  constructor(
    readonly root: HTMLElement,
    readonly api: TriageApi,
    runId: string,
  ) {
    this.state = {
      runId,
      queue: null,
      view: "queue",
      selected: 0,
      openKey: null,
      reviewer: "",
      error: null,
    };
    this.root.addEventListener("click", (event) => this.onClick(event));
    this.root.addEventListener("submit", (event) => this.onSubmit(event));
    document.addEventListener("keydown", (event) => this.onKey(event));
  }

  async start(): Promise<void> {
    await this.refresh();
  }

  get items(): TriageItem[] {
    return this.state.queue?.items ?? [];
  }

  get openItem(): TriageItem | null {
    return this.items.find((item) => item.citation_key === this.state.openKey) ?? null;
  }

  async refresh(): Promise<void> {
    try {
      this.state.queue = await this.api.fetchQueue(this.state.runId);
      this.state.error = null;
      this.state.selected = Math.min(this.state.selected, Math.max(this.items.length - 1, 0));
    } catch (err) {
      this.state.error = err instanceof ApiError ? err.message : String(err);
    }
    this.render();
  }

  open(key: string): void {
    this.state.openKey = key;
    this.state.view = "detail";
    this.render();
  }

  back(): void {
    this.state.view = "queue";
    this.state.openKey = null;
    this.render();
  }

  render(): void {
    if (this.state.error !== null) {
      this.root.innerHTML =
        renderErrorBanner(this.state.error) +
        renderQueue(this.items, this.state.queue?.pending ?? 0, this.state.selected);
      return;
    }
    if (this.state.view === "detail" && this.openItem) {
      this.root.innerHTML = renderDetail(this.openItem, this.state.queue?.rubric ?? []);
      const reviewer = this.root.querySelector<HTMLInputElement>("input[name=reviewer]");
      if (reviewer && this.state.reviewer) reviewer.value = this.state.reviewer;
      return;
    }
    this.root.innerHTML = renderQueue(
      this.items,
      this.state.queue?.pending ?? 0,
      this.state.selected,
    );
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement;
    const action = target.closest<HTMLElement>("[data-action]")?.dataset.action;
    if (action === "retry") {
      void this.refresh();
      return;
    }
    if (action === "back") {
      this.back();
      return;
    }
    const row = target.closest<HTMLElement>(".queue-row");
    if (row?.dataset.key) {
      this.state.selected = Number(row.dataset.position ?? 0);
      this.open(row.dataset.key);
    }
  }

  private onSubmit(event: Event): void {
    const form = (event.target as HTMLElement).closest("form");
    if (!form) return;
    event.preventDefault();
    void this.submitVerdict(form as HTMLFormElement);
  }

  async submitVerdict(form: HTMLFormElement): Promise<void> {
    const item = this.openItem;
    if (!item) return;
    const severity =
      form.querySelector<HTMLInputElement>("input[name=decided_severity]:checked")?.value ?? "";
    const reviewer =
      form.querySelector<HTMLInputElement>("input[name=reviewer]")?.value.trim() ?? "";
    const note = form.querySelector<HTMLTextAreaElement>("textarea[name=note]")?.value ?? "";
    const evidence =
      form.querySelector<HTMLInputElement>("input[name=evidence_url]")?.value.trim() ?? "";
    const errorSlot = form.querySelector<HTMLElement>("[data-role=form-error]");
    if (!isSeverity(severity)) {
      if (errorSlot) errorSlot.textContent = "pick a severity";
      return;
    }
    if (!reviewer) {
      if (errorSlot) errorSlot.textContent = "reviewer id is required";
      return;
    }
    this.state.reviewer = reviewer;
    const payload: VerdictPayload = {
      paper_id: item.paper_id,
      index: item.index,
      decided_severity: severity,
      reviewer,
      note,
      evidence_url: evidence || null,
    };
    try {
      await this.api.submitVerdict(this.state.runId, payload);
    } catch (err) {
      // submission failure: keep the form (and its state) on screen
      if (errorSlot) {
        errorSlot.textContent = err instanceof ApiError ? err.message : String(err);
      }
      return;
    }
    const decidedKey = item.citation_key;
    this.state.queue = await this.api.fetchQueue(this.state.runId);
    const next = this.items.find((candidate) => candidate.citation_key !== decidedKey);
    if (next) {
      this.state.selected = this.items.indexOf(next);
      this.open(next.citation_key);
    } else {
      this.back();
    }
  }

  private onKey(event: KeyboardEvent): void {
    const target = event.target as HTMLElement | null;
    const typing = target && (target.tagName === "INPUT" || target.tagName === "TEXTAREA");
    if (this.state.view === "queue") {
      if (event.key === "j" || event.key === "ArrowDown") {
        this.state.selected = Math.min(this.state.selected + 1, this.items.length - 1);
        this.render();
      } else if (event.key === "k" || event.key === "ArrowUp") {
        this.state.selected = Math.max(this.state.selected - 1, 0);
        this.render();
      } else if (event.key === "Enter" && this.items[this.state.selected]) {
        this.open(this.items[this.state.selected].citation_key);
      }
      return;
    }
    if (event.key === "Escape") {
      this.back();
      return;
    }
    if (typing) return;
    const digit = Number(event.key);
    if (digit >= 1 && digit <= SEVERITIES.length) {
      const radio = this.root.querySelector<HTMLInputElement>(
        `input[name=decided_severity][value=${SEVERITIES[digit - 1]}]`,
      );
      if (radio) radio.checked = true;
      return;
    }
    if (event.key === "s") {
      const form = this.root.querySelector<HTMLFormElement>("form[data-role=verdict-form]");
      if (form) void this.submitVerdict(form);
    }
  }
}
