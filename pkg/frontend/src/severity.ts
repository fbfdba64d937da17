import type { SeverityLabel } from "./types";

// One-to-one with the service enum; the UI must not invent levels.
export const SEVERITIES: SeverityLabel[] = [
  "ok",
  "minor_error",
  "rephrased_title",
  "mysterious",
];

export const SEVERITY_TITLES: Record<SeverityLabel, string> = {
  ok: "ok",
  minor_error: "minor error",
  rephrased_title: "rephrased title",
  mysterious: "mysterious",
};

export function badgeClass(severity: SeverityLabel): string {
  return `badge badge-${severity}`;
}

export function isSeverity(value: string): value is SeverityLabel {
  return (SEVERITIES as string[]).includes(value);
}
