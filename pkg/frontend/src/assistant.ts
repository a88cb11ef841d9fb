/**
 * License compatibility assistant: sends the selected license IRIs to the
 * backend and prepares the verdict for display. Network failures surface
 * as a retry state; the selection is never dropped.
 */

import { ApiClient, ApiError, LicenseVerdict } from "./api.js";

export type AssistantResult =
  | { status: "ok"; verdict: LicenseVerdict }
  | { status: "invalid"; message: string }
  | { status: "network_error"; message: string };

const CONFLICT_LABELS: Record<string, string> = {
  share_alike_clash: "Share-alike clash",
  permission_prohibition_clash: "Permission/prohibition clash",
  unknown_license: "Unknown license",
};

export async function checkSelectedLicenses(
  api: ApiClient,
  selected: string[],
): Promise<AssistantResult> {
  if (selected.length === 0) {
    return { status: "invalid", message: "Select at least one license." };
  }
  try {
    const verdict = await api.checkLicenses(selected);
    return { status: "ok", verdict };
  } catch (error) {
    if (error instanceof ApiError) {
      return { status: "invalid", message: error.message };
    }
    const message = error instanceof Error ? error.message : String(error);
    return { status: "network_error", message };
  }
}

export function conflictLabel(kind: string): string {
  return CONFLICT_LABELS[kind] ?? kind;
}

/** Short, displayable summary lines for a verdict. */
export function verdictSummary(verdict: LicenseVerdict): string[] {
  if (verdict.compatible) {
    const names = verdict.candidates.map((c) => c.name);
    return [
      "Compatible.",
      names.length > 0
        ? `Relicensing candidates: ${names.join(", ")}`
        : "No relicensing candidate in the license database.",
    ];
  }
  return [
    "Incompatible.",
    ...verdict.conflicts.map((c) => `${conflictLabel(c.kind)}: ${c.details}`),
  ];
}
