/** Aggregate quality score rendered as a 0-5 star string. */

export function starString(score: number | null): string {
  if (score === null || Number.isNaN(score)) {
    return "–";
  }
  const clamped = Math.max(0, Math.min(5, score));
  const full = Math.round(clamped);
  return "★".repeat(full) + "☆".repeat(5 - full);
}
