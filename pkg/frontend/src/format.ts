/** Display strings for rank labels and API responses. The UI never derives
 * rankings itself; everything shown comes from server payloads. */

import type { LabelJson, LabelResponse } from "./types.js";

export function rankingString(label: LabelJson): string {
  return "[" + label.positions.join(" ") + "]";
}

/** Best-to-worst lines, ties joined with " = ". */
export function rankedLines(label: LabelJson, items: string[]): string[] {
  const groups = [...label.tie_groups].sort(
    (a, b) => label.positions[a[0]] - label.positions[b[0]],
  );
  return groups.map((group) => {
    const names = group.map((id) => items[id]).join(" = ");
    const suffix = group.length > 1 ? " (tie)" : "";
    return `${label.positions[group[0]]}. ${names}${suffix}`;
  });
}

/** The ranking text shown in the side panel: every consistent ranking at
 * the weight, straight from the /api/label response. */
export function displayedRanking(response: LabelResponse): string {
  if (response.labels.length === 0) {
    return rankingString(response.label_at_point);
  }
  return response.labels.map(rankingString).join(" or ");
}

export function percent(fraction: number, digits = 1): string {
  return (fraction * 100).toFixed(digits) + "%";
}

export function weightString(weight: number[]): string {
  return weight.map((v) => v.toFixed(3)).join(" / ");
}
