/** Pure view-state transitions: the weight marker, mode switches, and the
 * proportional slider renormalization. */

import type { Bary, Mode, ViewState } from "./types.js";

export function initialState(): ViewState {
  return {
    weight: [1 / 3, 1 / 3, 1 / 3],
    mode: "colormap",
    hoverRegion: null,
    selectedItem: null,
  };
}

export function withWeight(state: ViewState, weight: Bary): ViewState {
  return { ...state, weight };
}

/** Mode changes never touch the stored weight. */
export function withMode(
  state: ViewState,
  mode: Mode,
  selectedItem: string | null = state.selectedItem,
): ViewState {
  return { ...state, mode, selectedItem };
}

export function withHover(state: ViewState, region: number | null): ViewState {
  return { ...state, hoverRegion: region };
}

/** Set one weight component; the other two keep their mutual ratio.
 * When the others are both zero the remainder splits evenly. */
export function sliderWeight(weight: Bary, index: number, value: number): Bary {
  const v = Math.max(0, Math.min(1, value));
  const rest = 1 - v;
  const others = [0, 1, 2].filter((k) => k !== index);
  const currentRest = weight[others[0]] + weight[others[1]];
  const out: Bary = [0, 0, 0];
  out[index] = v;
  if (currentRest <= 0) {
    out[others[0]] = rest / 2;
    out[others[1]] = rest / 2;
  } else {
    out[others[0]] = (rest * weight[others[0]]) / currentRest;
    out[others[1]] = (rest * weight[others[1]]) / currentRest;
  }
  return out;
}

export function weightIsValid(weight: Bary, tol = 1e-9): boolean {
  return (
    weight.every((v) => v >= -tol) &&
    Math.abs(weight[0] + weight[1] + weight[2] - 1) <= tol
  );
}
