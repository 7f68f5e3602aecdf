/** Explorer bootstrap: fetch the decomposition once, then keep the scene,
 * sliders, and the ranking panel in sync with the weight marker. */

import { ApiClient } from "./api.js";
import {
  Triangle,
  clampToTriangle,
  sanitizeWeight,
} from "./geometry.js";
import {
  displayedRanking,
  percent,
  rankedLines,
  weightString,
} from "./format.js";
import { drawBarchart, drawMarker, drawScene } from "./render.js";
import {
  initialState,
  sliderWeight,
  withMode,
  withWeight,
} from "./state.js";
import type { Bary, DecompositionJson, Mode, ViewState } from "./types.js";

const api = new ApiClient("");
const tri = new Triangle(520, 70);

function byId<T extends Element>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as unknown as T;
}

function showError(message: string): void {
  const banner = byId<HTMLDivElement>("error-banner");
  banner.textContent = message;
  banner.hidden = false;
}

async function boot(): Promise<void> {
  let data: DecompositionJson;
  try {
    data = await api.decomposition();
  } catch (err) {
    showError(`Could not load the decomposition: ${err}`);
    return;
  }
  let state: ViewState = initialState();
  let highlight: number | null = null;

  const svg = byId<SVGSVGElement>("triangle");
  const barSvg = byId<SVGSVGElement>("barchart");
  const sliders = [0, 1, 2].map((k) =>
    byId<HTMLInputElement>(`slider-${k}`),
  );
  const numbers = [0, 1, 2].map((k) =>
    byId<HTMLInputElement>(`number-${k}`),
  );
  const modeSelect = byId<HTMLSelectElement>("mode");
  const itemSelect = byId<HTMLSelectElement>("item");
  const sliderLabels = [0, 1, 2].map((k) =>
    byId<HTMLLabelElement>(`slider-label-${k}`),
  );

  data.input_set.inputs.forEach((input, k) => {
    sliderLabels[k].textContent = input.name;
  });
  for (const name of data.input_set.items) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    itemSelect.appendChild(opt);
  }
  itemSelect.value = data.input_set.items[0];
  if (data.method !== "exact") {
    (modeSelect.querySelector('option[value="sensitivity"]') as
      HTMLOptionElement | null)?.setAttribute("disabled", "true");
  }

  function redrawScene(): void {
    drawScene(svg, tri, data, state.mode, state.selectedItem, highlight, {
      onRegionHover: (k) => {
        byId<HTMLSpanElement>("hover-info").textContent =
          k === null
            ? ""
            : `region ${k + 1}: ${percent(data.regions[k].area_fraction)}`;
      },
    });
    drawMarker(svg, tri, state.weight);
    drawBarchart(barSvg, data, highlight, {
      onBarClick: (regionIndex) => {
        highlight = highlight === regionIndex ? null : regionIndex;
        redrawScene();
      },
      onBarHover: (regionIndex, pct) => {
        byId<HTMLSpanElement>("hover-info").textContent =
          regionIndex === null ? "" : `${pct} of the weight set`;
      },
    });
  }

  function syncInputs(): void {
    state.weight.forEach((v, k) => {
      sliders[k].value = v.toFixed(4);
      numbers[k].value = v.toFixed(4);
    });
    byId<HTMLSpanElement>("weight-text").textContent =
      weightString([...state.weight]);
  }

  async function refreshPanel(): Promise<void> {
    try {
      const label = await api.labelAt(state.weight);
      if (label === null) return; // superseded by a newer drag
      byId<HTMLDivElement>("ranking-summary").textContent =
        displayedRanking(label);
      byId<HTMLDivElement>("ranking-tie").textContent = label.tie
        ? "on a boundary: several rankings are tied here"
        : "";
      const lines = rankedLines(label.label_at_point, data.input_set.items);
      byId<HTMLOListElement>("ranking-list").innerHTML = "";
      for (const line of lines) {
        const li = document.createElement("li");
        li.textContent = line;
        byId<HTMLOListElement>("ranking-list").appendChild(li);
      }
      byId<HTMLSpanElement>("area-info").textContent =
        label.area_fraction === null
          ? "-"
          : percent(label.area_fraction);
      if (data.method === "exact") {
        const sens = await api.sensitivityAt(state.weight);
        if (sens !== null) {
          byId<HTMLSpanElement>("robustness-info").textContent =
            Number.isNaN(sens.robustness)
              ? "-"
              : sens.robustness.toFixed(3);
        }
      }
    } catch (err) {
      showError(`Server request failed: ${err}`);
    }
  }

  function setWeight(weight: Bary): void {
    state = withWeight(state, sanitizeWeight(weight));
    syncInputs();
    drawMarker(svg, tri, state.weight);
    void refreshPanel();
  }

  // pointer interaction on the triangle
  let dragging = false;
  const pointToWeight = (ev: PointerEvent): Bary => {
    const rect = svg.getBoundingClientRect();
    const scale = tri.width / rect.width;
    const p = {
      x: (ev.clientX - rect.left) * scale,
      y: (ev.clientY - rect.top) * scale,
    };
    return tri.fromScreen(clampToTriangle(tri, p));
  };
  svg.addEventListener("pointerdown", (ev) => {
    dragging = true;
    svg.setPointerCapture(ev.pointerId);
    setWeight(pointToWeight(ev));
  });
  svg.addEventListener("pointermove", (ev) => {
    if (dragging) setWeight(pointToWeight(ev));
  });
  svg.addEventListener("pointerup", () => {
    dragging = false;
  });

  sliders.forEach((slider, k) => {
    slider.addEventListener("input", () => {
      setWeight(sliderWeight(state.weight, k, Number(slider.value)));
    });
  });
  numbers.forEach((num, k) => {
    num.addEventListener("change", () => {
      setWeight(sliderWeight(state.weight, k, Number(num.value)));
    });
  });

  modeSelect.addEventListener("change", () => {
    state = withMode(state, modeSelect.value as Mode);
    byId<HTMLDivElement>("item-picker").hidden =
      state.mode !== "item-heatmap";
    redrawScene();
    drawMarker(svg, tri, state.weight);
  });
  itemSelect.addEventListener("change", () => {
    state = withMode(state, state.mode, itemSelect.value);
    redrawScene();
    drawMarker(svg, tri, state.weight);
  });

  byId<HTMLDivElement>("item-picker").hidden = true;
  redrawScene();
  syncInputs();
  await refreshPanel();
}

void boot();
