/** SVG scene building. Pure data-in, DOM-out; no fetching here. */

import { Triangle, parseExactBary } from "./geometry.js";
import { percent, rankingString } from "./format.js";
import type { DecompositionJson, Mode, RegionJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, String(v));
  }
  return node;
}

function gray(t: number): string {
  const v = Math.max(0, Math.min(255, Math.round(235 - 165 * t)));
  const h = v.toString(16).padStart(2, "0");
  return `#${h}${h}${h}`;
}

export function regionFill(
  region: RegionJson,
  mode: Mode,
  itemIndex: number | null,
  itemCount: number,
): string {
  if (mode === "item-heatmap" && itemIndex !== null) {
    const pos = region.label.positions[itemIndex];
    const t = itemCount <= 1 ? 0 : (pos - 1) / (itemCount - 1);
    return gray(t);
  }
  if (mode === "sensitivity") {
    return gray(0.15);
  }
  return region.color.hex;
}

export interface SceneHandlers {
  onRegionHover?: (index: number | null) => void;
}

export function drawScene(
  svg: SVGSVGElement,
  tri: Triangle,
  data: DecompositionJson,
  mode: Mode,
  selectedItem: string | null,
  highlight: number | null,
  handlers: SceneHandlers = {},
): void {
  svg.innerHTML = "";
  svg.setAttribute("viewBox", `0 0 ${tri.width} ${tri.height}`);
  const items = data.input_set.items;
  const itemIndex = selectedItem ? items.indexOf(selectedItem) : null;

  for (let k = 0; k < data.regions.length; k++) {
    const region = data.regions[k];
    const pts = region.vertices_barycentric.map((b) =>
      tri.toScreen(parseExactBary(b)),
    );
    if (pts.length < 3) continue;
    const fill = regionFill(region, mode, itemIndex, items.length);
    const poly = el("polygon", {
      points: pts.map((p) => `${p.x},${p.y}`).join(" "),
      fill,
      stroke: "#ffffff",
      "stroke-width": 1,
      class: "region",
    });
    if (mode === "sensitivity") {
      // visual inset bands toward the centroid: darker = deeper
      const c = tri.toScreen(
        parseExactBary(region.centroid_barycentric ?? ["0", "0", "1"]),
      );
      svg.appendChild(poly);
      for (let band = 1; band <= 5; band++) {
        const t = band / 6;
        const inset = pts.map((p) => ({
          x: p.x + (c.x - p.x) * t,
          y: p.y + (c.y - p.y) * t,
        }));
        svg.appendChild(
          el("polygon", {
            points: inset.map((p) => `${p.x},${p.y}`).join(" "),
            fill: gray(0.15 + 0.85 * t),
            stroke: "none",
            "pointer-events": "none",
          }),
        );
      }
    } else {
      svg.appendChild(poly);
    }
    if (highlight === k) {
      poly.setAttribute("stroke", "#111111");
      poly.setAttribute("stroke-width", "3");
    }
    poly.addEventListener("pointerenter", () =>
      handlers.onRegionHover?.(k),
    );
    poly.addEventListener("pointerleave", () =>
      handlers.onRegionHover?.(null),
    );
  }

  drawFrame(svg, tri, data.input_set.inputs.map((i) => i.name));
}

function drawFrame(svg: SVGSVGElement, tri: Triangle, names: string[]): void {
  const [r, l, t] = tri.corners();
  // relative-weight axes: corner through the opposite edge midpoint
  const axes: [
    { x: number; y: number },
    [number, number, number],
  ][] = [
    [r, [0, 0.5, 0.5]],
    [l, [0.5, 0, 0.5]],
    [t, [0.5, 0.5, 0]],
  ];
  for (const [corner, opposite] of axes) {
    const o = tri.toScreen(opposite);
    svg.appendChild(
      el("line", {
        x1: corner.x, y1: corner.y, x2: o.x, y2: o.y,
        stroke: "#bbbbbb", "stroke-width": 0.8,
        "stroke-dasharray": "5,4", "pointer-events": "none",
      }),
    );
  }
  svg.appendChild(
    el("polygon", {
      points: [r, l, t].map((p) => `${p.x},${p.y}`).join(" "),
      fill: "none", stroke: "#222222", "stroke-width": 1.5,
      "pointer-events": "none",
    }),
  );
  const labels: [{ x: number; y: number }, string, string][] = [
    [{ x: r.x, y: r.y + 20 }, names[0], "end"],
    [{ x: l.x, y: l.y + 20 }, names[1], "start"],
    [{ x: t.x, y: t.y - 10 }, names[2], "middle"],
  ];
  for (const [p, text, anchor] of labels) {
    const node = el("text", {
      x: p.x, y: p.y, "text-anchor": anchor, class: "corner-label",
    });
    node.textContent = text;
    svg.appendChild(node);
  }
}

export function drawMarker(
  svg: SVGSVGElement,
  tri: Triangle,
  weight: [number, number, number],
): void {
  svg.querySelector("#weight-marker")?.remove();
  const p = tri.toScreen(weight);
  const group = el("g", { id: "weight-marker", "pointer-events": "none" });
  group.appendChild(
    el("circle", {
      cx: p.x, cy: p.y, r: 7, fill: "none",
      stroke: "#111111", "stroke-width": 2,
    }),
  );
  group.appendChild(el("circle", { cx: p.x, cy: p.y, r: 2.5, fill: "#111111" }));
  svg.appendChild(group);
}

export interface BarchartHandlers {
  onBarClick?: (regionIndex: number) => void;
  onBarHover?: (regionIndex: number | null, pctText: string | null) => void;
}

export function drawBarchart(
  svg: SVGSVGElement,
  data: DecompositionJson,
  highlight: number | null,
  handlers: BarchartHandlers = {},
): void {
  svg.innerHTML = "";
  const chart = data.analytics.barchart;
  const width = 460;
  const height = 230;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  if (chart.length === 0) return;
  const margin = 16;
  const plotH = height - 56;
  const gap = (width - 2 * margin) / chart.length;
  const barW = gap * 0.7;
  const maxFrac = Math.max(...chart.map((e) => e.fraction));
  chart.forEach((entry, k) => {
    const region = data.regions[entry.region];
    const h = maxFrac > 0 ? (plotH * entry.fraction) / maxFrac : 0;
    const x = margin + k * gap + (gap - barW) / 2;
    const y = margin + plotH - h;
    const bar = el("rect", {
      x, y, width: barW, height: Math.max(h, 1),
      fill: region.color.hex,
      stroke: highlight === entry.region ? "#111111" : "#555555",
      "stroke-width": highlight === entry.region ? 2.5 : 0.8,
      class: "bar",
    });
    bar.addEventListener("click", () => handlers.onBarClick?.(entry.region));
    bar.addEventListener("pointerenter", () =>
      handlers.onBarHover?.(entry.region, percent(entry.fraction)),
    );
    bar.addEventListener("pointerleave", () =>
      handlers.onBarHover?.(null, null),
    );
    svg.appendChild(bar);
    const pct = el("text", {
      x: x + barW / 2, y: y - 4, "text-anchor": "middle", class: "bar-pct",
    });
    pct.textContent = percent(entry.fraction);
    svg.appendChild(pct);
    const label = el("text", {
      x: x + barW / 2, y: margin + plotH + 14,
      "text-anchor": "middle", class: "bar-label",
      transform: chart.length > 6
        ? `rotate(45 ${x + barW / 2} ${margin + plotH + 14})`
        : "",
    });
    label.textContent = rankingString(region.label);
    svg.appendChild(label);
  });
}
