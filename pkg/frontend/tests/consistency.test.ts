/** UI-server consistency: the ranking the explorer would display at a drag
 * position must equal what GET /api/label itself returns there, for 100
 * scripted drag positions, with sub-half-pixel screen round trips. Spawns
 * the python server on a fixture problem. */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { displayedRanking } from "../src/format.js";
import {
  Triangle,
  clampToTriangle,
  distance,
  sanitizeWeight,
} from "../src/geometry.js";
import type { Bary, LabelResponse } from "../src/types.js";

const PROBLEM = {
  version: 1,
  items: [
    "T1 Temozolomide",
    "T2 Pembrolizumab",
    "T3 Gliovac",
    "T4 Bevacizumab",
    "T5 Adavosertib",
  ],
  inputs: [
    { name: "complexity", kind: "ranking", values: [1, 2, 3, 4, 5] },
    { name: "effectiveness", kind: "ranking", values: [1, 3, 2, 4, 5] },
    { name: "quality of life", kind: "ranking", values: [5, 1, 2, 3, 4] },
  ],
  options: { normalize: true },
};

const PORT = 18000 + (process.pid % 2000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/api/decomposition`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("python server did not come up in time");
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "simplexrank-ui-"));
  const problemPath = join(dir, "problem.json");
  writeFileSync(problemPath, JSON.stringify(PROBLEM));
  server = spawn(
    "python3",
    ["-m", "simplexrank.cli", "serve", "--input", problemPath,
     "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 40000);

afterAll(() => {
  server?.kill();
});

function lcg(seed: number): () => number {
  let s = seed >>> 0;
  return () => {
    s = (s * 1664525 + 1013904223) >>> 0;
    return s / 2 ** 32;
  };
}

const tri = new Triangle(520, 70);

/** The explorer's drag pipeline: screen point -> clamp -> barycentric ->
 * /api/label -> displayed string. */
async function uiPipeline(
  api: ApiClient,
  screen: { x: number; y: number },
): Promise<{ weight: Bary; displayed: string; response: LabelResponse }> {
  const clamped = clampToTriangle(tri, screen);
  const weight = sanitizeWeight(tri.fromScreen(clamped));
  const response = await api.labelAt(weight);
  if (response === null) throw new Error("request unexpectedly superseded");
  return { weight, displayed: displayedRanking(response), response };
}

describe("ui-server consistency", () => {
  it("matches /api/label on 100 scripted drag positions", async () => {
    const api = new ApiClient(BASE);
    const rand = lcg(20260810);
    const positions: { x: number; y: number }[] = [
      tri.toScreen([1, 0, 0]),
      tri.toScreen([0, 1, 0]),
      tri.toScreen([0, 0, 1]),
      tri.toScreen([0.5, 0.5, 0]),
    ];
    while (positions.length < 100) {
      positions.push({
        x: rand() * tri.width * 1.3 - tri.width * 0.15,
        y: rand() * tri.height * 1.3 - tri.height * 0.15,
      });
    }
    let mismatches = 0;
    for (const screen of positions) {
      const { weight, displayed } = await uiPipeline(api, screen);
      // independent request at the same weight
      const direct = await fetch(
        `${BASE}/api/label?l1=${weight[0]}&l2=${weight[1]}&l3=${weight[2]}`,
      );
      expect(direct.ok).toBe(true);
      const raw = (await direct.json()) as LabelResponse;
      if (displayed !== displayedRanking(raw)) mismatches += 1;
    }
    expect(mismatches).toBe(0);
  }, 60000);

  it("shows each input's own ranking at its corner", async () => {
    const api = new ApiClient(BASE);
    const expected = [
      [1, 2, 3, 4, 5],
      [1, 3, 2, 4, 5],
      [5, 1, 2, 3, 4],
    ];
    const corners: Bary[] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for (let k = 0; k < 3; k++) {
      const { response } = await uiPipeline(api, tri.toScreen(corners[k]));
      expect(response.label_at_point.positions).toEqual(expected[k]);
    }
  }, 20000);

  it("marks boundary drags as ties with both rankings shown", async () => {
    const api = new ApiClient(BASE);
    const { response, displayed } = await uiPipeline(
      api,
      tri.toScreen([0.5, 0.5, 0]),
    );
    expect(response.tie).toBe(true);
    expect(response.labels.length).toBe(2);
    expect(displayed).toContain(" or ");
  }, 20000);

  it("round-trips drag positions under half a pixel", async () => {
    const rand = lcg(4242);
    for (let k = 0; k < 100; k++) {
      const p = {
        x: rand() * tri.width,
        y: rand() * tri.height,
      };
      const clamped = clampToTriangle(tri, p);
      const back = tri.toScreen(tri.fromScreen(clamped));
      expect(distance(clamped, back)).toBeLessThan(0.5);
    }
  });

  it("supersedes stale label requests during a fast drag", async () => {
    const api = new ApiClient(BASE);
    const first = api.labelAt([1, 0, 0]);
    const second = api.labelAt([0, 0, 1]);
    const [a, b] = await Promise.all([first, second]);
    expect(a).toBeNull(); // aborted by the newer request
    expect(b).not.toBeNull();
    expect(b!.label_at_point.positions).toEqual([5, 1, 2, 3, 4]);
  }, 20000);
});
