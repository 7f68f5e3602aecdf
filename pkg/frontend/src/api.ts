/** Typed client for the decomposition server. Label and sensitivity
 * lookups abort any in-flight request when a newer one starts, so a drag
 * always settles on the latest position (last write wins). */

import type {
  Bary,
  DecompositionJson,
  LabelResponse,
  SensitivityResponse,
} from "./types.js";

export class ApiClient {
  private labelAbort: AbortController | null = null;
  private sensitivityAbort: AbortController | null = null;

  constructor(readonly base: string = "") {}

  async decomposition(): Promise<DecompositionJson> {
    const resp = await fetch(`${this.base}/api/decomposition`);
    if (!resp.ok) throw new Error(`decomposition fetch failed: ${resp.status}`);
    return (await resp.json()) as DecompositionJson;
  }

  private weightQuery(w: Bary): string {
    return `l1=${w[0]}&l2=${w[1]}&l3=${w[2]}`;
  }

  /** Resolves null when superseded by a newer request. */
  async labelAt(w: Bary): Promise<LabelResponse | null> {
    this.labelAbort?.abort();
    const controller = new AbortController();
    this.labelAbort = controller;
    try {
      const resp = await fetch(
        `${this.base}/api/label?${this.weightQuery(w)}`,
        { signal: controller.signal },
      );
      if (!resp.ok) throw new Error(`label fetch failed: ${resp.status}`);
      return (await resp.json()) as LabelResponse;
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    }
  }

  async sensitivityAt(w: Bary): Promise<SensitivityResponse | null> {
    this.sensitivityAbort?.abort();
    const controller = new AbortController();
    this.sensitivityAbort = controller;
    try {
      const resp = await fetch(
        `${this.base}/api/sensitivity?${this.weightQuery(w)}`,
        { signal: controller.signal },
      );
      if (!resp.ok) return { weight: [...w], robustness: NaN };
      return (await resp.json()) as SensitivityResponse;
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    }
  }
}
