/** Screen placement of the weight triangle and the barycentric mapping.
 *
 * Convention shared with the server's renderers: input 1 sits at the right
 * corner, input 2 at the left corner, input 3 on top. Screen points mix the
 * three corner positions barycentrically, which makes the inverse a 2x2
 * linear solve and keeps round trips exact to float precision.
 */

import type { Bary } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export class Triangle {
  readonly right: Point;
  readonly left: Point;
  readonly top: Point;
  readonly side: number;

  constructor(size: number, margin: number) {
    const height = (size * Math.sqrt(3)) / 2;
    this.side = size;
    this.right = { x: margin + size, y: margin + height };
    this.left = { x: margin, y: margin + height };
    this.top = { x: margin + size / 2, y: margin };
  }

  get width(): number {
    return this.right.x + this.left.x;
  }

  get height(): number {
    return this.left.y + this.top.y;
  }

  toScreen(b: Bary): Point {
    const [b1, b2, b3] = b;
    return {
      x: b1 * this.right.x + b2 * this.left.x + b3 * this.top.x,
      y: b1 * this.right.y + b2 * this.left.y + b3 * this.top.y,
    };
  }

  /** Inverse of toScreen; the result sums to 1 but may leave [0,1]
   * for points outside the triangle (clamp first for weights). */
  fromScreen(p: Point): Bary {
    const ax = this.right.x - this.top.x;
    const ay = this.right.y - this.top.y;
    const bx = this.left.x - this.top.x;
    const by = this.left.y - this.top.y;
    const det = ax * by - bx * ay;
    const px = p.x - this.top.x;
    const py = p.y - this.top.y;
    const b1 = (px * by - bx * py) / det;
    const b2 = (ax * py - px * ay) / det;
    return [b1, b2, 1 - b1 - b2];
  }

  corners(): [Point, Point, Point] {
    return [this.right, this.left, this.top];
  }
}

function closestOnSegment(p: Point, a: Point, b: Point): Point {
  const vx = b.x - a.x;
  const vy = b.y - a.y;
  const lengthSq = vx * vx + vy * vy;
  if (lengthSq === 0) return a;
  let t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / lengthSq;
  t = Math.max(0, Math.min(1, t));
  return { x: a.x + t * vx, y: a.y + t * vy };
}

export function distance(a: Point, b: Point): number {
  return Math.hypot(a.x - b.x, a.y - b.y);
}

/** Clamp a screen point to the triangle: identity inside, otherwise the
 * nearest point of the boundary. */
export function clampToTriangle(tri: Triangle, p: Point): Point {
  const b = tri.fromScreen(p);
  if (b[0] >= 0 && b[1] >= 0 && b[2] >= 0) return p;
  const [r, l, t] = tri.corners();
  const candidates = [
    closestOnSegment(p, r, l),
    closestOnSegment(p, l, t),
    closestOnSegment(p, t, r),
  ];
  let best = candidates[0];
  for (const c of candidates.slice(1)) {
    if (distance(p, c) < distance(p, best)) best = c;
  }
  return best;
}

/** Clamp tiny negative components from float noise and renormalize. */
export function sanitizeWeight(b: Bary): Bary {
  const clamped = b.map((v) => (v < 0 ? 0 : v)) as Bary;
  const total = clamped[0] + clamped[1] + clamped[2];
  return [clamped[0] / total, clamped[1] / total, clamped[2] / total];
}

export function parseExactBary(strs: string[]): Bary {
  const parse = (s: string): number => {
    const slash = s.indexOf("/");
    if (slash < 0) return Number(s);
    return Number(s.slice(0, slash)) / Number(s.slice(slash + 1));
  };
  return [parse(strs[0]), parse(strs[1]), parse(strs[2])];
}
