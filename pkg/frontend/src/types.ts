/** Payload shapes of the decomposition server's JSON API. */

export type Bary = [number, number, number];

export interface LabelJson {
  positions: number[];
  tie_groups: number[][];
}

export interface RegionJson {
  label: LabelJson;
  color: { index: number; hex: string };
  area: number;
  area_fraction: number;
  area_fraction_exact: string | null;
  vertices_equilateral: [number, number][];
  vertices_barycentric: string[][];
  centroid_equilateral: [number, number];
  centroid_barycentric: string[] | null;
}

export interface DecompositionJson {
  version: number;
  method: "exact" | "grid";
  grid_resolution: number | null;
  nonlinear: boolean;
  problem: unknown;
  input_set: {
    items: string[];
    inputs: { name: string; kind: string; values_exact: string[] }[];
  };
  regions: RegionJson[];
  boundary_labels: { label: LabelJson; segment_barycentric: string[][] }[];
  adjacency: [number, number, string, number][];
  analytics: {
    barchart: { region: number; fraction: number }[];
    xstar: number[][];
    astar: number[][];
    expected_ranking: number[];
    rankability: number;
  };
  grid_cells?: number[];
}

export interface LabelResponse {
  weight: number[];
  aggregate: number[];
  label_at_point: LabelJson;
  labels: LabelJson[];
  region_indices: number[];
  area_fraction: number | null;
  tie: boolean;
}

export interface SensitivityResponse {
  weight: number[];
  robustness: number;
}

export type Mode = "colormap" | "item-heatmap" | "sensitivity";

export interface ViewState {
  weight: Bary;
  mode: Mode;
  hoverRegion: number | null;
  selectedItem: string | null;
}
