/** Wire types mirroring the calibration service's JSON bodies. */

export interface HsvRange {
  h_lo: number;
  h_hi: number;
  s_lo: number;
  s_hi: number;
  v_lo: number;
  v_hi: number;
}

export interface SsrParams {
  sigma: number | null;
  epsilon_floor: number;
}

export type FusionMode = "color" | "and" | "or";

export interface SessionConfig {
  ssr: SsrParams;
  ranges: HsvRange[];
  fusion: FusionMode;
  dbscan: { eps: number; min_pts: number };
  min_area: number;
  rust_threshold_pct: number;
}

export interface ImageInfo {
  id: string;
  name: string;
  width: number;
  height: number;
}

export interface ClusterInfo {
  id: number;
  pixel_count: number;
  bbox: [number, number, number, number];
  centroid: [number, number];
}

export interface RustReport {
  image_id: string;
  width: number;
  height: number;
  rust_pixel_count: number;
  total_pixels: number;
  rust_percentage: number;
  clusters: ClusterInfo[];
  classification: "RUSTY" | "CLEAN";
  config: SessionConfig;
}

/** Body of POST /api/mask: the preview subset of the config. */
export interface MaskRequest {
  image_id: string;
  ranges: HsvRange[];
  ssr: SsrParams;
  fusion: FusionMode;
}
