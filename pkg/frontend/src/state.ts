/** UI state and the (bijective) mapping between sliders and session config. */

import type { FusionMode, HsvRange, MaskRequest, SessionConfig } from "./types.js";

export interface RangeSlot {
  enabled: boolean;
  range: HsvRange;
}

export type ViewMode = "overlay" | "mask" | "original";

export interface UiState {
  imageId: string | null;
  /** Two trackbar panels; slot 0 is always enabled. */
  slots: [RangeSlot, RangeSlot];
  /** Ranges beyond the two panels (advanced toggle), kept verbatim. */
  extraRanges: HsvRange[];
  sigma: number | null;
  epsilonFloor: number;
  fusion: FusionMode;
  dbscanEps: number;
  dbscanMinPts: number;
  minArea: number;
  rustThresholdPct: number;
  opacity: number;
  view: ViewMode;
}

export const DEFAULT_RANGE: HsvRange = {
  h_lo: 340,
  h_hi: 30,
  s_lo: 0.35,
  s_hi: 1,
  v_lo: 0.15,
  v_hi: 0.95,
};

const SECOND_SLOT_SEED: HsvRange = { h_lo: 20, h_hi: 50, s_lo: 0.35, s_hi: 1, v_lo: 0.15, v_hi: 0.95 };

export function defaultState(): UiState {
  return {
    imageId: null,
    slots: [
      { enabled: true, range: { ...DEFAULT_RANGE } },
      { enabled: false, range: { ...SECOND_SLOT_SEED } },
    ],
    extraRanges: [],
    sigma: null,
    epsilonFloor: 1e-4,
    fusion: "and",
    dbscanEps: 3,
    dbscanMinPts: 9,
    minArea: 64,
    rustThresholdPct: 0.5,
    opacity: 0.5,
    view: "overlay",
  };
}

/** Hue wraps into [0, 360); saturation/value clamp into [0, 1]. */
export function clampSlider(field: keyof HsvRange, value: number): number {
  if (field === "h_lo" || field === "h_hi") {
    const wrapped = value % 360;
    return wrapped < 0 ? wrapped + 360 : wrapped;
  }
  return Math.min(1, Math.max(0, value));
}

export function setSlider(state: UiState, slot: 0 | 1, field: keyof HsvRange, value: number): UiState {
  const slots: [RangeSlot, RangeSlot] = [
    { enabled: state.slots[0].enabled, range: { ...state.slots[0].range } },
    { enabled: state.slots[1].enabled, range: { ...state.slots[1].range } },
  ];
  slots[slot].range[field] = clampSlider(field, value);
  // keep s/v intervals ordered; hue intervals may wrap so both orders are legal
  const r = slots[slot].range;
  if (r.s_lo > r.s_hi) {
    if (field === "s_lo") r.s_hi = r.s_lo;
    else r.s_lo = r.s_hi;
  }
  if (r.v_lo > r.v_hi) {
    if (field === "v_lo") r.v_hi = r.v_lo;
    else r.v_lo = r.v_hi;
  }
  return { ...state, slots };
}

export function activeRanges(state: UiState): HsvRange[] {
  const ranges = state.slots.filter((s) => s.enabled).map((s) => ({ ...s.range }));
  return ranges.concat(state.extraRanges.map((r) => ({ ...r })));
}

export function maskRequest(state: UiState, imageId: string): MaskRequest {
  return {
    image_id: imageId,
    ranges: activeRanges(state),
    ssr: { sigma: state.sigma, epsilon_floor: state.epsilonFloor },
    fusion: state.fusion,
  };
}

export function stateToConfig(state: UiState): SessionConfig {
  return {
    ssr: { sigma: state.sigma, epsilon_floor: state.epsilonFloor },
    ranges: activeRanges(state),
    fusion: state.fusion,
    dbscan: { eps: state.dbscanEps, min_pts: state.dbscanMinPts },
    min_area: state.minArea,
    rust_threshold_pct: state.rustThresholdPct,
  };
}

/** Import a config: first two ranges fill the panels, the rest go to extras. */
export function applyConfig(state: UiState, config: SessionConfig): UiState {
  const first = config.ranges[0] ?? { ...DEFAULT_RANGE };
  const second = config.ranges[1];
  return {
    ...state,
    slots: [
      { enabled: true, range: { ...first } },
      { enabled: second !== undefined, range: { ...(second ?? SECOND_SLOT_SEED) } },
    ],
    extraRanges: config.ranges.slice(2).map((r) => ({ ...r })),
    sigma: config.ssr.sigma,
    epsilonFloor: config.ssr.epsilon_floor,
    fusion: config.fusion,
    dbscanEps: config.dbscan.eps,
    dbscanMinPts: config.dbscan.min_pts,
    minArea: config.min_area,
    rustThresholdPct: config.rust_threshold_pct,
  };
}
