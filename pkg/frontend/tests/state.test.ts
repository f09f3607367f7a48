/** Config round-trip acceptance: export -> import -> export is byte-identical
 * and the sliders restore exactly. Also covers the slider mapping rules. */

import { describe, expect, it } from "vitest";

import {
  DEFAULT_RANGE,
  applyConfig,
  clampSlider,
  defaultState,
  maskRequest,
  setSlider,
  stateToConfig,
} from "../src/state.js";
import type { SessionConfig } from "../src/types.js";

/** Same contract as the service's /api/config: canonical text in, text out. */
class MockConfigService {
  private text: string;

  constructor(initial: SessionConfig) {
    this.text = MockConfigService.canonical(initial);
  }

  static canonical(config: SessionConfig): string {
    return JSON.stringify(config, null, 2) + "\n";
  }

  get(): string {
    return this.text;
  }

  put(config: SessionConfig): string {
    this.text = MockConfigService.canonical(config);
    return this.text;
  }
}

function configWithRanges(count: number): SessionConfig {
  const ranges = Array.from({ length: count }, (_, i) => ({
    h_lo: 5 + i,
    h_hi: 25 + i,
    s_lo: 0.3,
    s_hi: 0.9,
    v_lo: 0.1,
    v_hi: 0.8,
  }));
  return {
    ssr: { sigma: 40, epsilon_floor: 1e-4 },
    ranges,
    fusion: "or",
    dbscan: { eps: 2.5, min_pts: 7 },
    min_area: 100,
    rust_threshold_pct: 1.5,
  };
}

describe("config round trip", () => {
  it("export -> import -> export is byte-identical", () => {
    for (const count of [1, 2, 5]) {
      const service = new MockConfigService(configWithRanges(count));
      const exported = service.get();

      const imported = JSON.parse(exported) as SessionConfig;
      const state = applyConfig(defaultState(), imported);
      const reExported = service.put(stateToConfig(state));

      expect(reExported).toBe(exported);
      expect(service.get()).toBe(exported);
    }
  });

  it("restores the sliders exactly", () => {
    const config = configWithRanges(2);
    const state = applyConfig(defaultState(), config);
    expect(state.slots[0].enabled).toBe(true);
    expect(state.slots[0].range).toEqual(config.ranges[0]);
    expect(state.slots[1].enabled).toBe(true);
    expect(state.slots[1].range).toEqual(config.ranges[1]);
    expect(state.sigma).toBe(40);
    expect(state.fusion).toBe("or");
    expect(state.dbscanEps).toBe(2.5);
    expect(state.dbscanMinPts).toBe(7);
    expect(state.minArea).toBe(100);
    expect(state.rustThresholdPct).toBe(1.5);
  });

  it("a single-range config disables the second panel", () => {
    const state = applyConfig(defaultState(), configWithRanges(1));
    expect(state.slots[1].enabled).toBe(false);
    expect(stateToConfig(state).ranges).toHaveLength(1);
  });

  it("ranges beyond the two panels survive a round trip", () => {
    const config = configWithRanges(5);
    const state = applyConfig(defaultState(), config);
    expect(state.extraRanges).toHaveLength(3);
    expect(stateToConfig(state).ranges).toEqual(config.ranges);
  });
});

describe("slider mapping", () => {
  it("hue sliders wrap and s/v sliders clamp", () => {
    expect(clampSlider("h_lo", 380)).toBe(20);
    expect(clampSlider("h_hi", -10)).toBe(350);
    expect(clampSlider("s_lo", 1.4)).toBe(1);
    expect(clampSlider("v_hi", -0.2)).toBe(0);
  });

  it("keeps s/v intervals ordered while hue may wrap", () => {
    let state = defaultState();
    state = setSlider(state, 0, "s_lo", 0.9);
    expect(state.slots[0].range.s_hi).toBeGreaterThanOrEqual(state.slots[0].range.s_lo);
    state = setSlider(state, 0, "v_hi", 0.05);
    expect(state.slots[0].range.v_lo).toBeLessThanOrEqual(state.slots[0].range.v_hi);
    state = setSlider(state, 0, "h_lo", 350);
    state = setSlider(state, 0, "h_hi", 20);
    expect(state.slots[0].range.h_lo).toBe(350); // wrapping interval stands
    expect(state.slots[0].range.h_hi).toBe(20);
  });

  it("setSlider does not mutate the previous state", () => {
    const before = defaultState();
    const after = setSlider(before, 0, "s_lo", 0.5);
    expect(before.slots[0].range).toEqual(DEFAULT_RANGE);
    expect(after.slots[0].range.s_lo).toBe(0.5);
  });

  it("mask requests carry only the preview fields", () => {
    const state = { ...defaultState(), imageId: "abc" };
    const body = maskRequest(state, "abc");
    expect(Object.keys(body).sort()).toEqual(["fusion", "image_id", "ranges", "ssr"]);
    expect(body.ranges).toHaveLength(1);
    expect(body.ssr).toEqual({ sigma: null, epsilon_floor: 1e-4 });
  });

  it("disabled second panel stays out of the request until enabled", () => {
    let state = { ...defaultState(), imageId: "abc" };
    expect(maskRequest(state, "abc").ranges).toHaveLength(1);
    state = { ...state, slots: [state.slots[0], { ...state.slots[1], enabled: true }] };
    expect(maskRequest(state, "abc").ranges).toHaveLength(2);
  });
});
