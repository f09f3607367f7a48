/** Debounce acceptance: a 10-event burst in 300 ms yields at most 3 requests,
 * and the rendered mask is the service response for the final slider state. */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { PreviewController } from "../src/preview.js";
import { defaultState, maskRequest, setSlider } from "../src/state.js";
import type { MaskRequest } from "../src/types.js";

/** Deterministic fake service: response bytes encode the request body. */
function bytesFor(body: MaskRequest): Uint8Array {
  return new TextEncoder().encode(JSON.stringify(body));
}

describe("debounced previews", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("collapses a 10-event burst into at most 3 requests and renders the final state", async () => {
    const sent: MaskRequest[] = [];
    const rendered: Uint8Array[] = [];
    const controller = new PreviewController(
      async (body) => {
        sent.push(body);
        return bytesFor(body);
      },
      (bytes) => rendered.push(bytes),
    );

    let state = defaultState();
    state = { ...state, imageId: "img0" };
    let finalBody: MaskRequest | null = null;
    for (let i = 0; i < 10; i++) {
      state = setSlider(state, 0, "h_hi", 10 + i);
      finalBody = maskRequest(state, "img0");
      controller.update(finalBody);
      await vi.advanceTimersByTimeAsync(30); // 10 events inside 300 ms
    }
    await vi.advanceTimersByTimeAsync(400); // let the trailing edge fire

    expect(controller.requestCount).toBeLessThanOrEqual(3);
    expect(sent.length).toBe(controller.requestCount);
    expect(rendered.length).toBeGreaterThan(0);
    // byte-compare the decoded payload against the response for the final state
    expect(rendered[rendered.length - 1]).toEqual(bytesFor(finalBody!));
    expect(sent[sent.length - 1]).toEqual(finalBody);
  });

  it("fires once within 150-400 ms after a lone change", async () => {
    const controller = new PreviewController(async (body) => bytesFor(body), () => {});
    const state = { ...defaultState(), imageId: "img0" };
    controller.update(maskRequest(state, "img0"));

    await vi.advanceTimersByTimeAsync(149);
    expect(controller.requestCount).toBe(0);
    await vi.advanceTimersByTimeAsync(251);
    expect(controller.requestCount).toBe(1);
  });

  it("two changes 50 ms apart produce exactly one request", async () => {
    const controller = new PreviewController(async (body) => bytesFor(body), () => {});
    const state = { ...defaultState(), imageId: "img0" };
    controller.update(maskRequest(state, "img0"));
    await vi.advanceTimersByTimeAsync(50);
    controller.update(maskRequest(setSlider(state, 0, "s_lo", 0.5), "img0"));
    await vi.advanceTimersByTimeAsync(1000);
    expect(controller.requestCount).toBe(1);
  });

  it("keeps the last good mask on network failure and reports the error", async () => {
    const errors: unknown[] = [];
    const rendered: Uint8Array[] = [];
    let failing = false;
    const controller = new PreviewController(
      async (body) => {
        if (failing) throw new Error("connection lost");
        return bytesFor(body);
      },
      (bytes) => rendered.push(bytes),
      (error) => errors.push(error),
    );
    const state = { ...defaultState(), imageId: "img0" };

    controller.update(maskRequest(state, "img0"));
    await vi.advanceTimersByTimeAsync(500);
    expect(rendered.length).toBe(1);

    failing = true;
    controller.update(maskRequest(setSlider(state, 0, "v_lo", 0.4), "img0"));
    await vi.advanceTimersByTimeAsync(500);
    expect(errors.length).toBe(1);
    expect(rendered.length).toBe(1); // unchanged: last good mask retained
  });
});
