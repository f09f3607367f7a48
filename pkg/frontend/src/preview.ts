/** Debounced, sequence-numbered mask previews.
 *
 * Slider changes call update(); one request fires per quiet period, and a
 * response is applied only while no newer request has been issued, so
 * out-of-order arrivals can never paint a stale mask.
 */

import { Debouncer } from "./debounce.js";
import type { MaskRequest } from "./types.js";

export type MaskFetcher = (body: MaskRequest) => Promise<Uint8Array>;

export class PreviewController {
  private seq = 0;
  private debouncer: Debouncer;
  /** requests actually sent; exposed for tests and the status line */
  requestCount = 0;

  constructor(
    private fetcher: MaskFetcher,
    private onMask: (bytes: Uint8Array, body: MaskRequest) => void,
    private onError: (error: unknown) => void = () => {},
    waitMs = 150,
  ) {
    this.debouncer = new Debouncer(waitMs);
  }

  update(body: MaskRequest): void {
    this.debouncer.schedule(() => void this.fire(body));
  }

  /** Send immediately, bypassing the debounce (image switch, config import). */
  fireNow(body: MaskRequest): void {
    this.debouncer.cancel();
    void this.fire(body);
  }

  private async fire(body: MaskRequest): Promise<void> {
    const ticket = ++this.seq;
    this.requestCount += 1;
    try {
      const bytes = await this.fetcher(body);
      if (ticket !== this.seq) return; // superseded while in flight
      this.onMask(bytes, body);
    } catch (error) {
      if (ticket === this.seq) this.onError(error);
    }
  }
}
