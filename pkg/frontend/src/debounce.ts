/** Trailing-edge debouncer: the callback runs once the events go quiet. */

export class Debouncer {
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(readonly waitMs: number) {}

  schedule(fn: () => void): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      fn();
    }, this.waitMs);
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }
}
