/** Thin fetch wrappers over the calibration service. */

import type { ImageInfo, MaskRequest, RustReport, SessionConfig } from "./types.js";

async function failWithDiagnostics(resp: Response): Promise<never> {
  let detail = `${resp.status} ${resp.statusText}`;
  try {
    const body = await resp.json();
    if (body && typeof body === "object") {
      const field = (body as Record<string, unknown>).field;
      const error = (body as Record<string, unknown>).error ?? (body as Record<string, unknown>).detail;
      detail = field ? `${field}: ${error}` : String(error ?? detail);
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new Error(detail);
}

export class ApiClient {
  constructor(readonly base = "") {}

  async listImages(): Promise<ImageInfo[]> {
    const resp = await fetch(`${this.base}/api/images`);
    if (!resp.ok) await failWithDiagnostics(resp);
    return (await resp.json()) as ImageInfo[];
  }

  imageUrl(id: string): string {
    return `${this.base}/api/images/${id}`;
  }

  async fetchMask(body: MaskRequest): Promise<Uint8Array> {
    const resp = await fetch(`${this.base}/api/mask`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) await failWithDiagnostics(resp);
    return new Uint8Array(await resp.arrayBuffer());
  }

  async analyze(config: SessionConfig, imageId: string): Promise<RustReport> {
    const resp = await fetch(`${this.base}/api/analyze`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ ...config, image_id: imageId }),
    });
    if (!resp.ok) await failWithDiagnostics(resp);
    return (await resp.json()) as RustReport;
  }

  /** The service's canonical config serialization, byte-for-byte. */
  async exportConfigText(): Promise<string> {
    const resp = await fetch(`${this.base}/api/config`);
    if (!resp.ok) await failWithDiagnostics(resp);
    return await resp.text();
  }

  async putConfig(config: SessionConfig): Promise<string> {
    const resp = await fetch(`${this.base}/api/config`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
    if (!resp.ok) await failWithDiagnostics(resp);
    return await resp.text();
  }
}
