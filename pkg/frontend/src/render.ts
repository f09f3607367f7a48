/** Canvas compositing: image, mask tint, and the three view modes. */

import type { ViewMode } from "./state.js";

const TINT = "#ff2a2a";

export async function decodeMask(bytes: Uint8Array): Promise<ImageBitmap> {
  const copy = new Uint8Array(bytes); // detach from any shared buffer
  return await createImageBitmap(new Blob([copy.buffer], { type: "image/png" }));
}

/** Paint the mask's white pixels in the tint color on a scratch canvas. */
function tintMask(mask: ImageBitmap): HTMLCanvasElement {
  const scratch = document.createElement("canvas");
  scratch.width = mask.width;
  scratch.height = mask.height;
  const ctx = scratch.getContext("2d")!;
  ctx.drawImage(mask, 0, 0);
  ctx.globalCompositeOperation = "multiply";
  ctx.fillStyle = TINT;
  ctx.fillRect(0, 0, scratch.width, scratch.height);
  // keep tinted pixels only where the mask itself is lit
  ctx.globalCompositeOperation = "destination-in";
  ctx.drawImage(mask, 0, 0);
  return scratch;
}

export function drawComposite(
  canvas: HTMLCanvasElement,
  image: ImageBitmap | null,
  mask: ImageBitmap | null,
  view: ViewMode,
  opacity: number,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (image) {
    canvas.width = image.width;
    canvas.height = image.height;
  }
  if (view !== "mask" && image) ctx.drawImage(image, 0, 0);
  if (view === "original" || !mask) return;
  if (image && (mask.width !== image.width || mask.height !== image.height)) {
    throw new Error(`mask ${mask.width}x${mask.height} does not match image ${image.width}x${image.height}`);
  }
  if (view === "mask") {
    canvas.width = mask.width;
    canvas.height = mask.height;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    ctx.drawImage(mask, 0, 0);
    return;
  }
  ctx.globalAlpha = opacity;
  ctx.drawImage(tintMask(mask), 0, 0);
  ctx.globalAlpha = 1;
}
