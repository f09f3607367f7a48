/** DOM wiring: sliders in, debounced previews out.
 *
 * Every rendered mask comes from the service; nothing is segmented locally.
 */

import { ApiClient } from "./api.js";
import { PreviewController } from "./preview.js";
import { decodeMask, drawComposite } from "./render.js";
import {
  UiState,
  ViewMode,
  applyConfig,
  defaultState,
  maskRequest,
  setSlider,
  stateToConfig,
} from "./state.js";
import type { HsvRange, ImageInfo, SessionConfig } from "./types.js";

const api = new ApiClient();
let state: UiState = defaultState();
let imageBitmap: ImageBitmap | null = null;
let maskBitmap: ImageBitmap | null = null;

const canvas = document.getElementById("canvas") as HTMLCanvasElement;
const banner = document.getElementById("banner")!;
const reportLine = document.getElementById("report")!;
const imageSelect = document.getElementById("image-select") as HTMLSelectElement;

const SLIDER_FIELDS: Array<{ field: keyof HsvRange; label: string; hue: boolean }> = [
  { field: "h_lo", label: "H lo", hue: true },
  { field: "h_hi", label: "H hi", hue: true },
  { field: "s_lo", label: "S lo", hue: false },
  { field: "s_hi", label: "S hi", hue: false },
  { field: "v_lo", label: "V lo", hue: false },
  { field: "v_hi", label: "V hi", hue: false },
];

function showError(message: string): void {
  banner.textContent = message;
  banner.classList.remove("hidden");
}

function clearError(): void {
  banner.classList.add("hidden");
}

const preview = new PreviewController(
  (body) => api.fetchMask(body),
  async (bytes) => {
    try {
      maskBitmap = await decodeMask(bytes);
      clearError();
      redraw();
    } catch (error) {
      showError(`mask decode failed: ${error}`);
    }
  },
  (error) => showError(`preview failed: ${error}`), // last good mask stays up
);

function redraw(): void {
  try {
    drawComposite(canvas, imageBitmap, maskBitmap, state.view, state.opacity);
  } catch (error) {
    showError(String(error));
  }
}

function schedulePreview(immediate = false): void {
  if (!state.imageId) return;
  const body = maskRequest(state, state.imageId);
  if (immediate) preview.fireNow(body);
  else preview.update(body);
}

function sliderInputs(slot: 0 | 1): HTMLInputElement[] {
  const host = document.querySelector(`#slot-${slot} .sliders`)!;
  return Array.from(host.querySelectorAll("input"));
}

function buildSliderPanel(slot: 0 | 1): void {
  const host = document.querySelector(`#slot-${slot} .sliders`)!;
  for (const { field, label, hue } of SLIDER_FIELDS) {
    const wrap = document.createElement("label");
    const text = document.createElement("span");
    text.textContent = label;
    const input = document.createElement("input");
    input.type = "range";
    input.dataset.field = field;
    if (hue) {
      input.className = "hue";
      input.min = "0";
      input.max = "359.5";
      input.step = "0.5";
    } else {
      input.min = "0";
      input.max = "1";
      input.step = "0.01";
    }
    const value = document.createElement("output");
    input.addEventListener("input", () => {
      state = setSlider(state, slot, field, Number(input.value));
      syncSliders();
      schedulePreview();
    });
    wrap.append(text, input, value);
    host.append(wrap);
  }
}

function syncSliders(): void {
  for (const slot of [0, 1] as const) {
    const range = state.slots[slot].range;
    for (const input of sliderInputs(slot)) {
      const field = input.dataset.field as keyof HsvRange;
      input.value = String(range[field]);
      input.disabled = !state.slots[slot].enabled;
      (input.parentElement!.querySelector("output") as HTMLOutputElement).value =
        field.startsWith("h") ? `${range[field].toFixed(1)}°` : range[field].toFixed(2);
    }
  }
  (document.getElementById("slot-1-enabled") as HTMLInputElement).checked = state.slots[1].enabled;
  (document.getElementById("fusion") as HTMLSelectElement).value = state.fusion;
  const sigmaAuto = document.getElementById("sigma-auto") as HTMLInputElement;
  const sigma = document.getElementById("sigma") as HTMLInputElement;
  sigmaAuto.checked = state.sigma === null;
  sigma.disabled = state.sigma === null;
  if (state.sigma !== null) sigma.value = String(state.sigma);
  (document.getElementById("opacity") as HTMLInputElement).value = String(state.opacity);
  const view = document.querySelector<HTMLInputElement>(`#view-toggle input[value="${state.view}"]`);
  if (view) view.checked = true;
  document.getElementById("extra-ranges")!.textContent =
    `${state.extraRanges.length} extra ranges beyond the two panels (imported configs keep them).`;
  const list = document.getElementById("extra-list")!;
  list.replaceChildren();
  state.extraRanges.forEach((r, i) => {
    const item = document.createElement("li");
    item.textContent =
      `H ${r.h_lo.toFixed(1)}–${r.h_hi.toFixed(1)}° S ${r.s_lo.toFixed(2)}–${r.s_hi.toFixed(2)} ` +
      `V ${r.v_lo.toFixed(2)}–${r.v_hi.toFixed(2)} `;
    const remove = document.createElement("button");
    remove.textContent = "remove";
    remove.addEventListener("click", () => {
      state = { ...state, extraRanges: state.extraRanges.filter((_, j) => j !== i) };
      syncSliders();
      schedulePreview();
    });
    item.append(remove);
    list.append(item);
  });
}

async function selectImage(id: string): Promise<void> {
  state = { ...state, imageId: id };
  maskBitmap = null;
  try {
    const resp = await fetch(api.imageUrl(id));
    imageBitmap = await createImageBitmap(await resp.blob());
    clearError();
  } catch (error) {
    showError(`image load failed: ${error}`);
    return;
  }
  redraw();
  schedulePreview(true);
}

async function runAnalyze(): Promise<void> {
  if (!state.imageId) return;
  reportLine.textContent = "analyzing…";
  try {
    const report = await api.analyze(stateToConfig(state), state.imageId);
    reportLine.textContent =
      `${report.rust_percentage.toFixed(3)}% rust — ${report.classification} ` +
      `(${report.clusters.length} clusters of ${report.rust_pixel_count} px)`;
    clearError();
  } catch (error) {
    reportLine.textContent = "analysis failed";
    showError(String(error));
  }
}

async function exportConfig(): Promise<void> {
  try {
    await api.putConfig(stateToConfig(state)); // session mirrors the sliders
    const text = await api.exportConfigText(); // service bytes, verbatim
    const blob = new Blob([text], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "rustseg-config.json";
    link.click();
    URL.revokeObjectURL(link.href);
    clearError();
  } catch (error) {
    showError(`export failed: ${error}`);
  }
}

async function importConfig(file: File): Promise<void> {
  try {
    const parsed = JSON.parse(await file.text()) as SessionConfig;
    await api.putConfig(parsed); // validate server-side first
    state = applyConfig(state, parsed);
    syncSliders();
    schedulePreview(true);
    clearError();
  } catch (error) {
    showError(`import failed: ${error}`);
  }
}

function wireControls(): void {
  buildSliderPanel(0);
  buildSliderPanel(1);

  (document.getElementById("slot-1-enabled") as HTMLInputElement).addEventListener("change", (ev) => {
    const enabled = (ev.target as HTMLInputElement).checked;
    state = { ...state, slots: [state.slots[0], { ...state.slots[1], enabled }] };
    syncSliders();
    schedulePreview();
  });

  (document.getElementById("fusion") as HTMLSelectElement).addEventListener("change", (ev) => {
    state = { ...state, fusion: (ev.target as HTMLSelectElement).value as UiState["fusion"] };
    schedulePreview();
  });

  const sigmaAuto = document.getElementById("sigma-auto") as HTMLInputElement;
  const sigma = document.getElementById("sigma") as HTMLInputElement;
  sigmaAuto.addEventListener("change", () => {
    state = { ...state, sigma: sigmaAuto.checked ? null : Number(sigma.value) || 80 };
    syncSliders();
    schedulePreview();
  });
  sigma.addEventListener("change", () => {
    state = { ...state, sigma: Number(sigma.value) || 80 };
    schedulePreview();
  });

  (document.getElementById("opacity") as HTMLInputElement).addEventListener("input", (ev) => {
    state = { ...state, opacity: Number((ev.target as HTMLInputElement).value) };
    redraw();
  });

  document.getElementById("view-toggle")!.addEventListener("change", (ev) => {
    const value = (ev.target as HTMLInputElement).value as ViewMode;
    state = { ...state, view: value };
    redraw();
  });

  document.getElementById("add-range")!.addEventListener("click", () => {
    state = { ...state, extraRanges: [...state.extraRanges, { ...state.slots[0].range }] };
    syncSliders();
    schedulePreview();
  });

  imageSelect.addEventListener("change", () => void selectImage(imageSelect.value));
  document.getElementById("analyze")!.addEventListener("click", () => void runAnalyze());
  document.getElementById("export")!.addEventListener("click", () => void exportConfig());
  (document.getElementById("import") as HTMLInputElement).addEventListener("change", (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (file) void importConfig(file);
  });
}

async function boot(): Promise<void> {
  wireControls();
  syncSliders();
  let images: ImageInfo[] = [];
  try {
    images = await api.listImages();
  } catch (error) {
    showError(`cannot reach the service: ${error}`);
    return;
  }
  for (const info of images) {
    const option = document.createElement("option");
    option.value = info.id;
    option.textContent = `${info.name} (${info.width}×${info.height})`;
    imageSelect.append(option);
  }
  if (images.length > 0) await selectImage(images[0].id);
  else showError("no images in the served directory");
}

void boot();
