import { Api } from "./api.js";
import { GameController, type UiSessionView } from "./controller.js";
import { PRESETS, parseWeights } from "./presets.js";
import type { StrategyDescriptor } from "./types.js";

/** x_i display name; indices are 1-based everywhere. */
export function elementName(index: number): string {
  return `x_${index}`;
}

/** Trim a float gauge to at most four decimals (1.5, 3.4032, ...). */
export function formatBits(value: number): string {
  return String(Number(value.toFixed(4)));
}

/** Decimal reading of a server rational string: "3/2" -> "1.5". */
export function rationalToDecimal(text: string): string {
  const [numerator, denominator] = text.split("/");
  const value =
    denominator === undefined
      ? Number(numerator)
      : Number(numerator) / Number(denominator);
  return formatBits(value);
}

function byId<T extends HTMLElement>(doc: Document, id: string): T {
  const element = doc.getElementById(id);
  if (element === null) throw new Error(`missing #${id} in the page`);
  return element as T;
}

function renderGauges(doc: Document, view: UiSessionView): void {
  byId(doc, "gauge-asked").textContent = `asked ${view.asked}`;
  if (view.entropyBits !== null) {
    byId(doc, "gauge-entropy").textContent =
      `H(π) = ${formatBits(view.entropyBits)} bits`;
    byId(doc, "gauge-hplus1").textContent =
      `H(π)+1 = ${formatBits(view.entropyBits + 1)}`;
  }
  if (view.optCost !== null) {
    byId(doc, "gauge-opt").textContent =
      `Opt(π) = ${view.optCost} = ${rationalToDecimal(view.optCost)}`;
  }
}

function renderQuestion(doc: Document, view: UiSessionView): void {
  const block = byId(doc, "question");
  block.hidden = view.phase !== "awaiting-answer";
  const chips = byId(doc, "question-chips");
  chips.textContent = "";
  if (view.phase !== "awaiting-answer" || view.question === null) return;
  byId(doc, "question-render").textContent = view.question.render;
  for (const element of view.question.elements ?? []) {
    const chip = doc.createElement("span");
    chip.className = "chip";
    chip.textContent = elementName(element);
    chips.appendChild(chip);
  }
  byId<HTMLButtonElement>(doc, "answer-yes").disabled = view.busy;
  byId<HTMLButtonElement>(doc, "answer-no").disabled = view.busy;
}

function renderResult(doc: Document, view: UiSessionView): void {
  const block = byId(doc, "result");
  block.hidden = view.phase !== "done";
  if (view.phase !== "done" || view.result === null) return;
  const plural = view.asked === 1 ? "question" : "questions";
  const gauges: string[] = [];
  if (view.optCost !== null) {
    gauges.push(`Opt(π) = ${rationalToDecimal(view.optCost)}`);
  }
  if (view.entropyBits !== null) {
    gauges.push(`H(π)+1 = ${formatBits(view.entropyBits + 1)}`);
  }
  block.textContent =
    `Your element is ${elementName(view.result)}, ` +
    `found in ${view.asked} ${plural} against ${gauges.join(" and ")}.`;
}

function renderHistory(doc: Document, view: UiSessionView): void {
  const list = byId(doc, "history");
  list.textContent = "";
  for (const entry of view.history) {
    const item = doc.createElement("li");
    item.textContent = `${entry.render} — ${entry.answer ? "Yes" : "No"}`;
    list.appendChild(item);
  }
}

/** Paint the whole page from one view; no incremental DOM state. */
export function render(doc: Document, view: UiSessionView): void {
  byId(doc, "setup").hidden = view.phase !== "idle";
  byId(doc, "game").hidden = view.phase === "idle";
  byId<HTMLButtonElement>(doc, "start").disabled = view.busy;

  renderGauges(doc, view);
  byId(doc, "strategy-label").textContent =
    view.strategy !== null ? `strategy ${view.strategy} · n = ${view.n}` : "";
  renderQuestion(doc, view);
  renderResult(doc, view);
  renderHistory(doc, view);

  const banner = byId(doc, "banner");
  banner.hidden = view.phase !== "inconsistent";
  if (view.phase === "inconsistent") {
    byId(doc, "banner-text").textContent =
      `Inconsistent answers: ${view.error ?? "the answers contradict each other"}. ` +
      "Start a fresh game to continue.";
  }
  byId(doc, "restart").hidden =
    view.phase !== "done" && view.phase !== "inconsistent";

  const error = byId(doc, "error");
  const inlineError = view.phase !== "inconsistent" ? view.error : null;
  error.hidden = inlineError === null;
  error.textContent = inlineError ?? "";
}

function selectedStrategy(doc: Document): StrategyDescriptor {
  const kind = byId<HTMLSelectElement>(doc, "strategy").value;
  if (kind === "at") {
    return { kind, t: byId<HTMLInputElement>(doc, "param-t").value.trim() };
  }
  if (kind === "vector") {
    return { kind, r: Number(byId<HTMLInputElement>(doc, "param-r").value) };
  }
  if (kind === "prolixity") {
    return {
      kind,
      k: Number(byId<HTMLInputElement>(doc, "param-k").value),
      seed: Number(byId<HTMLInputElement>(doc, "param-seed").value),
    };
  }
  return { kind };
}

function showParams(doc: Document, kind: string): void {
  byId(doc, "params-at").hidden = kind !== "at";
  byId(doc, "params-vector").hidden = kind !== "vector";
  byId(doc, "params-prolixity").hidden = kind !== "prolixity";
}

function fillPresets(doc: Document): void {
  const select = byId<HTMLSelectElement>(doc, "preset");
  for (const [key, preset] of Object.entries(PRESETS)) {
    const option = doc.createElement("option");
    option.value = key;
    option.textContent = preset.label;
    select.appendChild(option);
  }
  const custom = doc.createElement("option");
  custom.value = "custom";
  custom.textContent = "Custom weights";
  select.appendChild(custom);

  const weights = byId<HTMLTextAreaElement>(doc, "weights");
  const apply = () => {
    const preset = PRESETS[select.value];
    if (preset !== undefined) weights.value = preset.weights.join(", ");
  };
  select.addEventListener("change", apply);
  apply();
}

async function fillStrategies(doc: Document, api: Api): Promise<void> {
  const select = byId<HTMLSelectElement>(doc, "strategy");
  const catalog = await api.getStrategies();
  for (const info of catalog.strategies) {
    const option = doc.createElement("option");
    option.value = info.kind;
    option.textContent = info.kind;
    option.title = info.description;
    select.appendChild(option);
  }
  if (catalog.strategies.some((info) => info.kind === "cone")) {
    select.value = "cone";
  }
  select.addEventListener("change", () => showParams(doc, select.value));
  showParams(doc, select.value);
}

function sessionIdFromHash(hash: string): string | null {
  const match = /^#s=([0-9a-f]+)$/.exec(hash);
  return match === null ? null : match[1];
}

/** Wire the page to a service and return the live pieces.
 *
 * `apiBase` is the service origin ("" for same-origin). A `#s=<id>` hash is
 * restored from the server, so a mid-game refresh lands back in the game.
 */
export async function bootApp(
  doc: Document,
  apiBase: string,
): Promise<{ api: Api; controller: GameController }> {
  const api = new Api(apiBase);
  const controller = new GameController(api);
  const restoreId = sessionIdFromHash(doc.defaultView?.location.hash ?? "");

  fillPresets(doc);
  try {
    await fillStrategies(doc, api);
  } catch (err) {
    const error = byId(doc, "error");
    error.hidden = false;
    error.textContent =
      `cannot reach the service: ${err instanceof Error ? err.message : err}`;
  }

  controller.subscribe((view) => {
    render(doc, view);
    const location = doc.defaultView?.location;
    if (location === undefined) return;
    const wanted = view.id !== null && view.phase !== "idle" ? `#s=${view.id}` : "";
    if (location.hash !== wanted && (location.hash !== "" || wanted !== "")) {
      location.hash = wanted;
    }
  });

  byId(doc, "start").addEventListener("click", () => {
    const weights = parseWeights(byId<HTMLTextAreaElement>(doc, "weights").value);
    void controller.start(weights, selectedStrategy(doc));
  });
  byId(doc, "answer-yes").addEventListener("click", () => void controller.answer(true));
  byId(doc, "answer-no").addEventListener("click", () => void controller.answer(false));
  byId(doc, "restart").addEventListener("click", () => controller.restart());

  if (restoreId !== null) {
    await controller.restore(restoreId);
  }
  return { api, controller };
}
