/** DOM wiring: load trace.json / rsl.json, drive the player, draw frames. */

import { Diagnostic } from "./model.js";
import { TracePlayer, loadBundle } from "./player.js";
import { renderState } from "./render.js";

let player: TracePlayer | null = null;

const canvas = document.getElementById("stage") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const errorPanel = document.getElementById("errors") as HTMLDivElement;
const status = document.getElementById("status") as HTMLSpanElement;
const seekBar = document.getElementById("seek") as HTMLInputElement;
const playButton = document.getElementById("play") as HTMLButtonElement;

function showErrors(diagnostics: Diagnostic[]): void {
  errorPanel.textContent = "";
  const header = document.createElement("h3");
  header.textContent = "Trace rejected";
  errorPanel.appendChild(header);
  for (const diag of diagnostics) {
    const row = document.createElement("div");
    row.className = "diag";
    row.textContent = `${diag.code} at ${diag.path || "(root)"}: ${diag.message}`;
    errorPanel.appendChild(row);
  }
  errorPanel.hidden = false;
  canvas.hidden = true;
}

function draw(): void {
  if (!player) return;
  const index = player.currentIndex;
  const state = player.current();
  const title = player.trace.algorithm?.name ?? "trace";
  const caption = index === 0
    ? "" : (player.trace.deltas[index - 1].action_description ?? "");
  renderState(ctx, state, player.config, title, caption);
  status.textContent = `${index + 1}/${player.frameCount}`;
  seekBar.max = String(player.frameCount - 1);
  seekBar.value = String(index);
  playButton.textContent = player.playing ? "pause" : "play";
}

function start(traceText: string, rslText?: string): void {
  player?.pause();
  const result = loadBundle(traceText, rslText);
  if (!result.ok) {
    showErrors(result.diagnostics);
    player = null;
    return;
  }
  errorPanel.hidden = true;
  canvas.hidden = false;
  player = result.player;
  player.onFrame = draw;
  draw();
}

document.getElementById("prev")!.addEventListener("click", () => {
  player?.pause();
  player?.step("backward");
  draw();
});
document.getElementById("next")!.addEventListener("click", () => {
  player?.pause();
  player?.step("forward");
  draw();
});
playButton.addEventListener("click", () => {
  if (!player) return;
  if (player.playing) player.pause();
  else player.play();
  draw();
});
seekBar.addEventListener("input", () => {
  player?.pause();
  player?.seek(Number(seekBar.value));
  draw();
});

const tracePicker = document.getElementById("trace-file") as HTMLInputElement;
const rslPicker = document.getElementById("rsl-file") as HTMLInputElement;
let pendingRsl: string | undefined;

rslPicker.addEventListener("change", async () => {
  const file = rslPicker.files?.[0];
  pendingRsl = file ? await file.text() : undefined;
  if (player) {
    // Re-resolve styling against the already-loaded trace.
    start(JSON.stringify(player.trace), pendingRsl);
  }
});

tracePicker.addEventListener("change", async () => {
  const file = tracePicker.files?.[0];
  if (file) start(await file.text(), pendingRsl);
});

// A bundle directory serves trace.json/rsl.json next to this page; loading
// them is best-effort (file:// contexts require the pickers instead).
async function tryFetch(): Promise<void> {
  try {
    const traceResponse = await fetch("trace.json");
    if (!traceResponse.ok) return;
    const traceText = await traceResponse.text();
    let rslText: string | undefined;
    try {
      const rslResponse = await fetch("rsl.json");
      if (rslResponse.ok) rslText = await rslResponse.text();
    } catch {
      // optional
    }
    start(traceText, rslText);
  } catch {
    // no server: wait for the file pickers
  }
}

void tryFetch();
