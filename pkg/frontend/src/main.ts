import { BridgeClient } from "./api.js";
import {
  BoardView,
  applyError,
  applyMoveResponse,
  emptyView,
  symbolLabel,
  validSymbol,
  viewFromState,
} from "./state.js";
import type { GameKind } from "./types.js";

let client: BridgeClient | null = null;
let view: BoardView = emptyView();
let busy = false;

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

function render(): void {
  $("banner").textContent = view.banner;
  $("banner").className = `banner ${view.status}`;
  $("progress").textContent = view.sessionId
    ? `${view.length} / ${view.target} symbols`
    : "";
  $("error").textContent = view.error ?? "";

  const board = $("board");
  board.innerHTML = "";
  for (const tile of view.tiles) {
    const el = document.createElement("span");
    el.className = `tile ${tile.mover} sym-${tile.symbol % 10}`;
    el.textContent = symbolLabel(tile.symbol);
    el.title = tile.mover === "ann" ? "engine" : "you";
    board.appendChild(el);
  }

  const erasure = $("erasure");
  if (view.lastErasure) {
    erasure.innerHTML = "";
    const label = document.createElement("span");
    label.textContent = `erased (half ${view.lastErasure.half}): `;
    erasure.appendChild(label);
    const block = document.createElement("span");
    block.className = "erased-block";
    block.textContent = view.lastErasure.erased;
    erasure.appendChild(block);
  } else {
    erasure.textContent = "";
  }

  const palette = $("palette");
  palette.innerHTML = "";
  for (let s = 0; s < view.c; s++) {
    const btn = document.createElement("button");
    btn.className = `tile-btn sym-${s % 10}`;
    btn.textContent = symbolLabel(s);
    btn.disabled = !view.canMove || busy;
    btn.addEventListener("click", () => void playSymbol(s));
    palette.appendChild(btn);
  }

  const log = $("log");
  log.innerHTML = "";
  for (const line of view.moveLog.slice(-30)) {
    const li = document.createElement("li");
    li.textContent = line;
    log.appendChild(li);
  }
  log.scrollTop = log.scrollHeight;

  ($("export") as HTMLButtonElement).disabled = view.sessionId === null;
}

async function playSymbol(symbol: number): Promise<void> {
  if (!client || !view.sessionId || !view.canMove || busy) return;
  if (!validSymbol(symbol, view.c)) {
    view = applyError(view, `symbol out of range 1..${view.c}`);
    render();
    return;
  }
  busy = true;
  render();
  try {
    const resp = await client.move(view.sessionId, symbol);
    view = applyMoveResponse(view, resp);
  } catch (err) {
    view = applyError(view, String(err));
  } finally {
    busy = false;
    render();
  }
}

async function startSession(): Promise<void> {
  const base = ($("server") as HTMLInputElement).value.replace(/\/+$/, "");
  client = new BridgeClient(base);
  const settings = {
    kind: ($("kind") as HTMLSelectElement).value as GameKind,
    c: Number(($("alphabet") as HTMLInputElement).value),
    seed: Number(($("seed") as HTMLInputElement).value),
    target_n: Number(($("target") as HTMLInputElement).value),
  };
  busy = true;
  try {
    const resp = await client.createSession(settings);
    view = viewFromState(resp.state);
    view.moveLog = resp.state.word
      ? [`engine opens with ${resp.state.word}`]
      : [];
  } catch (err) {
    view = applyError(emptyView(), String(err));
  } finally {
    busy = false;
    render();
  }
}

async function exportTrace(): Promise<void> {
  if (!client || !view.sessionId) return;
  try {
    const trace = await client.exportTrace(view.sessionId);
    const blob = new Blob([JSON.stringify(trace, null, 2)], {
      type: "application/json",
    });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `session-${view.sessionId}.json`;
    a.click();
    URL.revokeObjectURL(a.href);
  } catch (err) {
    view = applyError(view, String(err));
    render();
  }
}

export function init(): void {
  $("start").addEventListener("click", () => void startSession());
  $("export").addEventListener("click", () => void exportTrace());
  render();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", init);
}
