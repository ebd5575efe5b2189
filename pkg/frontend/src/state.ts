import type {
  MoveRecord,
  MoveResponse,
  Mover,
  RepetitionInfo,
  SessionState,
} from "./types.js";

const DIGITS = "123456789";
const LETTERS = "abcdefghijklmnopqrstuvwxyz";

export function parseSymbols(text: string): number[] {
  const out: number[] = [];
  for (const ch of text) {
    const d = DIGITS.indexOf(ch);
    const l = LETTERS.indexOf(ch);
    if (d >= 0) out.push(d);
    else if (l >= 0) out.push(l);
    else throw new Error(`invalid symbol character ${ch}`);
  }
  return out;
}

export function symbolLabel(symbol: number): string {
  return String(symbol + 1);
}

/** The only game rule the client enforces: the clicked symbol fits the alphabet. */
export function validSymbol(symbol: number, c: number): boolean {
  return Number.isInteger(symbol) && symbol >= 0 && symbol < c;
}

export interface Tile {
  symbol: number;
  mover: Mover;
}

export interface BoardView {
  sessionId: string | null;
  kind: "erase" | "nonrep" | null;
  c: number;
  target: number;
  length: number;
  status: string;
  banner: string;
  canMove: boolean;
  tiles: Tile[];
  lastErasure: { half: number; erased: string } | null;
  lastRepetition: RepetitionInfo | null;
  moveLog: string[];
  error: string | null;
}

export function emptyView(): BoardView {
  return {
    sessionId: null,
    kind: null,
    c: 0,
    target: 0,
    length: 0,
    status: "idle",
    banner: "Start a session to play.",
    canMove: false,
    tiles: [],
    lastErasure: null,
    lastRepetition: null,
    moveLog: [],
    error: null,
  };
}

function banner(state: SessionState): string {
  switch (state.status) {
    case "live":
      return state.next_mover === "ben"
        ? "Your move — pick a symbol."
        : "Engine to move.";
    case "ann_won":
      return `Engine reached ${state.target_n} symbols — it wins.`;
    case "ben_won": {
      const half = state.repetition ? state.repetition.half : 0;
      return `Repetition of half ${half} — you win.`;
    }
    default:
      return "Session exhausted.";
  }
}

function tilesFrom(state: SessionState): Tile[] {
  const symbols = parseSymbols(state.word);
  return symbols.map((symbol, i) => ({
    symbol,
    mover: state.owners[i] === "A" ? "ann" : "ben",
  }));
}

export function describeMove(move: MoveRecord): string {
  const who = move.mover === "ann" ? "engine" : "you";
  let text = `${who}: ${symbolLabel(move.symbol)}`;
  if (move.h > 0 && move.erased !== "")
    text += ` — erased ${move.erased} (half ${move.h})`;
  else if (move.h > 0) text += ` — repetition of half ${move.h}`;
  return text;
}

/** Rebuild the whole view from one server response; no client-side game state. */
export function viewFromState(
  state: SessionState,
  prev?: BoardView,
): BoardView {
  return {
    sessionId: state.id,
    kind: state.kind,
    c: state.c,
    target: state.target_n,
    length: state.length,
    status: state.status,
    banner: banner(state),
    canMove: state.status === "live" && state.next_mover === "ben",
    tiles: tilesFrom(state),
    lastErasure: prev ? prev.lastErasure : null,
    lastRepetition: state.repetition ?? null,
    moveLog: prev ? prev.moveLog : [],
    error: null,
  };
}

export function applyMoveResponse(
  prev: BoardView,
  resp: MoveResponse,
): BoardView {
  const next = viewFromState(resp.state, prev);
  const erasures = resp.moves.filter((m) => m.h > 0 && m.erased !== "");
  next.lastErasure = erasures.length
    ? {
        half: erasures[erasures.length - 1].h,
        erased: erasures[erasures.length - 1].erased,
      }
    : null;
  next.moveLog = prev.moveLog.concat(resp.moves.map(describeMove));
  return next;
}

export function applyError(prev: BoardView, message: string): BoardView {
  return { ...prev, error: message };
}
