export type GameKind = "erase" | "nonrep";
export type SessionStatus = "live" | "ann_won" | "ben_won" | "exhausted";
export type Mover = "ann" | "ben";

export interface RepetitionInfo {
  end: number;
  half: number;
}

export interface SessionState {
  id: string;
  kind: GameKind;
  c: number;
  seed: number;
  target_n: number;
  status: SessionStatus;
  word: string;
  owners: string; // one 'A' or 'B' per surviving symbol
  length: number;
  move_number: number;
  next_mover: Mover | null;
  repetition?: RepetitionInfo;
}

export interface MoveRecord {
  mover: Mover;
  symbol: number;
  h: number;
  length_after: number;
  erased: string;
}

export interface CreateResponse {
  id: string;
  state: SessionState;
}

export interface MoveResponse {
  moves: MoveRecord[];
  state: SessionState;
}

export interface SessionSettings {
  kind: GameKind;
  c: number;
  seed: number;
  target_n: number;
}
