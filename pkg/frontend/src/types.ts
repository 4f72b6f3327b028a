// Wire types, mirroring the service's JSON exactly. The client renders
// these verbatim; it never derives caps, values, or statuses itself.

export type EngineRole = "none" | "plays_first" | "plays_second";
export type Player = "first" | "second";
export type GameStatus = "in_progress" | "first_won" | "second_won";

export interface HeapDoc {
  tokens: number;
  cap: number;
  grundy: number;
}

export interface HistoryEntry {
  player: Player;
  heap: number;
  take: number;
}

export interface SessionDoc {
  id: string;
  heaps: HeapDoc[];
  nim_sum: number;
  to_move: Player;
  status: GameStatus;
  history: HistoryEntry[];
}

export interface AnalysisHeapDoc extends HeapDoc {
  zeckendorf: number[];
}

export interface WireMove {
  heap: number; // 0-indexed on the wire; 1-indexed only in display strings
  take: number;
}

export interface AnalysisDoc {
  heaps: AnalysisHeapDoc[];
  nim_sum: number;
  winning_moves: WireMove[];
  hint: WireMove | null;
}

export interface ErrorDetail {
  code: string;
  message: string;
  cap?: number | null;
  heap?: number | null;
  horizon?: number;
}
