/** Wire types mirroring the session service. The console renders exactly
 * what the server returns and never computes game mathematics locally. */

export type GameKind = "g1" | "gfin" | "g3";
export type PlayerRole = "I" | "II";
export type SessionStatus = "AWAITING_HUMAN" | "AWAITING_MACHINE" | "FINISHED";

export type GroundElement = number | number[] | string;

export interface MoveRecord {
  seq: number;
  player: PlayerRole;
  kind: string;
  payload: Record<string, unknown>;
  window: number;
}

export interface GameResult {
  completed: boolean;
  loser: PlayerRole | null;
  reason: string | null;
  violation: number | null;
}

export interface SessionState {
  id: string;
  game: GameKind;
  ideal: { name: string; params: Record<string, unknown> };
  human_role: PlayerRole;
  machine: { strategy: string; params: Record<string, unknown>; seed: number };
  status: SessionStatus;
  rounds: number;
  completed_rounds: number;
  moves: MoveRecord[];
  outcome: GroundElement[];
  round_ends: number[];
  result: GameResult;
  arena: GroundElement[];
  sides: GroundElement[][] | null;
  played: GroundElement[] | null;
  trajectory: (number | null)[];
  ground: { tag: string; members?: string[] };
}

export interface Registries {
  games: GameKind[];
  ideals: string[];
  strategies: string[];
}

export interface CreateSessionRequest {
  game: GameKind;
  ideal: string;
  ideal_params?: Record<string, unknown>;
  human_role: PlayerRole;
  strategy: string;
  strategy_params?: Record<string, unknown>;
  seed: number;
  rounds: number;
}

export interface MovePayload {
  kind: string;
  payload: Record<string, unknown>;
}
