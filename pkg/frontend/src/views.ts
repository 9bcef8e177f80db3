/** Pure view-model builders: server state in, renderable data out.
 * Parsing the wire formats for display is done here; no game mathematics. */

import type { GroundElement, SessionState } from "./types";

export interface TrajectoryPoint {
  round: number;
  value: number | null;
}

export interface TrajectoryChart {
  points: TrajectoryPoint[];
  finalOutcome: GroundElement[] | null;
}

/** One chart point per completed round; finished sessions also expose the
 * final outcome set for the summary panel. */
export function renderTrajectory(state: SessionState): TrajectoryChart {
  const points = state.trajectory.map((value, index) => ({
    round: index + 1,
    value,
  }));
  return {
    points,
    finalOutcome: state.status === "FINISHED" ? state.outcome : null,
  };
}

export interface GridCell {
  label: string;
  element: GroundElement;
  col: number;
  row: number;
}

/** Element grid for ω and pair grounds: naturals on one row, pairs at
 * their (column, row) coordinates. */
export function arenaGrid(elements: GroundElement[]): GridCell[] {
  return elements.map((element) => {
    if (Array.isArray(element)) {
      return {
        label: `(${element[0]},${element[1]})`,
        element,
        col: element[0],
        row: element[1],
      };
    }
    return { label: String(element), element, col: Number(element), row: 0 };
  });
}

export interface CylinderSegment {
  start: number;
  width: number;
}

/** Segments of [0,1) covered by a serialized clopen set ("-" empty,
 * "." the whole space, otherwise comma-joined cylinder generators). */
export function cylinderSegments(serialized: string): CylinderSegment[] {
  if (serialized === "-") {
    return [];
  }
  if (serialized === ".") {
    return [{ start: 0, width: 1 }];
  }
  return serialized.split(",").map((generator) => {
    const width = 1 / 2 ** generator.length;
    return { start: parseInt(generator, 2) * width, width };
  });
}

function unpair(n: number): [number, number] {
  const s = Math.floor((Math.sqrt(8 * n + 1) - 1) / 2);
  const m = n - (s * (s + 1)) / 2;
  return [s - m, m];
}

/** Prefix-closed trace tree of a finite set of naturals under the diagonal
 * pairing, grouped by level: level d holds the sorted branch prefixes of
 * length d that meet the set. Rendering data only — the naturals themselves
 * come from the server. */
export function traceTreeLevels(
  elements: number[],
  depth: number,
): number[][][] {
  const levels: Set<string>[] = Array.from({ length: depth + 1 }, () => new Set());
  for (const n of elements) {
    let rest = n;
    const path: number[] = [];
    levels[0].add("");
    for (let d = 1; d <= depth; d += 1) {
      const [k, next] = unpair(rest);
      path.push(k);
      rest = next;
      levels[d].add(path.join(","));
    }
  }
  return levels.map((level) =>
    [...level]
      .map((key) => (key === "" ? [] : key.split(",").map(Number)))
      .sort((a, b) => {
        for (let i = 0; i < a.length; i += 1) {
          if (a[i] !== b[i]) {
            return a[i] - b[i];
          }
        }
        return 0;
      }),
  );
}

export interface StatusLine {
  text: string;
  tone: "info" | "success" | "warning";
}

export function statusLine(state: SessionState): StatusLine {
  if (state.status === "FINISHED") {
    const { completed, loser, reason } = state.result;
    if (completed) {
      return {
        text: `Finished: all ${state.rounds} rounds played.`,
        tone: "success",
      };
    }
    return { text: `Finished: player ${loser} lost (${reason}).`, tone: "warning" };
  }
  if (state.status === "AWAITING_HUMAN") {
    return {
      text: `Round ${state.completed_rounds + 1} of ${state.rounds} — your move.`,
      tone: "info",
    };
  }
  return { text: "Machine is thinking…", tone: "info" };
}
