import { describe, expect, it } from "vitest";

import type { SessionState } from "../src/types";
import {
  arenaGrid,
  cylinderSegments,
  renderTrajectory,
  statusLine,
  traceTreeLevels,
} from "../src/views";

function sampleState(overrides: Partial<SessionState> = {}): SessionState {
  return {
    id: "s1",
    game: "g1",
    ideal: { name: "pc", params: {} },
    human_role: "I",
    machine: { strategy: "pc-chooser", params: {}, seed: 1 },
    status: "AWAITING_HUMAN",
    rounds: 5,
    completed_rounds: 0,
    moves: [],
    outcome: [],
    round_ends: [],
    result: { completed: false, loser: null, reason: null, violation: null },
    arena: [0, 1, 2, 3],
    sides: null,
    played: null,
    trajectory: [],
    ground: { tag: "omega" },
    ...overrides,
  };
}

describe("renderTrajectory", () => {
  it("shows an empty chart for a new session", () => {
    const chart = renderTrajectory(sampleState());
    expect(chart.points).toEqual([]);
    expect(chart.finalOutcome).toBeNull();
  });

  it("shows one point per completed round", () => {
    const chart = renderTrajectory(
      sampleState({ completed_rounds: 3, trajectory: [1, 1, 2] }),
    );
    expect(chart.points).toEqual([
      { round: 1, value: 1 },
      { round: 2, value: 1 },
      { round: 3, value: 2 },
    ]);
  });

  it("is unchanged by a rejected move (same state in, same chart out)", () => {
    const state = sampleState({ completed_rounds: 2, trajectory: [0, 1] });
    expect(renderTrajectory(state)).toEqual(renderTrajectory(state));
  });

  it("exposes the final outcome set once the session is finished", () => {
    const chart = renderTrajectory(
      sampleState({
        status: "FINISHED",
        completed_rounds: 2,
        trajectory: [1, 1],
        outcome: [3, 8],
      }),
    );
    expect(chart.finalOutcome).toEqual([3, 8]);
  });
});

describe("arenaGrid", () => {
  it("lays naturals out on a single row", () => {
    expect(arenaGrid([0, 2])).toEqual([
      { label: "0", element: 0, col: 0, row: 0 },
      { label: "2", element: 2, col: 2, row: 0 },
    ]);
  });

  it("places pairs at their coordinates", () => {
    expect(arenaGrid([[1, 4]])).toEqual([
      { label: "(1,4)", element: [1, 4], col: 1, row: 4 },
    ]);
  });
});

describe("cylinderSegments", () => {
  it("maps the empty and full sets", () => {
    expect(cylinderSegments("-")).toEqual([]);
    expect(cylinderSegments(".")).toEqual([{ start: 0, width: 1 }]);
  });

  it("maps generators to dyadic intervals", () => {
    expect(cylinderSegments("01,10")).toEqual([
      { start: 0.25, width: 0.25 },
      { start: 0.5, width: 0.25 },
    ]);
  });
});

describe("traceTreeLevels", () => {
  it("yields the empty tree for no elements", () => {
    expect(traceTreeLevels([], 2)).toEqual([[], [], []]);
  });

  it("branches where the diagonal pairing separates elements", () => {
    // 0 = pair(0,0) and 1 = pair(1,0) separate at the first coordinate.
    const levels = traceTreeLevels([0, 1], 2);
    expect(levels[0]).toEqual([[]]);
    expect(levels[1]).toEqual([[0], [1]]);
    expect(levels[2]).toEqual([
      [0, 0],
      [1, 0],
    ]);
  });

  it("keeps a shared prefix as a single node", () => {
    // 0 and 2 share first coordinate 0 and separate one level down.
    const levels = traceTreeLevels([0, 2], 2);
    expect(levels[1]).toEqual([[0]]);
    expect(levels[2]).toEqual([
      [0, 0],
      [0, 1],
    ]);
  });
});

describe("statusLine", () => {
  it("reports whose move it is", () => {
    expect(statusLine(sampleState()).text).toContain("your move");
  });

  it("reports a completed session", () => {
    const line = statusLine(
      sampleState({
        status: "FINISHED",
        result: { completed: true, loser: null, reason: null, violation: null },
      }),
    );
    expect(line.tone).toBe("success");
  });

  it("reports a forfeited session with the loser and reason", () => {
    const line = statusLine(
      sampleState({
        status: "FINISHED",
        result: {
          completed: false,
          loser: "II",
          reason: "exhaustion",
          violation: null,
        },
      }),
    );
    expect(line.text).toContain("II");
    expect(line.text).toContain("exhaustion");
    expect(line.tone).toBe("warning");
  });
});
