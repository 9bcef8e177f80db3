import { describe, expect, it } from "vitest";

import {
  composeBlockChoice,
  composeChoice,
  composeCut,
  composeIdealPlay,
  composePointPlay,
  humanMoveKind,
  selectableElements,
} from "../src/composer";

describe("composeCut", () => {
  it("puts the selection on side 0 and leaves the rest to the server", () => {
    const move = composeCut([2, 5, 7]);
    expect(move).toEqual({
      kind: "cut",
      payload: { mode: "explicit", side0: [2, 5, 7] },
    });
  });

  it("allows selecting everything", () => {
    const all = [0, 1, 2, 3];
    expect(composeCut(all).payload.side0).toEqual(all);
  });

  it("allows selecting nothing", () => {
    expect(composeCut([]).payload.side0).toEqual([]);
  });

  it("copies the selection instead of aliasing it", () => {
    const selection = [1, 2];
    const move = composeCut(selection);
    selection.push(3);
    expect(move.payload.side0).toEqual([1, 2]);
  });
});

describe("choices", () => {
  it("composes a choice of side 1, element 5", () => {
    expect(composeChoice(1, 5)).toEqual({
      kind: "choose",
      payload: { side: 1, element: 5 },
    });
  });

  it("composes a block choice for the finite-block game", () => {
    expect(composeBlockChoice(0, [2, 4])).toEqual({
      kind: "choose_block",
      payload: { side: 0, block: [2, 4] },
    });
  });

  it("rejects an empty block", () => {
    expect(() => composeBlockChoice(1, [])).toThrow("at least one element");
  });

  it("composes ideal and point plays", () => {
    expect(composeIdealPlay(["01", "10"])).toEqual({
      kind: "ideal_play",
      payload: { set: ["01", "10"] },
    });
    expect(composePointPlay("0110")).toEqual({
      kind: "point_play",
      payload: { element: "0110" },
    });
  });
});

describe("humanMoveKind", () => {
  it("maps game and role to the next move kind", () => {
    expect(humanMoveKind("g1", "I")).toBe("cut");
    expect(humanMoveKind("gfin", "I")).toBe("cut");
    expect(humanMoveKind("g1", "II")).toBe("choose");
    expect(humanMoveKind("gfin", "II")).toBe("choose_block");
    expect(humanMoveKind("g3", "I")).toBe("ideal_play");
    expect(humanMoveKind("g3", "II")).toBe("point_play");
  });
});

describe("selectableElements", () => {
  it("restricts picks to the clicked side of a pending cut", () => {
    const sides = [
      [0, 2],
      [1, 3],
    ];
    expect(selectableElements([0, 1, 2, 3], sides, 1)).toEqual([1, 3]);
  });

  it("falls back to the arena when no cut is on the table", () => {
    expect(selectableElements([0, 1], null, null)).toEqual([0, 1]);
  });
});
