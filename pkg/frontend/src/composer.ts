/** Move composition: turns UI selections into transcript-schema payloads.
 * Everything here is client-side convenience only — the server re-validates
 * every payload and remains the authority on legality. */

import type { GameKind, GroundElement, MovePayload } from "./types";

/** A cut splits the arena into the selected elements (side 0) and the
 * remainder (side 1). Selecting nothing or everything is allowed; the
 * server judges whether the resulting cut is legal. */
export function composeCut(selection: GroundElement[]): MovePayload {
  return {
    kind: "cut",
    payload: { mode: "explicit", side0: [...selection] },
  };
}

export function composeChoice(
  side: 0 | 1,
  element: GroundElement,
): MovePayload {
  return { kind: "choose", payload: { side, element } };
}

export function composeBlockChoice(
  side: 0 | 1,
  block: GroundElement[],
): MovePayload {
  if (block.length === 0) {
    throw new Error("a block must contain at least one element");
  }
  return { kind: "choose_block", payload: { side, block: [...block] } };
}

export function composeIdealPlay(elements: GroundElement[]): MovePayload {
  return { kind: "ideal_play", payload: { set: [...elements] } };
}

export function composePointPlay(element: GroundElement): MovePayload {
  return { kind: "point_play", payload: { element } };
}

/** The move kinds the human may submit next, given the game and whose
 * phase the server reports via the pending cut/played fields. */
export function humanMoveKind(
  game: GameKind,
  humanRole: "I" | "II",
): string {
  if (game === "g3") {
    return humanRole === "I" ? "ideal_play" : "point_play";
  }
  if (humanRole === "I") {
    return "cut";
  }
  return game === "g1" ? "choose" : "choose_block";
}

/** Elements the composer lets the user pick from: the clicked side of a
 * pending cut, or the arena when there is no cut on the table. */
export function selectableElements(
  arena: GroundElement[],
  sides: GroundElement[][] | null,
  side: 0 | 1 | null,
): GroundElement[] {
  if (sides !== null && side !== null) {
    return sides[side];
  }
  return arena;
}
