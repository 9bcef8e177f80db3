"""Referee for the three cut-and-choose games.

Game kinds:
  g1   — player I cuts the arena in two, player II keeps a side and picks one
         element from it; the kept side is the next arena.
  gfin — as g1, but player II picks a finite block instead of a point.
  g3   — player I plays a finite set each round, player II picks a point
         outside it; the arena never shrinks.

Every move is legality-checked; transcripts are replayable bit for bit from
their JSON-lines serialization.  Infinite plays are truncated at a round
count, and winning claims are rendered as submeasure trajectories over the
outcome prefixes.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable

from .gamesets import (AllSet, Cut, Ground, SetExpr, ground_for_tag,
                       sorted_elements, view)
from .ideals import IdealDescriptor, resolve_ideal

GAMES = ("g1", "gfin", "g3")

PLAYER_I = "I"
PLAYER_II = "II"


class NeedWindow(Exception):
    """A strategy wants a larger window before it can move."""


class Resign(Exception):
    def __init__(self, reason: str = "resign"):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class WindowPolicy:
    initial: int = 64
    cap: int = 1 << 20

    def __post_init__(self):
        if not (1 <= self.initial <= self.cap):
            raise ValueError("need 1 <= initial <= cap")


@dataclass(frozen=True)
class MoveRecord:
    seq: int
    player: str
    kind: str  # cut | choose | choose_block | ideal_play | point_play
    payload: dict
    window: int


@dataclass
class Transcript:
    game: str
    ideal: str
    ideal_params: dict
    ground_info: dict
    strategies: dict  # {"I": {"name", "params"}, "II": {...}}
    seeds: dict  # {"I": int, "II": int}
    rounds: int
    window_policy: WindowPolicy
    moves: list = field(default_factory=list)
    outcome: list = field(default_factory=list)
    round_ends: list = field(default_factory=list)
    result: dict = field(default_factory=lambda: {
        "completed": False, "loser": None, "reason": None, "violation": None})

    def outcome_after(self, r: int) -> list:
        if r == 0:
            return []
        return self.outcome[:self.round_ends[r - 1]]

    @property
    def completed_rounds(self) -> int:
        return len(self.round_ends)


@dataclass
class MoveContext:
    """Everything a strategy may consult when producing a move."""

    game: str
    phase: str
    player: str
    seq: int
    round: int
    arena: SetExpr
    sides: tuple | None
    cut: Cut | None
    played: frozenset | None
    ground: Ground
    window: int
    rng: random.Random
    history: list
    outcome: list
    descriptor: IdealDescriptor

    def arena_view(self, expr: SetExpr | None = None) -> list:
        return view(expr if expr is not None else self.arena,
                    self.ground, self.window)


def _phases(game: str) -> tuple[tuple[str, str], tuple[str, str]]:
    if game == "g1":
        return ("cut", PLAYER_I), ("choose", PLAYER_II)
    if game == "gfin":
        return ("cut", PLAYER_I), ("choose_block", PLAYER_II)
    if game == "g3":
        return ("ideal_play", PLAYER_I), ("point_play", PLAYER_II)
    raise ValueError(f"unknown game {game!r}")


class IllegalMove(Exception):
    pass


class Match:
    """Incremental game state: moves are applied one at a time, either from
    strategies (step) or from external callers (apply)."""

    def __init__(self, game: str, descriptor: IdealDescriptor,
                 rounds: int, policy: WindowPolicy = WindowPolicy(),
                 ground: Ground | None = None):
        if game not in GAMES:
            raise ValueError(f"unknown game {game!r}")
        if rounds < 1:
            raise ValueError("rounds must be >= 1")
        self.game = game
        self.descriptor = descriptor
        self.ground = ground if ground is not None else ground_for_tag(
            descriptor.tag, **descriptor.params)
        self.rounds = rounds
        self.policy = policy
        self.window = policy.initial
        self.arena: SetExpr = AllSet(self.ground)
        self.moves: list[MoveRecord] = []
        self.outcome: list = []
        self.round_ends: list[int] = []
        self.round = 0
        self._phase_idx = 0
        self.pending_cut: Cut | None = None
        self.pending_sides: tuple | None = None
        self.pending_played: frozenset | None = None
        self.result = {"completed": False, "loser": None, "reason": None,
                       "violation": None}

    @property
    def finished(self) -> bool:
        return self.result["completed"] or self.result["loser"] is not None

    @property
    def phase(self) -> tuple[str, str]:
        """(kind, player) expected next."""
        return _phases(self.game)[self._phase_idx]

    def context(self, rng: random.Random) -> MoveContext:
        kind, player = self.phase
        return MoveContext(
            game=self.game, phase=kind, player=player,
            seq=len(self.moves), round=self.round, arena=self.arena,
            sides=self.pending_sides, cut=self.pending_cut,
            played=self.pending_played, ground=self.ground,
            window=self.window, rng=rng, history=self.moves,
            outcome=self.outcome, descriptor=self.descriptor)

    # -- applying moves ----------------------------------------------------

    def apply(self, kind: str, payload: dict):
        """Validate and apply one move; raises IllegalMove on violations."""
        if self.finished:
            raise IllegalMove("game is over")
        want_kind, player = self.phase
        if kind != want_kind:
            raise IllegalMove(f"expected {want_kind}, got {kind}")
        handler = getattr(self, f"_apply_{kind}")
        handler(payload)
        self.moves.append(MoveRecord(len(self.moves), player, kind,
                                     payload, self.window))
        self._phase_idx = 1 - self._phase_idx
        if self._phase_idx == 0:
            self.round += 1
            self.round_ends.append(len(self.outcome))
            if self.round >= self.rounds:
                self.result["completed"] = True

    def _apply_cut(self, payload):
        cut = Cut.from_json(payload, self.ground)
        if cut.mode == "explicit":
            for x in cut.side0:
                if not self.arena.contains(x):
                    raise IllegalMove(f"cut side contains {x!r} not in arena")
        self.pending_cut = cut
        self.pending_sides = cut.sides(self.arena)

    def _apply_choose(self, payload):
        side, element = payload["side"], self.ground.from_json(payload["element"])
        if side not in (0, 1):
            raise IllegalMove("side must be 0 or 1")
        chosen = self.pending_sides[side]
        if not chosen.contains(element):
            raise IllegalMove(f"{element!r} is not on the chosen side")
        self.arena = chosen
        self.outcome.append(element)
        self.pending_cut = self.pending_sides = None

    def _apply_choose_block(self, payload):
        side = payload["side"]
        block = [self.ground.from_json(x) for x in payload["block"]]
        if side not in (0, 1):
            raise IllegalMove("side must be 0 or 1")
        if not block:
            raise IllegalMove("block must be nonempty")
        chosen = self.pending_sides[side]
        for x in block:
            if not chosen.contains(x):
                raise IllegalMove(f"{x!r} is not on the chosen side")
        self.arena = chosen
        self.outcome.extend(x for x in block if x not in set(self.outcome))
        self.pending_cut = self.pending_sides = None

    def _apply_ideal_play(self, payload):
        elements = [self.ground.from_json(x) for x in payload["set"]]
        for x in elements:
            if not self.ground.contains(x):
                raise IllegalMove(f"{x!r} is outside the ground set")
        self.pending_played = frozenset(elements)

    def _apply_point_play(self, payload):
        element = self.ground.from_json(payload["element"])
        if not self.arena.contains(element):
            raise IllegalMove(f"{element!r} is outside the arena")
        if element in self.pending_played:
            raise IllegalMove(f"{element!r} is in the played set")
        self.outcome.append(element)
        self.pending_played = None

    # -- driving strategies ------------------------------------------------

    def step(self, strategy, seed: int):
        """Ask `strategy` for the next move and apply it.

        Window exhaustion and resignation end the game against the mover;
        an illegal move marks the transcript and the mover loses.
        """
        _, player = self.phase
        while True:
            rng = random.Random(f"{seed}|{self.game}|{len(self.moves)}")
            try:
                kind, payload = strategy.move(self.context(rng))
            except NeedWindow:
                if self.window * 2 > self.policy.cap:
                    self.result.update(loser=player, reason="exhaustion")
                    return
                self.window *= 2
                continue
            except Resign as r:
                self.result.update(loser=player, reason=r.reason)
                return
            try:
                self.apply(kind, payload)
            except IllegalMove:
                self.result.update(loser=player, reason="illegal",
                                   violation=len(self.moves))
            return


def play(game: str, descriptor: IdealDescriptor, strategy_i, strategy_ii,
         rounds: int, policy: WindowPolicy = WindowPolicy(),
         seed_i: int = 0, seed_ii: int = 0,
         ground: Ground | None = None) -> Transcript:
    """Run a full game and return its transcript."""
    match = Match(game, descriptor, rounds, policy, ground)
    strategies = {PLAYER_I: (strategy_i, seed_i),
                  PLAYER_II: (strategy_ii, seed_ii)}
    while not match.finished:
        strategy, seed = strategies[match.phase[1]]
        match.step(strategy, seed)
    t = Transcript(
        game=game, ideal=descriptor.name, ideal_params=dict(descriptor.params),
        ground_info=match.ground.describe(),
        strategies={PLAYER_I: {"name": strategy_i.name,
                               "params": dict(strategy_i.params)},
                    PLAYER_II: {"name": strategy_ii.name,
                                "params": dict(strategy_ii.params)}},
        seeds={PLAYER_I: seed_i, PLAYER_II: seed_ii},
        rounds=rounds, window_policy=policy,
        moves=match.moves, outcome=match.outcome,
        round_ends=match.round_ends, result=match.result)
    return t


def evaluate(t: Transcript, grading: Callable) -> list:
    """Submeasure trajectory: grading of the outcome prefix after each
    completed round."""
    return [grading(t.outcome_after(r + 1))
            for r in range(t.completed_rounds)]


def legality_check(t: Transcript):
    """Replay the recorded moves through a fresh match; returns None when
    every move is legal, else the seq of the first violation."""
    descriptor = resolve_ideal(t.ideal, **t.ideal_params)
    ground = _ground_from_info(t.ground_info, descriptor)
    match = Match(t.game, descriptor, t.rounds, t.window_policy, ground)
    for record in t.moves:
        match.window = record.window
        try:
            match.apply(record.kind, record.payload)
        except IllegalMove:
            return record.seq
    return None


def _ground_from_info(info: dict, descriptor: IdealDescriptor) -> Ground:
    if "members" in info:
        from .gamesets import ClopenSliceGround
        from .clopen import ClopenSet
        return ClopenSliceGround(ClopenSet.parse(s) for s in info["members"])
    return ground_for_tag(info["tag"], **descriptor.params)


# ---------------------------------------------------------------------------
# Persistence: JSON lines, header + one line per move + result line.

def save_transcript(t: Transcript, path: str):
    with open(path, "w") as fh:
        header = {
            "game": t.game, "ideal": t.ideal, "ideal_params": t.ideal_params,
            "ground": t.ground_info, "strategies": t.strategies,
            "seeds": t.seeds, "rounds": t.rounds,
            "window": {"initial": t.window_policy.initial,
                       "cap": t.window_policy.cap}}
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for m in t.moves:
            fh.write(json.dumps(
                {"seq": m.seq, "player": m.player, "kind": m.kind,
                 "payload": m.payload, "window": m.window},
                sort_keys=True) + "\n")
        fh.write(json.dumps({"result": t.result}, sort_keys=True) + "\n")


def load_transcript(path: str) -> Transcript:
    with open(path) as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    header, records = lines[0], lines[1:]
    result = {"completed": False, "loser": None, "reason": None,
              "violation": None}
    if records and "result" in records[-1]:
        result = records.pop()["result"]
    policy = WindowPolicy(header["window"]["initial"], header["window"]["cap"])
    t = Transcript(
        game=header["game"], ideal=header["ideal"],
        ideal_params=header["ideal_params"], ground_info=header["ground"],
        strategies=header["strategies"], seeds=header["seeds"],
        rounds=header["rounds"], window_policy=policy,
        moves=[MoveRecord(r["seq"], r["player"], r["kind"], r["payload"],
                          r["window"]) for r in records],
        result=result)
    _recompute_outcome(t)
    return t


def _recompute_outcome(t: Transcript):
    descriptor = resolve_ideal(t.ideal, **t.ideal_params)
    ground = _ground_from_info(t.ground_info, descriptor)
    outcome, round_ends = [], []
    per_round = 0
    for m in t.moves:
        if m.kind == "choose" or m.kind == "point_play":
            outcome.append(ground.from_json(m.payload["element"]))
            round_ends.append(len(outcome))
        elif m.kind == "choose_block":
            for x in m.payload["block"]:
                decoded = ground.from_json(x)
                if decoded not in set(outcome):
                    outcome.append(decoded)
            round_ends.append(len(outcome))
        per_round += 1
    t.outcome = outcome
    t.round_ends = round_ends


def replay(t: Transcript, registry: dict) -> Transcript:
    """Re-run the recorded strategies with the recorded seeds; the result is
    bit-for-bit identical to t (tested invariant)."""
    descriptor = resolve_ideal(t.ideal, **t.ideal_params)
    ground = _ground_from_info(t.ground_info, descriptor)
    make = lambda spec: registry[spec["name"]](**spec["params"])
    return play(t.game, descriptor,
                make(t.strategies[PLAYER_I]), make(t.strategies[PLAYER_II]),
                t.rounds, t.window_policy,
                t.seeds[PLAYER_I], t.seeds[PLAYER_II], ground)
