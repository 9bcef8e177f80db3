"""HTTP session service: live games between a human and a registered
strategy.

Sessions wrap an incremental Match.  The human posts raw transcript-schema
moves; after every accepted human move the machine replies in the same
request, so clients only ever observe AWAITING_HUMAN or FINISHED.  All
mathematics stays server-side — clients render what they are given.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException

from . import strategies as strategies_mod
from .engine import (GAMES, IllegalMove, Match, PLAYER_I, PLAYER_II,
                     WindowPolicy)
from .gamesets import view
from .ideals import SearchBoundExceeded, make_registry, resolve_ideal

AWAITING_HUMAN = "AWAITING_HUMAN"
AWAITING_MACHINE = "AWAITING_MACHINE"
FINISHED = "FINISHED"

VIEW_WINDOW = 64


@dataclass
class Session:
    id: str
    game: str
    ideal: str
    ideal_params: dict
    human_role: str
    strategy_name: str
    strategy_params: dict
    seed: int
    rounds: int
    match: Match
    strategy: object
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def status(self) -> str:
        if self.match.finished:
            return FINISHED
        if self.match.phase[1] == self.human_role:
            return AWAITING_HUMAN
        return AWAITING_MACHINE

    def drive_machine(self):
        while not self.match.finished \
                and self.match.phase[1] != self.human_role:
            self.match.step(self.strategy, self.seed)


def _json_params(params: dict) -> dict:
    return {k: str(v) if not isinstance(v, (int, str, bool, type(None))) else v
            for k, v in params.items()}


def session_state(s: Session) -> dict:
    m = s.match
    ground = m.ground
    try:
        arena = [ground.to_json(x)
                 for x in view(m.arena, ground, VIEW_WINDOW)]
    except Exception:
        arena = []
    sides = None
    if m.pending_sides is not None:
        sides = [[ground.to_json(x) for x in view(side, ground, VIEW_WINDOW)]
                 for side in m.pending_sides]
    played = None
    if m.pending_played is not None:
        played = [ground.to_json(x) for x in m.pending_played]
    trajectory = []
    for r in range(len(m.round_ends)):
        prefix = m.outcome[:m.round_ends[r]]
        try:
            trajectory.append(m.descriptor.phi(prefix))
        except SearchBoundExceeded:
            trajectory.append(None)
    return {
        "id": s.id,
        "game": s.game,
        "ideal": {"name": s.ideal, "params": _json_params(s.ideal_params)},
        "human_role": s.human_role,
        "machine": {"strategy": s.strategy_name,
                    "params": _json_params(s.strategy_params),
                    "seed": s.seed},
        "status": s.status,
        "rounds": s.rounds,
        "completed_rounds": len(m.round_ends),
        "moves": [{"seq": rec.seq, "player": rec.player, "kind": rec.kind,
                   "payload": rec.payload, "window": rec.window}
                  for rec in m.moves],
        "outcome": [ground.to_json(x) for x in m.outcome],
        "round_ends": list(m.round_ends),
        "result": dict(m.result),
        "arena": arena,
        "sides": sides,
        "played": played,
        "trajectory": trajectory,
        "ground": ground.describe(),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="idealgames")
    sessions: dict[str, Session] = {}

    def get_session(session_id: str) -> Session:
        if session_id not in sessions:
            raise HTTPException(status_code=404, detail="unknown session")
        return sessions[session_id]

    @app.get("/registries")
    def registries():
        return {"games": list(GAMES),
                "ideals": sorted(make_registry()) + ["somega"],
                "strategies": sorted(strategies_mod.REGISTRY)}

    @app.post("/sessions", status_code=201)
    def create_session(body: dict):
        try:
            game = body["game"]
            ideal = body["ideal"]
            human_role = body.get("human_role", PLAYER_I)
            strategy_name = body["strategy"]
            seed = int(body.get("seed", 0))
            rounds = int(body.get("rounds", 10))
            ideal_params = body.get("ideal_params", {})
            strategy_params = body.get("strategy_params", {})
            if human_role not in (PLAYER_I, PLAYER_II):
                raise ValueError("human_role must be I or II")
            descriptor = resolve_ideal(ideal, **ideal_params)
            strategy = strategies_mod.make_strategy(strategy_name,
                                                    **strategy_params)
            window = body.get("window", {})
            policy = WindowPolicy(int(window.get("initial", 64)),
                                  int(window.get("cap", 1 << 20)))
            match = Match(game, descriptor, rounds, policy)
        except KeyError as exc:
            raise HTTPException(status_code=422,
                                detail=f"missing or unknown field: {exc}")
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        s = Session(id=uuid.uuid4().hex, game=game, ideal=ideal,
                    ideal_params=ideal_params, human_role=human_role,
                    strategy_name=strategy_name,
                    strategy_params=strategy_params, seed=seed,
                    rounds=rounds, match=match, strategy=strategy)
        s.drive_machine()
        sessions[s.id] = s
        return session_state(s)

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        return session_state(get_session(session_id))

    @app.post("/sessions/{session_id}/moves")
    def post_move(session_id: str, body: dict):
        s = get_session(session_id)
        with s.lock:
            if s.status == FINISHED:
                raise HTTPException(status_code=409,
                                    detail="session is finished")
            if s.status != AWAITING_HUMAN:
                raise HTTPException(status_code=409,
                                    detail="not the human's turn")
            try:
                s.match.apply(body["kind"], body["payload"])
            except KeyError as exc:
                raise HTTPException(status_code=422,
                                    detail=f"missing field: {exc}")
            except IllegalMove as exc:
                raise HTTPException(status_code=422,
                                    detail=f"illegal move: {exc}")
            s.drive_machine()
            return session_state(s)

    return app


def serve(port: int = 8000, host: str = "127.0.0.1"):  # pragma: no cover
    import uvicorn
    uvicorn.run(create_app(), host=host, port=port)
