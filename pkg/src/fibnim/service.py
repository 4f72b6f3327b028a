"""HTTP facade: create games, submit moves, request analysis.

Sessions live in memory, keyed by opaque ids; only finished games are ever
evicted.  The engine answers inside the same request (a winning move when
one exists, otherwise a stalling take of 1 from the first live heap), so a
round trip always leaves the game waiting on the human.
"""

from __future__ import annotations

import json
import secrets
import threading
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import multiheap
from .engine import GrundyTable, Position, build_table
from .multiheap import IllegalMoveError, MoveRecord, MultiHeapState
from .zeckendorf import z_part, zeckendorf

__all__ = [
    "DEFAULT_CAPACITY",
    "DEFAULT_HORIZON",
    "ENGINE_ROLES",
    "GameSession",
    "SessionStore",
    "create_app",
]

DEFAULT_HORIZON = 5000
DEFAULT_CAPACITY = 512
MAX_HEAPS = 8

ENGINE_ROLES = ("none", "plays_first", "plays_second")


@dataclass
class GameSession:
    id: str
    state: MultiHeapState
    engine_role: str
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def status(self) -> str:
        if not self.state.terminal:
            return "in_progress"
        # normal play: whoever is to move has no move and has lost
        return "second_won" if self.state.to_move == "first" else "first_won"

    @property
    def engine_player(self) -> str | None:
        if self.engine_role == "plays_first":
            return "first"
        if self.engine_role == "plays_second":
            return "second"
        return None


class CapacityError(RuntimeError):
    pass


class SessionStore:
    """id -> session map with bounded size; eviction only touches finished
    games, oldest first (dict order is creation order)."""

    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        self.capacity = capacity
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    def add(self, session: GameSession) -> None:
        with self._lock:
            if len(self._sessions) >= self.capacity:
                for sid, existing in list(self._sessions.items()):
                    if existing.status != "in_progress":
                        del self._sessions[sid]
                        break
                else:
                    raise CapacityError(f"all {self.capacity} sessions are still in progress")
            self._sessions[session.id] = session

    def get(self, session_id: str) -> GameSession | None:
        with self._lock:
            return self._sessions.get(session_id)

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)

    def save(self, path: Path) -> None:
        with self._lock:
            payload = {
                "sessions": [
                    {
                        "id": s.id,
                        "engine_role": s.engine_role,
                        "to_move": s.state.to_move,
                        "heaps": [[h.n, h.r] for h in s.state.heaps],
                        "history": [
                            [m.heap_index, m.take, m.resulting_position.n, m.resulting_position.r]
                            for m in s.state.history
                        ],
                    }
                    for s in self._sessions.values()
                ]
            }
        path.write_text(json.dumps(payload))

    def load(self, path: Path) -> None:
        payload = json.loads(path.read_text())
        with self._lock:
            for entry in payload.get("sessions", []):
                state = MultiHeapState(
                    heaps=tuple(Position(n, r) for n, r in entry["heaps"]),
                    to_move=entry["to_move"],
                    history=tuple(
                        MoveRecord(i, take, Position(n, r))
                        for i, take, n, r in entry["history"]
                    ),
                )
                session = GameSession(entry["id"], state, entry["engine_role"])
                self._sessions[session.id] = session


class CreateGameRequest(BaseModel):
    heaps: str
    engine_role: str = "none"


class MoveRequest(BaseModel):
    heap: int
    take: int


def _reject(status: int, code: str, message: str, **extra) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message, **extra})


def _session_doc(session: GameSession, table: GrundyTable) -> dict:
    state = session.state
    heaps = [
        {"tokens": h.n, "cap": h.r, "grundy": table.value(h.n, h.r)} for h in state.heaps
    ]
    # games always start with "first" to move, so history parity names the mover
    history = [
        {"player": "first" if i % 2 == 0 else "second", "heap": m.heap_index, "take": m.take}
        for i, m in enumerate(state.history)
    ]
    return {
        "id": session.id,
        "heaps": heaps,
        "nim_sum": multiheap.game_value(state, table),
        "to_move": state.to_move,
        "status": session.status,
        "history": history,
    }


def _analysis_doc(heaps: list[Position], table: GrundyTable) -> dict:
    state = MultiHeapState(tuple(heaps))
    wins = multiheap.winning_moves(state, table)
    heap_docs = [
        {
            "tokens": h.n,
            "cap": h.r,
            "grundy": table.value(h.n, h.r),
            "zeckendorf": list(zeckendorf(h.n).values),
        }
        for h in heaps
    ]
    # canonical hint: taking the smallest Zeckendorf part of some heap,
    # whenever that happens to be a winning move
    hint = None
    for move in wins:
        if move.take == z_part(1, heaps[move.heap_index].n):
            hint = {"heap": move.heap_index, "take": move.take}
            break
    return {
        "heaps": heap_docs,
        "nim_sum": multiheap.game_value(state, table),
        "winning_moves": [{"heap": m.heap_index, "take": m.take} for m in wins],
        "hint": hint,
    }


def _engine_reply(state: MultiHeapState, table: GrundyTable) -> MoveRecord:
    wins = multiheap.winning_moves(state, table)
    if wins:
        return wins[0]
    # losing position: stall by taking 1 from the first live heap
    for i, h in enumerate(state.heaps):
        if h.r >= 1:
            return multiheap.make_move(state, i, 1)
    raise RuntimeError("engine asked to move in a terminal state")


def _parse_or_reject(heaps_text: str, table: GrundyTable) -> list[Position]:
    try:
        heaps = multiheap.parse_heaps(heaps_text)
    except ValueError as exc:
        raise _reject(400, "bad_heap_list", str(exc)) from None
    for h in heaps:
        if h.n > table.max_n:
            raise _reject(
                400, "horizon", f"heap of {h.n} tokens exceeds the service horizon {table.max_n}",
                horizon=table.max_n,
            )
    return heaps


def create_app(
    *,
    horizon: int = DEFAULT_HORIZON,
    capacity: int = DEFAULT_CAPACITY,
    snapshot_path: str | Path | None = None,
) -> FastAPI:
    """Build the service with a table of the given horizon prebuilt.

    If ``snapshot_path`` is set, sessions are reloaded from it on startup
    (when present) and written back on shutdown.
    """
    table = build_table(horizon)
    store = SessionStore(capacity)
    snapshot = Path(snapshot_path) if snapshot_path else None

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        if snapshot and snapshot.exists():
            store.load(snapshot)
        yield
        if snapshot:
            store.save(snapshot)

    app = FastAPI(title="fibnim", lifespan=lifespan)
    # the browser client is served statically from elsewhere
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.table = table
    app.state.store = store

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "table_horizon": table.max_n}

    @app.post("/api/games", status_code=201)
    def create_game(req: CreateGameRequest) -> dict:
        if req.engine_role not in ENGINE_ROLES:
            raise _reject(
                400, "bad_engine_role", f"engine_role must be one of {ENGINE_ROLES}"
            )
        heaps = _parse_or_reject(req.heaps, table)
        if not 1 <= len(heaps) <= MAX_HEAPS:
            raise _reject(400, "bad_heap_count", f"need between 1 and {MAX_HEAPS} heaps")
        for h in heaps:
            if h.n < 1:
                raise _reject(400, "unplayable_heap", "every heap needs at least one token")
        state = MultiHeapState(tuple(heaps))
        session = GameSession(secrets.token_hex(8), state, req.engine_role)
        if session.engine_player == "first" and not state.terminal:
            session.state = multiheap.apply_move(state, _engine_reply(state, table))
        try:
            store.add(session)
        except CapacityError as exc:
            raise _reject(503, "capacity", str(exc)) from None
        return _session_doc(session, table)

    @app.get("/api/games/{session_id}")
    def get_game(session_id: str) -> dict:
        session = store.get(session_id)
        if session is None:
            raise _reject(404, "unknown_session", f"no session {session_id!r}")
        return _session_doc(session, table)

    @app.post("/api/games/{session_id}/moves")
    def submit_move(session_id: str, req: MoveRequest) -> dict:
        session = store.get(session_id)
        if session is None:
            raise _reject(404, "unknown_session", f"no session {session_id!r}")
        with session.lock:
            if session.status != "in_progress":
                raise _reject(409, "finished", "game is already over")
            if session.state.to_move == session.engine_player:
                raise _reject(409, "out_of_turn", "it is the engine's turn")
            try:
                move = multiheap.make_move(session.state, req.heap, req.take)
                state = multiheap.apply_move(session.state, move)
            except IllegalMoveError as exc:
                raise _reject(
                    400, "illegal_move", str(exc), heap=exc.heap_index, cap=exc.cap
                ) from None
            if not state.terminal and state.to_move == session.engine_player:
                state = multiheap.apply_move(state, _engine_reply(state, table))
            session.state = state
        return _session_doc(session, table)

    @app.get("/api/analyze")
    def analyze(heaps: str) -> dict:
        return _analysis_doc(_parse_or_reject(heaps, table), table)

    return app
