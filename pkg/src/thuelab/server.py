"""Local HTTP/JSON bridge for live play against the engine.

The human always plays the adversary's seat; the engine (the first player)
opens every session and replies to each human move.  Sessions live in memory;
a session's state changes only through its move endpoint.

Endpoints:
  POST   /session                {kind, c, seed, target_n} -> {id, state}
  GET    /session/<id>           -> {state}
  POST   /session/<id>/move      {symbol} -> {moves, state}
  GET    /session/<id>/export    -> full trace JSON
  DELETE /session/<id>           -> {deleted}
"""

from __future__ import annotations

import json
import random
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from thuelab.games import ann_erase_move, ann_nonrep_move
from thuelab.words import Repetition, _suffix_square_half_bytes, format_symbols


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


class GameSession:
    """One live game; the engine moves on odd move numbers."""

    def __init__(
        self,
        kind: str,
        c: int,
        seed: int,
        target_n: int,
        move_budget: Optional[int] = None,
    ):
        if kind not in ("erase", "nonrep"):
            raise ApiError(400, f"unknown game kind {kind!r}")
        if kind == "erase" and c < 4:
            raise ApiError(400, "erase sessions need an alphabet of size >= 4")
        if kind == "nonrep" and c < 3:
            raise ApiError(400, "nonrep sessions need an alphabet of size >= 3")
        if target_n < 1:
            raise ApiError(400, "target_n must be >= 1")
        if move_budget is not None and move_budget < 1:
            raise ApiError(400, "move_budget must be >= 1 when given")
        self.id = uuid.uuid4().hex[:12]
        self.kind = kind
        self.c = c
        self.seed = seed
        self.target_n = target_n
        self.move_budget = move_budget
        self.rng = random.Random(seed)
        self.word = bytearray()
        self.owners: list[str] = []
        self.moves: list[dict] = []
        self.move_no = 0
        self.status = "live"
        self.repetition: Optional[Repetition] = None
        self.lock = threading.Lock()

    # -- mechanics ---------------------------------------------------------

    def _apply(self, mover: str, symbol: int) -> dict:
        self.move_no += 1
        self.word.append(symbol)
        self.owners.append(mover)
        erased = ""
        if self.kind == "erase":
            h = _suffix_square_half_bytes(self.word, 1)
            if h:
                erased = format_symbols(self.word[len(self.word) - h :], self.c)
                del self.word[len(self.word) - h :]
                del self.owners[len(self.owners) - h :]
        else:
            h = _suffix_square_half_bytes(self.word, 2)
            if h:
                self.status = "ben_won"
                self.repetition = Repetition(len(self.word), h)
        move = {
            "mover": mover,
            "symbol": symbol,
            "h": h,
            "length_after": len(self.word),
            "erased": erased,
        }
        self.moves.append(move)
        if self.status == "live" and len(self.word) >= self.target_n:
            self.status = "ann_won"
        if (
            self.status == "live"
            and self.move_budget is not None
            and self.move_no >= self.move_budget
        ):
            self.status = "exhausted"
        return move

    def engine_move(self) -> dict:
        if self.kind == "erase":
            sym = ann_erase_move(self.word, self.c, self.rng)
        else:
            sym = ann_nonrep_move(self.word, self.c, self.rng)
        return self._apply("ann", sym)

    def human_move(self, symbol) -> list[dict]:
        if self.status != "live":
            raise ApiError(400, f"session is over (status {self.status})")
        if self.move_no % 2 != 1:
            raise ApiError(400, "not the human's turn")
        if not isinstance(symbol, int) or not 0 <= symbol < self.c:
            raise ApiError(400, f"symbol must be an integer in 0..{self.c - 1}")
        applied = [self._apply("ben", symbol)]
        if self.status == "live":
            applied.append(self.engine_move())
        return applied

    # -- views -------------------------------------------------------------

    def state(self) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "c": self.c,
            "seed": self.seed,
            "target_n": self.target_n,
            "status": self.status,
            "word": format_symbols(self.word, self.c),
            "owners": "".join("A" if o == "ann" else "B" for o in self.owners),
            "length": len(self.word),
            "move_number": self.move_no,
            "next_mover": (
                None if self.status != "live"
                else ("ben" if self.move_no % 2 == 1 else "ann")
            ),
        }
        if self.repetition is not None:
            out["repetition"] = {
                "end": self.repetition.end,
                "half": self.repetition.half,
            }
        return out

    def export(self) -> dict:
        trace = {
            "game": self.kind,
            "moves": [
                {
                    "mover": m["mover"],
                    "symbol": m["symbol"],
                    "h": m["h"],
                    "height": m["length_after"],
                }
                for m in self.moves
            ],
            "final": format_symbols(self.word, self.c),
        }
        if self.kind == "erase":
            trace["ann_moves"] = sum(1 for m in self.moves if m["mover"] == "ann")
            trace["reached"] = self.status == "ann_won"
        else:
            trace["winner"] = {"ann_won": "ann", "ben_won": "ben"}.get(self.status, "")
        return {
            "kind": self.kind,
            "c": self.c,
            "seed": self.seed,
            "target_n": self.target_n,
            "status": self.status,
            "trace": trace,
        }


class SessionRegistry:
    def __init__(self):
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    def create(self, session: GameSession) -> None:
        with self._lock:
            self._sessions[session.id] = session

    def get(self, sid: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise ApiError(404, f"unknown session {sid!r}")
        return session

    def delete(self, sid: str) -> None:
        with self._lock:
            if sid not in self._sessions:
                raise ApiError(404, f"unknown session {sid!r}")
            del self._sessions[sid]


class BridgeHandler(BaseHTTPRequestHandler):
    def log_message(self, *args) -> None:
        pass

    def _send(self, status: int, obj: dict) -> None:
        body = json.dumps(obj).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(body)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            obj = json.loads(raw or b"{}")
        except json.JSONDecodeError:
            raise ApiError(400, "request body is not valid JSON")
        if not isinstance(obj, dict):
            raise ApiError(400, "request body must be a JSON object")
        return obj

    def _route(self, method: str) -> None:
        registry: SessionRegistry = self.server.registry  # type: ignore[attr-defined]
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            if method == "POST" and parts == ["session"]:
                body = self._body()
                budget = body.get("move_budget")
                session = GameSession(
                    kind=body.get("kind", "erase"),
                    c=int(body.get("c", 8)),
                    seed=int(body.get("seed", 0)),
                    target_n=int(body.get("target_n", 40)),
                    move_budget=None if budget is None else int(budget),
                )
                session.engine_move()  # the engine opens
                registry.create(session)
                self._send(201, {"id": session.id, "state": session.state()})
            elif len(parts) == 2 and parts[0] == "session" and method == "GET":
                self._send(200, {"state": registry.get(parts[1]).state()})
            elif len(parts) == 2 and parts[0] == "session" and method == "DELETE":
                registry.delete(parts[1])
                self._send(200, {"deleted": True})
            elif (
                len(parts) == 3
                and parts[0] == "session"
                and parts[2] == "move"
                and method == "POST"
            ):
                session = registry.get(parts[1])
                body = self._body()
                if not session.lock.acquire(blocking=False):
                    raise ApiError(409, "another move on this session is in flight")
                try:
                    applied = session.human_move(body.get("symbol"))
                finally:
                    session.lock.release()
                self._send(200, {"moves": applied, "state": session.state()})
            elif (
                len(parts) == 3
                and parts[0] == "session"
                and parts[2] == "export"
                and method == "GET"
            ):
                self._send(200, registry.get(parts[1]).export())
            else:
                raise ApiError(404, f"no route for {method} {self.path}")
        except ApiError as exc:
            self._send(exc.status, {"error": exc.message})

    def do_GET(self) -> None:
        self._route("GET")

    def do_POST(self) -> None:
        self._route("POST")

    def do_DELETE(self) -> None:
        self._route("DELETE")

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()


def make_server(port: int = 0, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), BridgeHandler)
    server.registry = SessionRegistry()  # type: ignore[attr-defined]
    return server


def serve(port: int) -> None:
    server = make_server(port)
    print(f"serving on http://127.0.0.1:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
