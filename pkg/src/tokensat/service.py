"""HTTP/JSON session service behind the interactive board.

Sessions live in memory; every mutation is serialized per session and
the snapshot returned after each request is a pure function of
(instance, mode, move history), which is what makes undo a simple
history-prefix replay.

Endpoints:
  POST /api/games            create a session  -> 201 {sessionId, snapshot}
  GET  /api/games/{id}       -> snapshot
  POST /api/games/{id}/moves -> snapshot | 409 {reason}
  POST /api/games/{id}/undo  -> snapshot | 409
  GET  /api/games/{id}/hint  -> {move|null, message, advisory}
  GET  /api/instances        -> catalog of builtin and stored boards
Static UI assets are served at / when a UI directory is configured.
"""

from __future__ import annotations

import json
import logging
import secrets
import threading
from dataclasses import dataclass, field
from functools import partial
from http import HTTPStatus
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any

from .game import (
    GameInstance,
    IllegalMove,
    Shape,
    Token,
    VariantMove,
    VariantState,
    instance_from_payload,
    variant_apply_move,
    variant_is_terminal,
    variant_is_won,
)
from .generate import GenSpec, random_ksat, tutorial_formula
from .reduction import encode
from .solvers import hint_original, hint_variant

log = logging.getLogger("tokensat.service")

BUILTIN_INSTANCES: dict[str, GameInstance] = {
    "paper-example": encode(tutorial_formula()),
}


class ApiError(Exception):
    def __init__(self, status: int, payload: dict[str, Any]):
        self.status = status
        self.payload = payload
        super().__init__(str(payload))


def _bad_request(message: str) -> ApiError:
    return ApiError(HTTPStatus.BAD_REQUEST, {"error": message})


def _conflict(reason: str, message: str) -> ApiError:
    return ApiError(HTTPStatus.CONFLICT, {"reason": reason, "error": message})


def _parse_shape(value: Any) -> Shape:
    if value == Shape.SQUARE.value:
        return Shape.SQUARE
    if value == Shape.ROUND.value:
        return Shape.ROUND
    raise _bad_request(f"shape must be 'square' or 'round', got {value!r}")


def _require_int(obj: dict[str, Any], key: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise _bad_request(f"{key} must be an integer")
    return value


@dataclass
class Session:
    id: str
    mode: str  # "original" | "variant"
    instance: GameInstance
    decided: dict[int, Shape] = field(default_factory=dict)
    history: list[tuple[int, Shape]] = field(default_factory=list)
    variant: VariantState | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def current_boxes(self) -> tuple:
        if self.mode == "variant":
            assert self.variant is not None
            return self.variant.remaining
        return tuple(
            tuple(t for t in box if self.decided.get(t.color) is not t.shape)
            for box in self.instance.boxes
        )

    def status(self) -> str:
        if self.mode == "variant":
            assert self.variant is not None
            if not variant_is_terminal(self.variant):
                return "playing"
            return "won" if variant_is_won(self.variant) else "lost"
        boxes = self.current_boxes()
        if any(len(box) == 0 for box in boxes):
            return "lost"
        if len(self.decided) == self.instance.num_colors:
            return "won"
        return "playing"

    def snapshot(self) -> dict[str, Any]:
        if self.mode == "variant":
            assert self.variant is not None
            history = [
                {"boxIndex": m.box, "color": m.token.color, "shape": m.token.shape.value}
                for m in self.variant.history
            ]
        else:
            history = [
                {"color": color, "shape": shape.value} for color, shape in self.history
            ]
        return {
            "mode": self.mode,
            "status": self.status(),
            "numColors": self.instance.num_colors,
            "boxes": [
                [{"color": t.color, "shape": t.shape.value} for t in box]
                for box in self.current_boxes()
            ],
            "decided": {str(c): s.value for c, s in self.decided.items()},
            "history": history,
        }


class SessionStore:
    """Session registry plus the instance catalog. Thread-safe."""

    def __init__(self, instance_dir: str | None = None):
        self.instance_dir = Path(instance_dir) if instance_dir else None
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    # -- catalog ----------------------------------------------------------

    def stored_instances(self) -> dict[str, GameInstance]:
        """Instance-dir JSON files, reread on every call (no caching)."""
        found: dict[str, GameInstance] = {}
        if self.instance_dir is None or not self.instance_dir.is_dir():
            return found
        for path in sorted(self.instance_dir.glob("*.json")):
            try:
                payload = json.loads(path.read_text(encoding="utf-8"))
                found[path.stem] = instance_from_payload(payload)
            except (OSError, ValueError) as exc:
                log.warning("skipping unreadable instance file %s: %s", path, exc)
        return found

    def catalog(self) -> list[dict[str, Any]]:
        entries = [
            {
                "id": name,
                "source": "builtin",
                "numColors": inst.num_colors,
                "numBoxes": len(inst.boxes),
            }
            for name, inst in BUILTIN_INSTANCES.items()
        ]
        for name, inst in self.stored_instances().items():
            entries.append(
                {
                    "id": name,
                    "source": "file",
                    "numColors": inst.num_colors,
                    "numBoxes": len(inst.boxes),
                }
            )
        return entries

    def resolve_instance(self, source: Any) -> GameInstance:
        if not isinstance(source, dict):
            raise _bad_request("source must be an object")
        if "builtin" in source:
            name = source["builtin"]
            if name in BUILTIN_INSTANCES:
                return BUILTIN_INSTANCES[name]
            stored = self.stored_instances()
            if name in stored:
                return stored[name]
            raise _bad_request(f"unknown instance id {name!r}")
        if "inline" in source:
            try:
                return instance_from_payload(source["inline"])
            except ValueError as exc:
                raise _bad_request(f"bad inline instance: {exc}") from None
        if "gen" in source:
            gen = source["gen"]
            if not isinstance(gen, dict):
                raise _bad_request("gen must be an object")
            if "seed" in gen:
                _require_int(gen, "seed")
            try:
                spec = GenSpec(
                    num_vars=_require_int(gen, "numVars"),
                    num_clauses=_require_int(gen, "numClauses"),
                    clause_width=_require_int(gen, "clauseWidth"),
                    seed=gen.get("seed", 0),
                )
            except ValueError as exc:
                raise _bad_request(f"bad gen spec: {exc}") from None
            return encode(random_ksat(spec))
        raise _bad_request("source must name one of: builtin, inline, gen")

    # -- session lifecycle --------------------------------------------------

    def create(self, body: Any) -> Session:
        if not isinstance(body, dict):
            raise _bad_request("request body must be a JSON object")
        mode = body.get("mode")
        if mode not in ("original", "variant"):
            raise _bad_request("mode must be 'original' or 'variant'")
        instance = self.resolve_instance(body.get("source"))
        if mode == "variant" and any(len(box) == 0 for box in instance.boxes):
            raise ApiError(
                HTTPStatus.UNPROCESSABLE_ENTITY,
                {"error": "variant play rejects instances with an empty box"},
            )
        session = Session(
            id=secrets.token_urlsafe(16),
            mode=mode,
            instance=instance,
            variant=VariantState.initial(instance) if mode == "variant" else None,
        )
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(HTTPStatus.NOT_FOUND, {"error": "unknown session"})
        return session

    def snapshot(self, session_id: str) -> dict[str, Any]:
        session = self.get(session_id)
        with session.lock:
            return session.snapshot()

    # -- moves ---------------------------------------------------------------

    def apply_move(self, session_id: str, move: Any) -> dict[str, Any]:
        session = self.get(session_id)
        if not isinstance(move, dict):
            raise _bad_request("move must be a JSON object")
        with session.lock:
            if session.status() != "playing":
                raise _conflict("game-over", "the game has already ended")
            if session.mode == "original":
                self._apply_original(session, move)
            else:
                self._apply_variant(session, move)
            return session.snapshot()

    def _apply_original(self, session: Session, move: dict[str, Any]) -> None:
        color = _require_int(move, "color")
        shape = _parse_shape(move.get("shape"))
        if not 1 <= color <= session.instance.num_colors:
            raise _bad_request(f"color {color} out of range")
        if color in session.decided:
            raise _conflict(
                "color-already-decided", f"color {color} already has a removed shape"
            )
        session.decided[color] = shape
        session.history.append((color, shape))

    def _apply_variant(self, session: Session, move: dict[str, Any]) -> None:
        assert session.variant is not None
        box_index = _require_int(move, "boxIndex")
        color = _require_int(move, "color")
        shape = _parse_shape(move.get("shape"))
        try:
            session.variant = variant_apply_move(
                session.variant, VariantMove(box_index, Token(color, shape))
            )
        except IllegalMove as exc:
            raise _conflict(exc.reason, str(exc)) from None

    def undo(self, session_id: str) -> dict[str, Any]:
        session = self.get(session_id)
        with session.lock:
            if session.mode == "original":
                if not session.history:
                    raise _conflict("nothing-to-undo", "no moves to undo")
                session.history.pop()
                session.decided = dict(session.history)
            else:
                assert session.variant is not None
                history = session.variant.history
                if not history:
                    raise _conflict("nothing-to-undo", "no moves to undo")
                state = VariantState.initial(session.instance)
                for move in history[:-1]:
                    state = variant_apply_move(state, move)
                session.variant = state
            return session.snapshot()

    def hint(self, session_id: str) -> dict[str, Any]:
        session = self.get(session_id)
        with session.lock:
            if session.status() != "playing":
                raise _conflict("game-over", "the game has already ended")
            if session.mode == "original":
                suggestion = hint_original(session.instance, session.decided)
                if suggestion is None:
                    return {"move": None, "message": "no winning continuation", "advisory": True}
                color, shape = suggestion
                return {
                    "move": {"color": color, "shape": shape.value},
                    "message": f"removing {shape.value} tokens of color {color} keeps a win reachable",
                    "advisory": True,
                }
            assert session.variant is not None
            move = hint_variant(session.variant)
            if move is None:
                return {"move": None, "message": "no winning continuation", "advisory": True}
            return {
                "move": {
                    "boxIndex": move.box,
                    "color": move.token.color,
                    "shape": move.token.shape.value,
                },
                "message": "this removal keeps a win reachable",
                "advisory": True,
            }


class _Handler(SimpleHTTPRequestHandler):
    """Routes /api/* to the store; everything else is static UI."""

    server: "GameServer"
    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args: Any) -> None:
        log.debug("%s - %s", self.address_string(), format % args)

    def _write_json(self, payload: Any, status: int = HTTPStatus.OK) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self) -> Any:
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            raise _bad_request("invalid Content-Length") from None
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise _bad_request(f"invalid JSON body: {exc}") from None

    def _handle_api(self, method: str) -> None:
        store = self.server.store
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            if parts == ["api", "instances"] and method == "GET":
                self._write_json({"instances": store.catalog()})
            elif parts == ["api", "games"] and method == "POST":
                session = store.create(self._read_json())
                self._write_json(
                    {"sessionId": session.id, "snapshot": session.snapshot()},
                    status=HTTPStatus.CREATED,
                )
            elif len(parts) == 3 and parts[:2] == ["api", "games"] and method == "GET":
                self._write_json(store.snapshot(parts[2]))
            elif (
                len(parts) == 4
                and parts[:2] == ["api", "games"]
                and parts[3] == "moves"
                and method == "POST"
            ):
                self._write_json(store.apply_move(parts[2], self._read_json()))
            elif (
                len(parts) == 4
                and parts[:2] == ["api", "games"]
                and parts[3] == "undo"
                and method == "POST"
            ):
                self._write_json(store.undo(parts[2]))
            elif (
                len(parts) == 4
                and parts[:2] == ["api", "games"]
                and parts[3] == "hint"
                and method == "GET"
            ):
                self._write_json(store.hint(parts[2]))
            else:
                self._write_json({"error": "not found"}, status=HTTPStatus.NOT_FOUND)
        except ApiError as exc:
            self._write_json(exc.payload, status=exc.status)
        except Exception:
            log.exception("unhandled error serving %s %s", method, self.path)
            self._write_json(
                {"error": "internal error"}, status=HTTPStatus.INTERNAL_SERVER_ERROR
            )

    def do_GET(self) -> None:
        if self.path.startswith("/api/"):
            self._handle_api("GET")
            return
        if self.server.ui_dir is None:
            body = (
                b"tokensat service is running. The web UI is not built; "
                b"the JSON API lives under /api/.\n"
            )
            self.send_response(HTTPStatus.OK)
            self.send_header("Content-Type", "text/plain; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
            return
        super().do_GET()

    def do_POST(self) -> None:
        if self.path.startswith("/api/"):
            self._handle_api("POST")
            return
        self._write_json({"error": "not found"}, status=HTTPStatus.NOT_FOUND)


class GameServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, handler, store: SessionStore, ui_dir: str | None):
        self.store = store
        self.ui_dir = ui_dir
        super().__init__(address, handler)


def default_ui_dir() -> str | None:
    """The built frontend next to the current working directory, if any."""
    candidate = Path.cwd() / "frontend" / "dist"
    return str(candidate) if candidate.is_dir() else None


def make_server(
    host: str = "127.0.0.1",
    port: int = 0,
    instance_dir: str | None = None,
    ui_dir: str | None = None,
) -> GameServer:
    store = SessionStore(instance_dir)
    handler = partial(_Handler, directory=ui_dir or ".")
    return GameServer((host, port), handler, store, ui_dir)


def serve(
    host: str = "127.0.0.1",
    port: int = 8080,
    instance_dir: str | None = None,
    ui_dir: str | None = None,
) -> None:
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    if ui_dir is None:
        ui_dir = default_ui_dir()
    server = make_server(host, port, instance_dir, ui_dir)
    actual_port = server.server_address[1]
    log.info("listening on http://%s:%s (ui: %s)", host, actual_port, ui_dir or "none")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
