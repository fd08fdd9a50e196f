"""HTTP stepping API for interactive flop exploration.

Sessions are in-memory only: each holds a configuration history that grows
by flops and shrinks by undo, guarded by a per-session lock.  Responses are
JSON; move rejections answer 409, everything else that goes wrong answers
400 with {"error": ...}.  CORS headers are sent so a browser client served
from elsewhere can talk to the API.
"""

from __future__ import annotations

import json
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .configuration import (
    Configuration,
    FlopMove,
    apply_flop,
    eligible_flops,
    initial_configuration,
    parse_vertex_id,
)
from .errors import IllegalMoveError, UnsupportedStateError, WreathflopError
from .explorer import export


class Session:
    def __init__(self, session_id: str, k: int):
        self.id = session_id
        self.k = k
        self.stack: list[Configuration] = [initial_configuration(k)]
        self.lock = threading.Lock()

    @property
    def current(self) -> Configuration:
        return self.stack[-1]

    def view(self) -> dict:
        cfg = self.current
        return {
            "session": self.id,
            "config": cfg.to_json_obj(),
            "eligible": [[str(v) for v in mv.centers] for mv in eligible_flops(cfg, simultaneous=True)],
            "history_len": len(self.stack) - 1,
        }


class SessionStore:
    def __init__(self, default_k: int = 2):
        self.default_k = default_k
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, k: int) -> Session:
        session = Session(uuid.uuid4().hex[:12], k)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)


class ApiHandler(BaseHTTPRequestHandler):
    store: SessionStore  # attached by make_server

    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args) -> None:  # noqa: A002 - stdlib signature
        pass

    def _send(self, status: int, payload: str, content_type: str = "application/json") -> None:
        body = payload.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, obj: dict) -> None:
        self._send(status, json.dumps(obj, sort_keys=True))

    def _fail(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError:
            raise ValueError("request body is not valid JSON")
        if not isinstance(obj, dict):
            raise ValueError("request body must be a JSON object")
        return obj

    def _session_or_fail(self, session_id: str) -> Session | None:
        session = self.store.get(session_id)
        if session is None:
            self._fail(400, f"no session {session_id!r}")
        return session

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self) -> None:
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        if len(parts) == 2 and parts[0] == "session":
            session = self._session_or_fail(parts[1])
            if session is not None:
                with session.lock:
                    self._send_json(200, session.view())
            return
        if len(parts) == 3 and parts[0] == "session" and parts[2] == "export":
            session = self._session_or_fail(parts[1])
            if session is None:
                return
            fmt = parse_qs(url.query).get("format", ["dot"])[0]
            if fmt not in ("dot", "json"):
                self._fail(400, f"unknown export format {fmt!r}; use 'dot' or 'json'")
                return
            with session.lock:
                text = export(session.current, fmt)
            self._send(200, text, "text/plain; charset=utf-8" if fmt == "dot" else "application/json")
            return
        self._fail(400, f"no route for GET {url.path}")

    def do_POST(self) -> None:
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            body = self._read_body()
        except ValueError as err:
            self._fail(400, str(err))
            return

        if parts == ["session"]:
            k = body.get("k", self.store.default_k)
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                self._fail(400, f"'k' must be a positive integer, got {k!r}")
                return
            session = self.store.create(k)
            with session.lock:
                self._send_json(200, session.view())
            return

        if len(parts) == 3 and parts[0] == "session" and parts[2] == "flop":
            session = self._session_or_fail(parts[1])
            if session is None:
                return
            centers = body.get("centers")
            if not isinstance(centers, list) or not centers:
                self._fail(400, "'centers' must be a non-empty list of vertex ids")
                return
            try:
                move = FlopMove(tuple(parse_vertex_id(str(c)) for c in centers))
            except WreathflopError as err:
                self._fail(400, str(err))
                return
            with session.lock:
                try:
                    session.stack.append(apply_flop(session.current, move))
                except (IllegalMoveError, UnsupportedStateError) as err:
                    self._fail(409, str(err))
                    return
                self._send_json(200, session.view())
            return

        if len(parts) == 3 and parts[0] == "session" and parts[2] == "undo":
            session = self._session_or_fail(parts[1])
            if session is None:
                return
            with session.lock:
                if len(session.stack) <= 1:
                    self._fail(400, "nothing to undo")
                    return
                session.stack.pop()
                self._send_json(200, session.view())
            return

        self._fail(400, f"no route for POST {url.path}")


def make_server(port: int = 0, default_k: int = 2, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Bind a threaded API server; port 0 picks a free ephemeral port."""
    handler = type("BoundApiHandler", (ApiHandler,), {"store": SessionStore(default_k)})
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server


def serve_forever(port: int = 8080, default_k: int = 2, host: str = "127.0.0.1") -> None:
    server = make_server(port=port, default_k=default_k, host=host)
    actual_host, actual_port = server.server_address[:2]
    print(f"listening on http://{actual_host}:{actual_port} (default k={default_k})", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
