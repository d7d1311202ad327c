"""HTTP control surface for a single live scenario session.

One scenario per process. Commands are applied under a lock, so all
observers see a single total order of snapshots. Snapshots are pushed to
stream subscribers after every applied command and every completed tick.
"""
from __future__ import annotations

import json
import threading
from queue import SimpleQueue
from typing import Any, Iterator

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from . import engine
from .engine import FixRecord, Scenario
from .errors import SimError, UnknownKind
from .geometry import Point2D
from .serialize import record_to_dict, scenario_from_dict, scenario_to_dict
from .signal_model import Obstacle, interactive_material, material_by_name, materials_json

_CLOSE = None  # sentinel pushed to subscriber queues on session reset


class CommandError(Exception):
    """A rejected command; maps to a structured 4xx response."""

    def __init__(self, error: str, detail: str):
        super().__init__(detail)
        self.error = error
        self.detail = detail


class Session:
    """Owns the scenario; single logical writer."""

    def __init__(self, scenario: Scenario):
        self._lock = threading.Lock()
        self.scenario = scenario
        self.latest_records: list[FixRecord] = []
        self._subscribers: list[SimpleQueue] = []

    def snapshot(self) -> dict[str, Any]:
        s = self.scenario
        estimates = {r.tag_id: r.estimate for r in self.latest_records}
        return {
            "tick": s.tick,
            "world": s.world_size,
            "readers": [
                {"id": r.id, "x": r.position.x, "y": r.position.y, "range": r.range_m}
                for r in s.readers
            ],
            "tags": [
                {
                    "id": t.id,
                    "x": t.position.x,
                    "y": t.position.y,
                    "estimate": (
                        [estimates[t.id].x, estimates[t.id].y]
                        if estimates.get(t.id) is not None
                        else None
                    ),
                }
                for t in s.tags
            ],
            "obstacles": [
                {
                    "id": o.id,
                    "orientation": o.orientation,
                    "x": o.anchor.x,
                    "y": o.anchor.y,
                    "length": o.length,
                    "material": o.material.name,
                    "thickness_cm": o.thickness_cm,
                }
                for o in s.obstacles
            ],
            "records": [record_to_dict(r) for r in self.latest_records],
            "materials": materials_json(),
            "config": {"gain": s.gain, "noise_sigma": s.noise_sigma, "seed": s.seed},
        }

    def subscribe(self) -> SimpleQueue:
        with self._lock:
            q: SimpleQueue = SimpleQueue()
            self._subscribers.append(q)
            return q

    def unsubscribe(self, q: SimpleQueue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def _publish(self) -> dict[str, Any]:
        snap = self.snapshot()
        for q in self._subscribers:
            q.put(snap)
        return snap

    def apply(self, cmd: dict[str, Any]) -> dict[str, Any]:
        """Apply one command atomically; returns the post-command snapshot."""
        with self._lock:
            try:
                return self._dispatch(cmd)
            except CommandError:
                raise
            except SimError as exc:
                raise CommandError(type(exc).__name__, str(exc)) from exc

    def _dispatch(self, cmd: dict[str, Any]) -> dict[str, Any]:
        kind = cmd.get("type")
        if kind == "step":
            n = cmd.get("n", 1)
            if not isinstance(n, int) or n < 0:
                raise CommandError("InvalidCommand", f"step count must be a non-negative int, got {n!r}")
            snap = self.snapshot()
            for _ in range(n):
                self.scenario, self.latest_records = engine.step(self.scenario)
                snap = self._publish()
            return snap
        if kind == "add_obstacle":
            self.scenario = engine.add_obstacle(self.scenario, self._parse_obstacle(cmd))
        elif kind == "remove_obstacle":
            self.scenario = engine.remove_obstacle(self.scenario, self._field(cmd, "id", str))
        elif kind == "set_reader_range":
            self.scenario = engine.set_reader_range(
                self.scenario, self._field(cmd, "id", str), self._number(cmd, "range")
            )
        elif kind == "move_tag":
            self.scenario = engine.move_tag(
                self.scenario,
                self._field(cmd, "id", str),
                Point2D(self._number(cmd, "x"), self._number(cmd, "y")),
            )
        elif kind == "set_gain":
            self.scenario = engine.set_gain(self.scenario, self._number(cmd, "gain"))
        elif kind == "set_noise":
            self.scenario = engine.set_noise(self.scenario, self._number(cmd, "noise_sigma"))
        elif kind == "reset":
            scenario = cmd.get("scenario")
            if not isinstance(scenario, dict):
                raise CommandError("InvalidCommand", "reset requires a scenario document")
            self.scenario = scenario_from_dict(scenario)
            self.latest_records = []
            for q in self._subscribers:
                q.put(_CLOSE)
            self._subscribers.clear()
        else:
            raise CommandError("InvalidCommand", f"unknown command type {kind!r}")
        return self._publish()

    def _parse_obstacle(self, cmd: dict[str, Any]) -> Obstacle:
        if "kind" in cmd:
            material = interactive_material(self._field(cmd, "kind", str))
        else:
            material = material_by_name(self._field(cmd, "material", str))
        return Obstacle(
            id=self._field(cmd, "id", str),
            orientation=self._field(cmd, "orientation", str),
            anchor=Point2D(self._number(cmd, "x"), self._number(cmd, "y")),
            length=self._number(cmd, "length"),
            material=material,
            thickness_cm=cmd.get("thickness_cm", 0.0),
        )

    @staticmethod
    def _field(cmd: dict[str, Any], name: str, typ: type) -> Any:
        v = cmd.get(name)
        if not isinstance(v, typ):
            raise CommandError("InvalidCommand", f"field {name!r} must be {typ.__name__}, got {v!r}")
        return v

    @staticmethod
    def _number(cmd: dict[str, Any], name: str) -> float:
        v = cmd.get(name)
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise CommandError("InvalidCommand", f"field {name!r} must be numeric, got {v!r}")
        return float(v)


def create_app(session: Session) -> FastAPI:
    app = FastAPI(title="rfidsim")

    @app.exception_handler(CommandError)
    async def _command_error(_request: Request, exc: CommandError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": exc.error, "detail": exc.detail})

    @app.exception_handler(UnknownKind)
    async def _unknown_kind(_request: Request, exc: UnknownKind) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": "UnknownKind", "detail": str(exc)})

    @app.get("/state")
    def state() -> dict[str, Any]:
        return session.snapshot()

    @app.get("/materials")
    def materials() -> list[dict]:
        return materials_json()

    @app.get("/scenario")
    def scenario() -> dict[str, Any]:
        return scenario_to_dict(session.scenario)

    @app.post("/command")
    async def command(request: Request) -> dict[str, Any]:
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            raise CommandError("InvalidCommand", f"body is not valid JSON: {exc}") from exc
        if not isinstance(body, dict):
            raise CommandError("InvalidCommand", "command body must be a JSON object")
        return session.apply(body)

    @app.get("/stream")
    def stream() -> StreamingResponse:
        q = session.subscribe()

        def events() -> Iterator[str]:
            try:
                while True:
                    snap = q.get()
                    if snap is _CLOSE:
                        break
                    yield f"data: {json.dumps(snap)}\n\n"
            finally:
                session.unsubscribe(q)

        return StreamingResponse(events(), media_type="text/event-stream")

    return app
