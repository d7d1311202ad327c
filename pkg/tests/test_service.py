from __future__ import annotations

import copy
import json
import threading
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from rfidsim import engine
from rfidsim.serialize import scenario_from_json, scenario_to_dict
from rfidsim.service import Session, create_app

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture
def scenario():
    return scenario_from_json((SCENARIOS / "free_space.json").read_text())


@pytest.fixture
def session(scenario):
    return Session(scenario)


@pytest.fixture
def client(session):
    return TestClient(create_app(session))


class TestState:
    def test_initial_snapshot(self, client):
        snap = client.get("/state").json()
        assert snap["tick"] == 0
        assert len(snap["readers"]) == 4
        assert all(r["range"] == 100 for r in snap["readers"])
        assert snap["tags"][0]["estimate"] is None

    def test_materials(self, client):
        rows = client.get("/materials").json()
        assert len(rows) == 10
        assert {"name": "Limestone", "coefficient": 7.51, "thickness_cm": 10} in rows

    def test_scenario_document(self, client, scenario):
        assert client.get("/scenario").json() == scenario_to_dict(scenario)


class TestCommands:
    def test_step(self, client):
        snap = client.post("/command", json={"type": "step", "n": 3}).json()
        assert snap["tick"] == 3
        assert len(snap["records"]) == 1
        assert snap["records"][0]["error"] < 1e-9

    def test_set_reader_range(self, client):
        snap = client.post("/command", json={"type": "set_reader_range", "id": "r2", "range": 80}).json()
        ranges = {r["id"]: r["range"] for r in snap["readers"]}
        assert ranges["r2"] == 80

    def test_invalid_range_is_422_and_no_state_change(self, client):
        before = client.get("/state").json()
        resp = client.post("/command", json={"type": "set_reader_range", "id": "r2", "range": -5})
        assert resp.status_code == 422
        body = resp.json()
        assert body["error"] == "InvalidRange"
        assert client.get("/state").json() == before

    def test_unknown_reader_is_422(self, client):
        resp = client.post("/command", json={"type": "set_reader_range", "id": "r9", "range": 10})
        assert resp.status_code == 422
        assert resp.json()["error"] == "UnknownReader"

    def test_add_obstacle_by_kind(self, client):
        snap = client.post(
            "/command",
            json={
                "type": "add_obstacle", "id": "o1", "kind": "glass",
                "orientation": "vertical", "x": 50, "y": 40, "length": 20,
            },
        ).json()
        assert snap["obstacles"][0]["material"] == "Glass"
        assert snap["obstacles"][0]["thickness_cm"] == 0.24

    def test_add_obstacle_unknown_kind(self, client):
        resp = client.post(
            "/command",
            json={"type": "add_obstacle", "id": "o1", "kind": "steel",
                  "orientation": "vertical", "x": 50, "y": 40, "length": 20},
        )
        assert resp.status_code == 422

    def test_remove_obstacle(self, client):
        client.post("/command", json={"type": "add_obstacle", "id": "o1", "kind": "wall",
                                      "orientation": "horizontal", "x": 10, "y": 50, "length": 30})
        snap = client.post("/command", json={"type": "remove_obstacle", "id": "o1"}).json()
        assert snap["obstacles"] == []

    def test_move_tag(self, client):
        snap = client.post("/command", json={"type": "move_tag", "id": "t1", "x": 55, "y": 45}).json()
        assert (snap["tags"][0]["x"], snap["tags"][0]["y"]) == (55, 45)

    def test_move_tag_out_of_bounds(self, client):
        resp = client.post("/command", json={"type": "move_tag", "id": "t1", "x": 101, "y": 50})
        assert resp.status_code == 422
        assert resp.json()["error"] == "OutOfBounds"

    def test_set_gain_and_noise(self, client):
        snap = client.post("/command", json={"type": "set_gain", "gain": 0.1}).json()
        assert snap["config"]["gain"] == 0.1
        snap = client.post("/command", json={"type": "set_noise", "noise_sigma": 0.3}).json()
        assert snap["config"]["noise_sigma"] == 0.3

    def test_unknown_command_type(self, client):
        resp = client.post("/command", json={"type": "warp_tag"})
        assert resp.status_code == 422
        assert resp.json()["error"] == "InvalidCommand"

    def test_reset(self, client, scenario):
        client.post("/command", json={"type": "step", "n": 5})
        snap = client.post("/command", json={"type": "reset", "scenario": scenario_to_dict(scenario)}).json()
        assert snap["tick"] == 0
        assert snap["records"] == []


class TestReplayEquivalence:
    def test_http_replay_matches_headless(self, scenario, client):
        # headless: 3 ticks, retune a reader, move the tag, 4 more ticks
        s = scenario
        headless = []
        for _ in range(3):
            s, recs = engine.step(s)
            headless.extend(recs)
        s = engine.set_reader_range(s, "r1", 80)
        s = engine.move_tag(s, "t1", engine.Point2D(60, 40))
        for _ in range(4):
            s, recs = engine.step(s)
            headless.extend(recs)

        served = []
        for cmd in [
            {"type": "step", "n": 3},
            {"type": "set_reader_range", "id": "r1", "range": 80},
            {"type": "move_tag", "id": "t1", "x": 60, "y": 40},
            {"type": "step", "n": 4},
        ]:
            resp = client.post("/command", json=cmd)
            assert resp.status_code == 200

        trace_json = client.get("/state").json()["records"]
        # last snapshot holds only the final tick's records; replay the whole
        # sequence through the stream test below for full-trace equality.
        from rfidsim.serialize import record_to_dict

        assert trace_json == [record_to_dict(r) for r in headless[-1:]]

    def test_full_trace_equality_via_stream(self, scenario):
        session = Session(scenario)
        q = session.subscribe()
        commands = [
            {"type": "step", "n": 3},
            {"type": "set_reader_range", "id": "r1", "range": 80},
            {"type": "move_tag", "id": "t1", "x": 60, "y": 40},
            {"type": "step", "n": 4},
        ]
        for cmd in commands:
            session.apply(cmd)

        snaps = []
        while not q.empty():
            snaps.append(q.get())
        # 3 step snaps + 2 command snaps + 4 step snaps
        assert [s["tick"] for s in snaps] == [1, 2, 3, 3, 3, 4, 5, 6, 7]

        s = scenario
        headless = []
        for _ in range(3):
            s, recs = engine.step(s)
            headless.extend(recs)
        s = engine.set_reader_range(s, "r1", 80)
        s = engine.move_tag(s, "t1", engine.Point2D(60, 40))
        for _ in range(4):
            s, recs = engine.step(s)
            headless.extend(recs)

        from rfidsim.serialize import record_to_dict

        step_snaps = [snaps[i] for i in [0, 1, 2, 5, 6, 7, 8]]
        served_records = [s["records"][0] for s in step_snaps]
        assert served_records == [record_to_dict(r) for r in headless]


class TestStream:
    def test_step_publishes_per_tick(self, session):
        q = session.subscribe()
        session.apply({"type": "step", "n": 3})
        ticks = [q.get(timeout=1)["tick"] for _ in range(3)]
        assert ticks == [1, 2, 3]
        assert q.empty()

    def test_concurrent_subscribers_identical(self, session):
        q1, q2 = session.subscribe(), session.subscribe()
        session.apply({"type": "step", "n": 2})
        session.apply({"type": "set_reader_range", "id": "r3", "range": 70})
        seq1 = [q1.get(timeout=1) for _ in range(3)]
        seq2 = [q2.get(timeout=1) for _ in range(3)]
        assert seq1 == seq2

    def test_obstacle_before_step_visible(self, session):
        q = session.subscribe()
        session.apply({"type": "add_obstacle", "id": "o1", "kind": "iron",
                       "orientation": "vertical", "x": 50, "y": 30, "length": 40})
        session.apply({"type": "step", "n": 1})
        pre = q.get(timeout=1)
        post = q.get(timeout=1)
        assert pre["obstacles"][0]["id"] == "o1"
        assert post["tick"] == pre["tick"] + 1

    def test_sse_endpoint_delivers_snapshots(self, session):
        import socket
        import time

        import httpx
        import uvicorn

        with socket.socket() as sock:
            sock.bind(("127.0.0.1", 0))
            port = sock.getsockname()[1]
        server = uvicorn.Server(
            uvicorn.Config(create_app(session), host="127.0.0.1", port=port, log_level="error")
        )
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        try:
            base = f"http://127.0.0.1:{port}"
            for _ in range(200):
                if server.started:
                    break
                time.sleep(0.01)
            received = []
            done = threading.Event()

            def consume():
                with httpx.stream("GET", f"{base}/stream", timeout=10) as resp:
                    for line in resp.iter_lines():
                        if line.startswith("data: "):
                            received.append(json.loads(line[len("data: "):]))
                            if len(received) >= 2:
                                done.set()
                                return

            t = threading.Thread(target=consume, daemon=True)
            t.start()
            for _ in range(200):
                if session._subscribers:
                    break
                time.sleep(0.01)
            httpx.post(f"{base}/command", json={"type": "step", "n": 2}, timeout=10)
            assert done.wait(10)
            assert [s["tick"] for s in received] == [1, 2]
        finally:
            server.should_exit = True
            thread.join(timeout=5)

    def test_command_serialization_under_concurrency(self, session):
        q = session.subscribe()
        errs = []

        def worker(n):
            try:
                for _ in range(5):
                    session.apply({"type": "step", "n": 1})
            except Exception as exc:  # pragma: no cover
                errs.append(exc)

        threads = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errs
        ticks = []
        while not q.empty():
            ticks.append(q.get()["tick"])
        assert ticks == list(range(1, 21))
