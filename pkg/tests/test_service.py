import random

import pytest
from fastapi.testclient import TestClient

from fibnim import multiheap
from fibnim.engine import Position, build_table
from fibnim.service import create_app

HORIZON = 100


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app(horizon=HORIZON)) as c:
        yield c


@pytest.fixture(scope="module")
def table():
    return build_table(HORIZON)


class TestHealth:
    def test_reports_horizon(self, client):
        doc = client.get("/api/health").json()
        assert doc == {"status": "ok", "table_horizon": HORIZON}


class TestCreateGame:
    def test_plain_session(self, client):
        r = client.post("/api/games", json={"heaps": "12"})
        assert r.status_code == 201
        doc = r.json()
        assert doc["heaps"] == [{"tokens": 12, "cap": 11, "grundy": 6}]
        assert doc["status"] == "in_progress"
        assert doc["to_move"] == "first"
        assert doc["history"] == []

    def test_engine_moves_first(self, client):
        doc = client.post(
            "/api/games", json={"heaps": "12", "engine_role": "plays_first"}
        ).json()
        assert len(doc["history"]) == 1
        assert doc["history"][0]["player"] == "first"
        assert doc["to_move"] == "second"
        assert doc["nim_sum"] == 0  # engine opened with a winning move

    def test_zero_heap_rejected(self, client):
        r = client.post("/api/games", json={"heaps": "0"})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "unplayable_heap"

    def test_too_many_heaps_rejected(self, client):
        r = client.post("/api/games", json={"heaps": ",".join(["3"] * 9)})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "bad_heap_count"

    def test_parse_error_names_token(self, client):
        r = client.post("/api/games", json={"heaps": "12,xy"})
        assert r.status_code == 400
        assert "'xy'" in r.json()["detail"]["message"]

    def test_horizon_rejected(self, client):
        r = client.post("/api/games", json={"heaps": str(HORIZON + 1)})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "horizon"

    def test_bad_role_rejected(self, client):
        r = client.post("/api/games", json={"heaps": "5", "engine_role": "kibitzer"})
        assert r.status_code == 400


class TestMoves:
    def test_unknown_session(self, client):
        r = client.post("/api/games/nope/moves", json={"heap": 0, "take": 1})
        assert r.status_code == 404

    def test_illegal_move_echoes_cap(self, client):
        doc = client.post("/api/games", json={"heaps": "11:10"}).json()
        r = client.post(f"/api/games/{doc['id']}/moves", json={"heap": 0, "take": 12})
        assert r.status_code == 400
        detail = r.json()["detail"]
        assert detail["code"] == "illegal_move"
        assert detail["cap"] == 10

    def test_engine_replies_in_same_transaction(self, client, table):
        doc = client.post(
            "/api/games", json={"heaps": "11:10", "engine_role": "plays_second"}
        ).json()
        r = client.post(f"/api/games/{doc['id']}/moves", json={"heap": 0, "take": 3})
        out = r.json()
        assert [m["player"] for m in out["history"]] == ["first", "second"]
        assert out["to_move"] == "first"
        # human's take of 3 reached (8, 6), a losing heap for the engine
        assert out["history"][0]["take"] == 3

    def test_move_in_finished_game(self, client):
        doc = client.post("/api/games", json={"heaps": "1:1"}).json()
        done = client.post(f"/api/games/{doc['id']}/moves", json={"heap": 0, "take": 1}).json()
        assert done["status"] == "first_won"
        r = client.post(f"/api/games/{doc['id']}/moves", json={"heap": 0, "take": 1})
        assert r.status_code == 409
        assert r.json()["detail"]["code"] == "finished"

    def test_get_game_roundtrip(self, client):
        doc = client.post("/api/games", json={"heaps": "7:6,5"}).json()
        again = client.get(f"/api/games/{doc['id']}").json()
        assert again == doc

    def test_engine_wins_from_losing_start(self, client):
        # a single Fibonacci heap is lost for the opener; the engine, playing
        # second, must convert no matter what the human does
        doc = client.post("/api/games", json={"heaps": "13", "engine_role": "plays_second"}).json()
        rng = random.Random(7)
        while doc["status"] == "in_progress":
            cap = doc["heaps"][0]["cap"]
            take = rng.randint(1, cap)
            doc = client.post(
                f"/api/games/{doc['id']}/moves", json={"heap": 0, "take": take}
            ).json()
        assert doc["status"] == "second_won"


class TestAnalyze:
    def test_single_heap(self, client):
        doc = client.get("/api/analyze", params={"heaps": "12"}).json()
        assert doc["heaps"][0]["grundy"] == 6
        assert doc["heaps"][0]["zeckendorf"] == [1, 3, 8]
        assert doc["nim_sum"] == 6
        assert doc["hint"] == {"heap": 0, "take": 1}  # smallest part of 12

    def test_two_heaps(self, client):
        doc = client.get("/api/analyze", params={"heaps": "4:3,7:6"}).json()
        assert doc["nim_sum"] == 7
        assert doc["winning_moves"] == [{"heap": 1, "take": 3}, {"heap": 1, "take": 4}]

    def test_losing_heap(self, client):
        doc = client.get("/api/analyze", params={"heaps": "13"}).json()
        assert doc["nim_sum"] == 0
        assert doc["winning_moves"] == []
        assert doc["hint"] is None

    def test_bad_list(self, client):
        assert client.get("/api/analyze", params={"heaps": "1,,2"}).status_code == 400


class TestReplayDeterminism:
    def test_sessions_replay(self, client, table):
        rng = random.Random(2024)
        for _ in range(10):
            sizes = [rng.randint(1, 40) for _ in range(rng.randint(1, 3))]
            role = rng.choice(["none", "plays_first", "plays_second"])
            heaps_text = ",".join(str(n) for n in sizes)
            doc = client.post("/api/games", json={"heaps": heaps_text, "engine_role": role}).json()
            engine_player = {"plays_first": "first", "plays_second": "second"}.get(role)
            for _ in range(200):
                if doc["status"] != "in_progress":
                    break
                live = [i for i, h in enumerate(doc["heaps"]) if h["cap"] >= 1]
                i = rng.choice(live)
                take = rng.randint(1, doc["heaps"][i]["cap"])
                doc = client.post(
                    f"/api/games/{doc['id']}/moves", json={"heap": i, "take": take}
                ).json()
            # fold the recorded history over the initial state
            state = multiheap.new_game(sizes)
            for entry in doc["history"]:
                state = multiheap.apply_move(
                    state, multiheap.make_move(state, entry["heap"], entry["take"])
                )
                # replayed mover matches the recorded player tags
            assert [h.n for h in state.heaps] == [h["tokens"] for h in doc["heaps"]]
            assert [h.r for h in state.heaps] == [h["cap"] for h in doc["heaps"]]
            assert state.to_move == doc["to_move"]
            # engine moves were perfect whenever perfection was possible
            if engine_player is not None:
                replay = multiheap.new_game(sizes)
                for idx, entry in enumerate(doc["history"]):
                    mover = "first" if idx % 2 == 0 else "second"
                    if mover == engine_player:
                        wins = multiheap.winning_moves(replay, table)
                        if wins:
                            assert (entry["heap"], entry["take"]) in [
                                (m.heap_index, m.take) for m in wins
                            ]
                    replay = multiheap.apply_move(
                        replay, multiheap.make_move(replay, entry["heap"], entry["take"])
                    )


class TestSnapshot:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "sessions.json"
        with TestClient(create_app(horizon=30, snapshot_path=path)) as c:
            doc = c.post("/api/games", json={"heaps": "12:4,9"}).json()
            c.post(f"/api/games/{doc['id']}/moves", json={"heap": 0, "take": 2})
        assert path.exists()
        with TestClient(create_app(horizon=30, snapshot_path=path)) as c:
            revived = c.get(f"/api/games/{doc['id']}")
            assert revived.status_code == 200
            assert revived.json()["heaps"][0] == {"tokens": 10, "cap": 4, "grundy": 2}
