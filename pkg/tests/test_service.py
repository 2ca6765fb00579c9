"""HTTP and stdio hosting of the session protocol."""

import json

import pytest
from fastapi.testclient import TestClient

from cardinal_scale import GeneratorSpec, Query, make_oracle, respond_with_oracle
from cardinal_scale.service import (
    SessionStore,
    create_app,
    handle_stdio_request,
)

POWER2_100 = GeneratorSpec.power(2.0, domain=(0.0, 100.0))


@pytest.fixture
def client():
    return TestClient(create_app())


def _create(client, config):
    response = client.post("/sessions", json={"config": config})
    assert response.status_code == 201, response.text
    return response.json()


def _drive(client, config):
    """Answer every query using a power-of-two respondent."""
    oracle = make_oracle(POWER2_100)
    body = _create(client, config)
    sid = body["session_id"]
    query = body["first_query"]
    while query is not None:
        q = Query(id=query["id"], kind=query["kind"], prompt_data=query["prompt_data"])
        answer = respond_with_oracle(q, oracle)
        response = client.post(
            f"/sessions/{sid}/answer",
            json={"query_id": query["id"], "answer": answer},
        )
        assert response.status_code == 200, response.text
        payload = response.json()
        query = payload.get("next_query")
    return sid, payload


class TestHttpFlow:
    CONFIG = {"lo": 0.0, "hi": 100.0, "tol": 0.0625}

    def test_create_returns_budget_and_first_query(self, client):
        body = _create(client, self.CONFIG)
        assert body["status"] == "AwaitingAnswer"
        assert body["query_budget"] > 0
        assert body["first_query"]["kind"] == "Binary"

    def test_full_session(self, client):
        sid, final = _drive(client, self.CONFIG)
        assert final["status"] == "Complete"
        utility = client.get(f"/sessions/{sid}/utility")
        assert utility.status_code == 200
        doc = utility.json()
        assert {"anchors", "resolution", "knots"} <= set(doc)
        assert len(doc["knots"]) == 17

    def test_log_contains_every_answer(self, client):
        sid, _ = _drive(client, self.CONFIG)
        log = client.get(f"/sessions/{sid}/log").json()
        assert log["session_id"] == sid
        assert log["status"] == "Complete"
        assert log["config"]["hi"] == 100.0
        assert all(e["answer"] in "<=>" for e in log["entries"])
        ids = [e["query"]["id"] for e in log["entries"]]
        assert ids == sorted(ids)

    def test_bare_config_body_accepted(self, client):
        response = client.post("/sessions", json=self.CONFIG)
        assert response.status_code == 201

    def test_sessions_are_independent(self, client):
        a = _create(client, self.CONFIG)
        b = _create(client, self.CONFIG)
        assert a["session_id"] != b["session_id"]
        client.post(
            f"/sessions/{a['session_id']}/answer",
            json={"query_id": 1, "answer": ">"},
        )
        other = client.get(f"/sessions/{b['session_id']}/query").json()
        assert other["id"] == 1  # untouched by the first session's answer


class TestHttpErrors:
    def test_unknown_session_404(self, client):
        for path in ("query", "utility", "log"):
            assert client.get(f"/sessions/nope/{path}").status_code == 404
        response = client.post(
            "/sessions/nope/answer", json={"query_id": 1, "answer": ">"}
        )
        assert response.status_code == 404

    def test_bad_config_422(self, client):
        response = client.post("/sessions", json={"config": {"lo": 5, "hi": 1}})
        assert response.status_code == 422
        assert response.json()["error"] == "BadConfig"

    def test_stale_query_409(self, client):
        body = _create(client, {"tol": 0.25})
        sid = body["session_id"]
        response = client.post(
            f"/sessions/{sid}/answer", json={"query_id": 42, "answer": ">"}
        )
        assert response.status_code == 409
        assert response.json()["error"] == "StaleQuery"

    def test_bad_answer_symbol_422(self, client):
        body = _create(client, {"tol": 0.25})
        sid = body["session_id"]
        response = client.post(
            f"/sessions/{sid}/answer", json={"query_id": 1, "answer": "maybe"}
        )
        assert response.status_code == 422

    def test_utility_before_progress_409(self, client):
        body = _create(client, {"tol": 0.25})
        response = client.get(f"/sessions/{body['session_id']}/utility")
        assert response.status_code == 409
        assert response.json()["error"] == "TooEarly"

    def test_failed_session_is_reported(self, client):
        body = _create(client, {"tol": 0.25})
        sid = body["session_id"]
        response = client.post(
            f"/sessions/{sid}/answer", json={"query_id": 1, "answer": "<"}
        )
        assert response.status_code == 200
        payload = response.json()
        assert payload["status"] == "Failed"
        assert payload["failure"]["error"] == "AnchorsNotStrict"
        log = client.get(f"/sessions/{sid}/log").json()
        assert log["failure"]["conflicting_query_ids"] == [1]


class TestStdio:
    def test_create_query_answer_cycle(self):
        store = SessionStore()
        created = handle_stdio_request(
            store, {"op": "create", "config": {"lo": 0, "hi": 100, "tol": 0.25}}
        )
        assert created["ok"]
        sid = created["result"]["session_id"]
        queried = handle_stdio_request(store, {"op": "query", "session_id": sid})
        assert queried["ok"]
        assert queried["result"]["kind"] == "Binary"
        answered = handle_stdio_request(
            store,
            {"op": "answer", "session_id": sid, "query_id": 1, "answer": ">"},
        )
        assert answered["ok"]
        assert answered["result"]["status"] == "AwaitingAnswer"

    def test_errors_are_enveloped_not_raised(self):
        store = SessionStore()
        bad_op = handle_stdio_request(store, {"op": "shutdown"})
        assert not bad_op["ok"]
        missing = handle_stdio_request(store, {"op": "query", "session_id": "x"})
        assert not missing["ok"]
        assert missing["error"] == "UnknownSession"
        bad_config = handle_stdio_request(
            store, {"op": "create", "config": {"lo": 9, "hi": 1}}
        )
        assert not bad_config["ok"]
        assert bad_config["error"] == "BadConfig"

    def test_responses_are_json_serializable(self):
        store = SessionStore()
        created = handle_stdio_request(
            store, {"op": "create", "config": {"tol": 0.25}}
        )
        json.dumps(created)  # must not raise
