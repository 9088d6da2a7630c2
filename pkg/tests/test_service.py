import math

import pytest
from fastapi.testclient import TestClient

from sumsetlab.service import (
    ConstantRequest,
    LemmaRequest,
    VerifyRequest,
    app,
    handle_constant,
    handle_lemma,
    handle_verify,
)

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": "sumsetlab/1"}


def test_constants_endpoint():
    r = client.post("/constants", json={"which": "cube-upper", "n": 2, "m": 2})
    assert r.status_code == 200
    body = r.json()
    assert body["value"] == pytest.approx(math.log(5) / (2 * math.log(3)))
    assert abs(body["residual"]) < 1e-9
    assert body["version"] == "sumsetlab/1"


def test_constants_missing_arg_is_400():
    r = client.post("/constants", json={"which": "tau"})
    assert r.status_code == 400
    assert "--m" in r.json()["detail"]


def test_constants_unknown_which_is_422():
    # schema-level rejection: not in the Literal
    r = client.post("/constants", json={"which": "nonsense"})
    assert r.status_code == 422


def test_lemmas_endpoint():
    r = client.post("/lemmas", json={"which": "key-lemma-2", "n": 3, "points": 500})
    assert r.status_code == 200
    body = r.json()
    assert body["passed"] is True
    assert body["min_margin"] >= -1e-9


def test_lemmas_unknown_id_is_400():
    r = client.post("/lemmas", json={"which": "no-such-lemma"})
    assert r.status_code == 400


def test_lemmas_unsupported_option_is_400():
    # key-lemma-2 takes no seed
    r = client.post("/lemmas", json={"which": "key-lemma-2", "seed": 1})
    assert r.status_code == 400
    assert "seed" in r.json()["detail"]


def test_verify_endpoint_exhaustive():
    r = client.post("/verify", json={"statement": "two-sets", "m": 1, "d": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["instances"] == 9
    assert body["violations"] == 0
    assert body["version"] == "sumsetlab/1"


def test_verify_random_without_seed_is_400():
    r = client.post(
        "/verify",
        json={"statement": "two-sets", "m": 1, "d": 1, "mode": "random", "count": 5},
    )
    assert r.status_code == 400
    assert "seed" in r.json()["detail"]


def test_verify_unsupported_option_is_400():
    # the two-sets campaign takes no k
    r = client.post("/verify", json={"statement": "two-sets", "m": 1, "d": 1, "k": 2})
    assert r.status_code == 400


def test_verify_bad_statement_is_422():
    r = client.post("/verify", json={"statement": "nope"})
    assert r.status_code == 422


def test_search_endpoint():
    r = client.post("/search", json={"n": 2, "m": 1, "d": 1, "budget": 2, "seed": 0})
    assert r.status_code == 200
    body = r.json()
    assert body["statement"] == "search"
    assert body["min_log_margin"] >= -1e-9


def test_handlers_match_endpoints():
    direct = handle_verify(VerifyRequest(statement="two-sets", m=1, d=1))
    via = client.post("/verify", json={"statement": "two-sets", "m": 1, "d": 1}).json()
    got = direct.model_dump()
    got.pop("wall_time")
    via.pop("wall_time")
    assert got == via


def test_handle_constant_and_lemma_direct():
    c = handle_constant(ConstantRequest(which="conjugate", p=3.0))
    assert c.value == pytest.approx(1.5)
    l = handle_lemma(LemmaRequest(which="main-F", n=3, points=500))
    assert l.passed is True
