"""HTTP surface: every endpoint, the error mapping, and determinism."""

import pytest
from fastapi.testclient import TestClient

from neardist.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def post_pointset(client, path, points, dim, **extra):
    payload = {"pointset": {"dim": dim, "points": points}}
    payload.update(extra)
    return client.post(path, json=payload)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_turan(client):
    resp = client.get("/turan", params={"n": 30, "s": 4})
    assert resp.status_code == 200
    assert resp.json()["value"] == 300


def test_mdk(client):
    resp = client.get("/mdk", params={"d": 3, "k": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["value"] == 4
    assert body["witness"]["value"] == 4
    assert body["witness"]["d"] == 3


def test_md_table(client):
    assert client.get("/md-table", params={"d": 2}).json() == {
        "d": 2,
        "value": 5,
        "lower": 3,
        "upper": 6,
    }
    assert client.get("/md-table", params={"d": 9}).json()["value"] is None


def test_generate_then_analyze_then_certify(client):
    gen = client.post(
        "/generate", json={"construction": "simplex_sum", "d": 2, "k": 2, "eps1": 0.01}
    )
    assert gen.status_code == 200
    body = gen.json()
    assert body["metadata"]["expected_cardinality"] == 9
    pointset = body["pointset"]
    assert pointset["dim"] == 2 and len(pointset["points"]) == 9

    ana = client.post(
        "/analyze",
        json={
            "pointset": pointset,
            "k": 2,
            "eps": body["metadata"]["window_eps"],
            "bound": "turan_dk",
        },
    )
    assert ana.status_code == 200
    report = ana.json()
    assert report["count"] == 36  # all pairs of 9 points
    assert report["turan_reference"] == 36

    cert = client.post(
        "/verify/certify",
        json={"pointset": pointset, "k": 2, "eps": 0.04, "big_d": 10.0},
    )
    assert cert.status_code == 200
    tree = cert.json()
    assert tree["ok"] and tree["root_bound"] == 9
    assert tree["tree"]["kind"] == "split"


def test_generate_stacked_from_dimension(client):
    resp = client.post("/generate", json={"construction": "stacked", "d": 3, "n": 25})
    assert resp.status_code == 200
    meta = resp.json()["metadata"]
    assert meta["expected_cardinality"] == 25
    assert meta["expected_cross_pairs"] == 250


def test_verify_k_distance(client):
    pentagon = client.post("/generate", json={"construction": "two_distance", "d": 2})
    points = pentagon.json()["pointset"]
    resp = client.post("/verify/k-distance", json={"pointset": points, "k": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["ok"] and body["cluster_count"] == 2


def test_verify_weak_eps(client):
    resp = post_pointset(
        client, "/verify/weak-eps", [[0.0], [1.0], [2.0]], 1, eps=0.1
    )
    assert resp.status_code == 200
    assert resp.json() == {"window_count": 2, "anchors": [1.0, 2.0]}


def test_verify_schuette(client):
    square = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
    resp = post_pointset(client, "/verify/schuette", square, 2)
    assert resp.status_code == 200
    body = resp.json()
    assert body["ok"] and abs(body["ratio"] - 2 ** 0.5) < 1e-9


def test_domain_errors_map_to_400(client):
    # duplicate points: weak-eps cover is undefined
    resp = post_pointset(
        client, "/verify/weak-eps", [[0.0], [0.0], [1.0]], 1, eps=0.1
    )
    assert resp.status_code == 400
    assert resp.json()["error"]["category"] == "InputError"

    resp = client.get("/mdk", params={"d": 13, "k": 2})
    assert resp.status_code == 400
    assert resp.json()["error"]["category"] == "BudgetError"

    resp = client.post("/generate", json={"construction": "two_distance", "d": 7})
    assert resp.status_code == 400
    assert resp.json()["error"]["category"] == "UnsupportedError"


def test_malformed_request_is_422(client):
    resp = client.post("/analyze", json={"pointset": {"dim": 2}})
    assert resp.status_code == 422


def test_analyze_is_deterministic(client):
    gen = client.post(
        "/generate", json={"construction": "clustered_turan", "d": 1, "k": 2, "n": 8}
    )
    pointset = gen.json()["pointset"]
    eps = gen.json()["metadata"]["window_eps"]
    payload = {"pointset": pointset, "k": 2, "eps": eps, "bound": "turan_dk"}
    first = client.post("/analyze", json=payload)
    second = client.post("/analyze", json=payload)
    assert first.content == second.content
    assert first.json()["count"] == 24
