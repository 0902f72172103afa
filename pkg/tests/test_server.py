import numpy as np
import pytest
from fastapi.testclient import TestClient

from landgen import batch_evaluate, known_optimum, random_instance, to_document
from landgen.server import create_app


@pytest.fixture
def client():
    app = create_app(initial=random_instance(17))
    return TestClient(app)


def test_get_instance_returns_current_document(client):
    response = client.get("/api/instance")
    assert response.status_code == 200
    assert response.json() == to_document(random_instance(17))


def test_get_instance_404_when_empty():
    client = TestClient(create_app())
    assert client.get("/api/instance").status_code == 404


def test_put_valid_instance_swaps_snapshot(client):
    new_doc = to_document(random_instance(18))
    response = client.put("/api/instance", json=new_doc)
    assert response.status_code == 200
    assert response.json()["errors"] == []
    assert client.get("/api/instance").json() == new_doc


def test_put_invalid_instance_422_and_unchanged(client):
    before = client.get("/api/instance").json()
    bad = to_document(random_instance(18))
    bad["blocks"][0]["components"][0]["kappa_plus"][0] = -1.0
    response = client.put("/api/instance", json=bad)
    assert response.status_code == 422
    report = response.json()
    assert any("anisotropy" in e for e in report["errors"])
    assert client.get("/api/instance").json() == before


def test_post_random_replaces_instance(client):
    response = client.post("/api/random", json={"seed": 23})
    assert response.status_code == 200
    expected = to_document(random_instance(23))
    assert response.json() == expected
    assert client.get("/api/instance").json() == expected


def test_post_random_with_strata(client):
    response = client.post("/api/random", json={
        "seed": 23, "strata": {"n_blocks": [2, 2], "block_dims": [2, 2]},
    })
    assert response.status_code == 200
    assert response.json()["dimension"] == 4


def test_post_random_requires_integer_seed(client):
    assert client.post("/api/random", json={"seed": "x"}).status_code == 400


def test_post_evaluate_matches_library(client):
    inst = random_instance(17)
    rng = np.random.default_rng(61)
    points = rng.uniform(-100, 100, (10, inst.dimension)).tolist()
    response = client.post("/api/evaluate", json={"points": points})
    assert response.status_code == 200
    payload = response.json()
    expected = batch_evaluate(inst, points)
    assert payload["values"] == [r.value for r in expected]
    first = payload["attribution"][0]
    assert set(first[0]) == {"block_id", "block_value", "component_id"}


def test_post_evaluate_dimension_error(client):
    inst = random_instance(17)
    response = client.post("/api/evaluate", json={
        "points": [[0.0] * (inst.dimension + 1)],
    })
    assert response.status_code == 400
    assert "point 0" in response.json()["error"]


def test_post_grid_matches_evaluate(client):
    inst = random_instance(17)
    response = client.post("/api/grid", json={
        "axis1": 1, "axis2": 2,
        "min1": -50, "max1": 50, "resolution1": 4,
        "min2": -50, "max2": 50, "resolution2": 5,
    })
    assert response.status_code == 200
    grid = response.json()
    assert len(grid["values"]) == 20
    fixed = np.array(grid["fixed"])
    points = []
    for x1 in grid["axes"][0]["values"]:
        for x2 in grid["axes"][1]["values"]:
            p = fixed.copy()
            p[0], p[1] = x1, x2
            points.append(p.tolist())
    check = client.post("/api/evaluate", json={"points": points})
    assert grid["values"] == check.json()["values"]


def test_post_grid_missing_fields(client):
    response = client.post("/api/grid", json={"axis1": 1})
    assert response.status_code == 400
    assert "missing fields" in response.json()["error"]


def test_get_optimum(client):
    opt = known_optimum(random_instance(17))
    payload = client.get("/api/optimum").json()
    assert payload["value"] == opt.value
    assert payload["location"] == [float(v) for v in opt.location]
    assert payload["exactness"] == opt.exactness


def test_get_defaults_has_ranges_for_ui(client):
    payload = client.get("/api/defaults").json()
    assert payload["schema_version"] == 1
    assert payload["component"]["p"]["suggested_range"] == [0.2, 1.2]
    assert payload["component"]["p"]["default"] == 0.6
    assert "transforms" in payload


def test_responses_carry_schema_version(client):
    assert client.get("/api/instance").json()["schema_version"] == 1
    assert client.get("/api/optimum").json()["schema_version"] == 1
    inst = random_instance(17)
    evaluated = client.post("/api/evaluate", json={"points": [[0.0] * inst.dimension]})
    assert evaluated.json()["schema_version"] == 1
