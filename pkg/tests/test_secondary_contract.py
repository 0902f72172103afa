"""Contract checks backing the browser playground.

These exercise only the HTTP API, so they pass whether or not the
frontend bundle has been built.
"""

from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from landgen import random_instance, to_document
from landgen.server import create_app

FRONTEND = Path(__file__).resolve().parent.parent / "frontend"


@pytest.fixture
def client():
    return TestClient(create_app(initial=random_instance(97)))


def test_put_invalid_leaves_instance_unchanged(client):
    before = client.get("/api/instance").json()
    bad = to_document(random_instance(98))
    bad["blocks"][0]["components"][0]["delta"] = -1.0
    response = client.put("/api/instance", json=bad)
    assert response.status_code == 422
    assert response.json()["errors"]  # inline-displayable messages
    assert client.get("/api/instance").json() == before


def test_grid_values_match_evaluate_at_probe_points(client):
    grid = client.post("/api/grid", json={
        "axis1": 1, "axis2": 2,
        "min1": -100, "max1": 100, "resolution1": 21,
        "min2": -100, "max2": 100, "resolution2": 21,
    }).json()
    rng = np.random.default_rng(71)
    probes = rng.choice(21 * 21, size=10, replace=False)
    fixed = np.array(grid["fixed"])
    points = []
    for flat in probes:
        i1, i2 = divmod(int(flat), 21)
        p = fixed.copy()
        p[0] = grid["axes"][0]["values"][i1]
        p[1] = grid["axes"][1]["values"][i2]
        points.append(p.tolist())
    evaluated = client.post("/api/evaluate", json={"points": points}).json()
    for flat, value in zip(probes, evaluated["values"]):
        assert grid["values"][int(flat)] == value  # exact, not approximate


def test_two_basin_preset_document_has_two_minima(client):
    # mirrors frontend/src/presets.ts; the deeper basin is the optimum
    basin = lambda center, offset: {
        "form": "per_direction", "center": center, "offset": offset,
        "kappa_plus": [100, 100], "kappa_minus": [100, 100],
        "p_plus": [0.5, 0.5], "p_minus": [0.5, 0.5],
        "delta": 100, "r_ref": 100, "angles": [], "transforms": [],
    }
    preset = {
        "schema_version": 1, "objective_sense": "minimize", "dimension": 2,
        "overlap_allowed": False, "provenance": None,
        "blocks": [{
            "indices": [1, 2], "weight": 1,
            "bounds": [[-100, 100], [-100, 100]],
            "components": [basin([60, 60], 0), basin([-60, -60], -5)],
        }],
    }
    assert client.put("/api/instance", json=preset).status_code == 200
    opt = client.get("/api/optimum").json()
    assert opt["location"] == [-60.0, -60.0]
    assert opt["value"] == -5.0
    # both basin centers are local minima of the rendered surface
    centers = [[60.0, 60.0], [-60.0, -60.0]]
    step = 1.0
    payload = []
    for cx, cy in centers:
        payload.append([cx, cy])
        payload.extend([[cx + step, cy], [cx - step, cy], [cx, cy + step], [cx, cy - step]])
    values = client.post("/api/evaluate", json={"points": payload}).json()["values"]
    for b in range(2):
        at_center = values[b * 5]
        neighbors = values[b * 5 + 1:b * 5 + 5]
        assert all(v > at_center for v in neighbors)


def test_static_assets_are_served_when_present(tmp_path):
    static = tmp_path / "static"
    static.mkdir()
    (static / "index.html").write_text("<!doctype html><title>playground</title>")
    client = TestClient(create_app(initial=random_instance(1), static_dir=str(static)))
    response = client.get("/")
    assert response.status_code == 200
    assert "playground" in response.text
    # API routes still win over the static mount
    assert client.get("/api/instance").status_code == 200


def test_frontend_sources_exist_but_are_not_imported():
    # the primary suite must not depend on the secondary build
    assert (FRONTEND / "src" / "api.ts").exists()
    assert (FRONTEND / "package.json").exists()
