"""Local HTTP/JSON service backing the CLI's serve command and the playground.

The current instance lives in a single snapshot tuple that is replaced
atomically on update, so concurrent readers always observe a complete
instance.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .defaults import defaults_document
from .errors import InvalidArgumentError, LandgenError
from .grid import GridRequest, compute_grid
from .instance import (
    SCHEMA_VERSION,
    GenerationStrata,
    batch_evaluate,
    from_document,
    random_instance,
    to_document,
    validate,
)
from .landscape import ProblemInstance, known_optimum, prepare


class _Snapshot:
    __slots__ = ("instance", "prepared", "document")

    def __init__(self, instance: ProblemInstance):
        self.instance = instance
        self.prepared = prepare(instance)
        self.document = to_document(instance)


def create_app(initial: Optional[ProblemInstance] = None,
               static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="landgen service")
    app.state.snapshot = _Snapshot(initial) if initial is not None else None

    def snapshot() -> _Snapshot:
        snap = app.state.snapshot
        if snap is None:
            raise InvalidArgumentError("no instance loaded")
        return snap

    @app.exception_handler(LandgenError)
    async def _landgen_error(_request, exc):
        return JSONResponse(
            status_code=400,
            content={"schema_version": SCHEMA_VERSION, "error": str(exc)},
        )

    @app.get("/api/instance")
    def get_instance():
        snap = app.state.snapshot
        if snap is None:
            return JSONResponse(
                status_code=404,
                content={"schema_version": SCHEMA_VERSION, "error": "no instance loaded"},
            )
        return snap.document

    @app.put("/api/instance")
    def put_instance(document: dict):
        report = validate(document)
        if report.errors:
            return JSONResponse(status_code=422, content=report.to_dict())
        # Validation passed, so construction cannot fail structurally.
        app.state.snapshot = _Snapshot(from_document(document))
        return report.to_dict()

    @app.post("/api/random")
    def post_random(payload: dict):
        seed = payload.get("seed")
        if not isinstance(seed, int):
            raise InvalidArgumentError("payload must carry an integer 'seed'")
        strata = GenerationStrata.from_dict(payload.get("strata") or {})
        instance = random_instance(seed, strata)
        app.state.snapshot = _Snapshot(instance)
        return app.state.snapshot.document

    @app.post("/api/evaluate")
    def post_evaluate(payload: dict):
        points = payload.get("points")
        if not isinstance(points, list):
            raise InvalidArgumentError("payload must carry a 'points' list")
        results = batch_evaluate(snapshot().prepared, points)
        return {
            "schema_version": SCHEMA_VERSION,
            "values": [r.value for r in results],
            "attribution": [
                [{"block_id": b, "block_value": v, "component_id": c} for b, v, c in r.per_block]
                for r in results
            ],
        }

    @app.post("/api/grid")
    def post_grid(payload: dict):
        missing = [
            key for key in
            ("axis1", "axis2", "min1", "max1", "resolution1", "min2", "max2", "resolution2")
            if key not in payload
        ]
        if missing:
            raise InvalidArgumentError(f"grid request is missing fields: {', '.join(missing)}")
        request = GridRequest(
            axis1=int(payload["axis1"]),
            axis2=int(payload["axis2"]),
            min1=float(payload["min1"]),
            max1=float(payload["max1"]),
            resolution1=int(payload["resolution1"]),
            min2=float(payload["min2"]),
            max2=float(payload["max2"]),
            resolution2=int(payload["resolution2"]),
            fixed=payload.get("fixed"),
        )
        grid = compute_grid(snapshot().prepared, request)
        grid["schema_version"] = SCHEMA_VERSION
        return grid

    @app.get("/api/optimum")
    def get_optimum():
        opt = known_optimum(snapshot().instance)
        return {
            "schema_version": SCHEMA_VERSION,
            "location": [float(v) for v in opt.location],
            "value": opt.value,
            "exactness": opt.exactness,
            "co_optimal": [
                {"block_id": block_id, "component_ids": list(ids)}
                for block_id, ids in opt.co_optimal
            ],
        }

    @app.get("/api/defaults")
    def get_defaults():
        return defaults_document()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
