"""Command-line entry point.

Exit codes: 0 success, 1 warnings only (validate), 2 errors or bad usage.
Data outputs are pure functions of the inputs; no timestamps.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .errors import LandgenError
from .grid import GridRequest, compute_grid
from .instance import (
    SCHEMA_VERSION,
    GenerationStrata,
    batch_evaluate,
    deserialize,
    random_instance,
    serialize,
    validate,
)
from .landscape import known_optimum, prepare


class CliError(click.ClickException):
    exit_code = 2


def _load_instance(path: str):
    try:
        return deserialize(Path(path).read_text())
    except (OSError, LandgenError) as exc:
        raise CliError(str(exc))


@click.group()
def main():
    """Generate, validate, evaluate and serve landscape instances."""


@main.command()
@click.option("--seed", type=int, required=True, help="Generator seed.")
@click.option("--strata", "strata_path", type=click.Path(exists=True),
              help="JSON file with sampling-policy overrides.")
@click.option("-o", "--out", "out_path", type=click.Path(), required=True,
              help="Output instance file.")
def generate(seed, strata_path, out_path):
    """Generate a random instance and write it to a file."""
    strata = GenerationStrata()
    if strata_path is not None:
        try:
            strata = GenerationStrata.from_dict(json.loads(Path(strata_path).read_text()))
        except (json.JSONDecodeError, LandgenError, TypeError) as exc:
            raise CliError(f"invalid strata: {exc}")
    try:
        instance = random_instance(seed, strata)
    except LandgenError as exc:
        raise CliError(str(exc))
    Path(out_path).write_text(serialize(instance))


@main.command("validate")
@click.argument("instance_file", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def validate_cmd(instance_file, fmt):
    """Validate an instance file; exit 0 clean, 1 warnings, 2 errors."""
    try:
        document = json.loads(Path(instance_file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read instance: {exc}")
    report = validate(document)
    if fmt == "json":
        click.echo(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    else:
        for message in report.errors:
            click.echo(f"error: {message}")
        for message in report.warnings:
            click.echo(f"warning: {message}")
        for where, residual in report.rotation_residuals.items():
            click.echo(f"note: rotation residual {residual:.3e} at {where}")
        if not report.errors and not report.warnings:
            click.echo("ok")
    if report.errors:
        sys.exit(2)
    if report.warnings:
        sys.exit(1)


def _read_points(points_file, point_options, dimension):
    if points_file is not None and point_options:
        raise CliError("give either --points-file or --point, not both")
    if points_file is not None:
        rows = []
        for line in Path(points_file).read_text().splitlines():
            line = line.strip()
            if line:
                rows.append([float(v) for v in line.split(",")])
        return rows
    if point_options:
        return [[float(v) for v in spec.split(",")] for spec in point_options]
    raise CliError("give --points-file or at least one --point")


@main.command("eval")
@click.argument("instance_file", type=click.Path(exists=True))
@click.option("--points-file", type=click.Path(exists=True),
              help="CSV file, one comma-separated point per line.")
@click.option("--point", "points", multiple=True,
              help="Inline point 'x1,x2,...'; repeatable.")
@click.option("--attribution", is_flag=True,
              help="Emit CSV rows value,block_id,component_id (one per point per block).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def eval_cmd(instance_file, points_file, points, attribution, fmt):
    """Evaluate an instance at one or more points."""
    instance = _load_instance(instance_file)
    try:
        rows = _read_points(points_file, points, instance.dimension)
        results = batch_evaluate(prepare(instance), rows)
    except LandgenError as exc:
        raise CliError(str(exc))
    if fmt == "json":
        click.echo(json.dumps({
            "schema_version": SCHEMA_VERSION,
            "values": [r.value for r in results],
            "attribution": [
                [{"block_id": b, "block_value": v, "component_id": c}
                 for b, v, c in r.per_block]
                for r in results
            ] if attribution else None,
        }, sort_keys=True, indent=2))
        return
    if attribution:
        click.echo("value,block_id,component_id")
        for r in results:
            for block_id, _block_value, component_id in r.per_block:
                click.echo(f"{r.value!r},{block_id},{component_id}")
    else:
        for r in results:
            click.echo(repr(r.value))


@main.command("grid")
@click.argument("instance_file", type=click.Path(exists=True))
@click.option("--axes", default="1,2", show_default=True,
              help="Two global dimension indices 'i,j'.")
@click.option("--range1", required=True, help="Axis-1 range 'min,max'.")
@click.option("--range2", required=True, help="Axis-2 range 'min,max'.")
@click.option("--resolution", default="101,101", show_default=True,
              help="Samples per axis 'r1,r2'.")
@click.option("--fixed", "fixed_spec",
              help="Full-length coordinates for the remaining dimensions; "
                   "defaults to the known-optimum slice.")
@click.option("--format", "fmt", type=click.Choice(["csv", "bin"]), default="csv")
@click.option("-o", "--out", "out_path", type=click.Path(),
              help="Output path; stdout for csv when omitted.")
def grid_cmd(instance_file, axes, range1, range2, resolution, fixed_spec, fmt, out_path):
    """Export a 2-D slice as CSV (x1,x2,value) or a float64 raster."""
    instance = _load_instance(instance_file)
    try:
        axis1, axis2 = (int(v) for v in axes.split(","))
        min1, max1 = (float(v) for v in range1.split(","))
        min2, max2 = (float(v) for v in range2.split(","))
        res1, res2 = (int(v) for v in resolution.split(","))
        fixed = None
        if fixed_spec is not None:
            fixed = np.array([float(v) for v in fixed_spec.split(",")])
        request = GridRequest(
            axis1=axis1, axis2=axis2,
            min1=min1, max1=max1, resolution1=res1,
            min2=min2, max2=max2, resolution2=res2,
            fixed=fixed,
        )
        result = compute_grid(instance, request)
    except (ValueError, LandgenError) as exc:
        raise CliError(str(exc))
    if fmt == "csv":
        lines = ["x1,x2,value"]
        axis1_values = result["axes"][0]["values"]
        axis2_values = result["axes"][1]["values"]
        for i1, x1 in enumerate(axis1_values):
            for i2, x2 in enumerate(axis2_values):
                value = result["values"][i1 * len(axis2_values) + i2]
                lines.append(f"{x1!r},{x2!r},{value!r}")
        text = "\n".join(lines) + "\n"
        if out_path is None:
            click.echo(text, nl=False)
        else:
            Path(out_path).write_text(text)
    else:
        if out_path is None:
            raise CliError("binary output requires -o/--out")
        raster = np.asarray(result["values"], dtype="<f8")
        Path(out_path).write_bytes(raster.tobytes())
        sidecar = {
            "schema_version": SCHEMA_VERSION,
            "dtype": "float64-le",
            "order": "row-major (axis1 outermost)",
            "axes": result["axes"],
            "fixed": result["fixed"],
        }
        Path(str(out_path) + ".json").write_text(
            json.dumps(sidecar, sort_keys=True, indent=2) + "\n"
        )


@main.command("optimum")
@click.argument("instance_file", type=click.Path(exists=True))
def optimum_cmd(instance_file):
    """Print the known optimum of an instance as JSON."""
    instance = _load_instance(instance_file)
    opt = known_optimum(instance)
    click.echo(json.dumps({
        "schema_version": SCHEMA_VERSION,
        "location": [float(v) for v in opt.location],
        "value": opt.value,
        "exactness": opt.exactness,
    }, sort_keys=True, indent=2))


@main.command("serve")
@click.option("--port", type=int, default=8787, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--instance", "instance_file", type=click.Path(exists=True),
              help="Instance file to load at startup.")
@click.option("--static", "static_dir", type=click.Path(),
              help="Directory with playground assets to serve at /.")
def serve_cmd(port, host, instance_file, static_dir):
    """Run the local HTTP/JSON service."""
    import uvicorn

    from .server import create_app

    initial = _load_instance(instance_file) if instance_file else None
    app = create_app(initial=initial, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
