"""2-D slices of an instance for export and visualization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError
from .instance import batch_evaluate
from .landscape import PreparedInstance, known_optimum, prepare

MAX_RESOLUTION = 2048


@dataclass(frozen=True)
class GridRequest:
    """Evaluation grid over two global dimensions.

    Remaining dimensions are pinned to ``fixed`` (a full-length vector;
    the entries at the two axis positions are ignored) or, by default, to
    the known-optimum coordinates.
    """

    axis1: int  # global dimension index, 1-based
    axis2: int
    min1: float
    max1: float
    resolution1: int
    min2: float
    max2: float
    resolution2: int
    fixed: Optional[np.ndarray] = None

    def __post_init__(self):
        for res in (self.resolution1, self.resolution2):
            if not (2 <= res <= MAX_RESOLUTION):
                raise InvalidArgumentError(
                    f"resolution must lie in 2..{MAX_RESOLUTION}, got {res}"
                )
        if self.axis1 == self.axis2:
            raise InvalidArgumentError("axis indices must be distinct")
        if self.min1 >= self.max1 or self.min2 >= self.max2:
            raise InvalidArgumentError("each axis needs min < max")
        if self.fixed is not None:
            object.__setattr__(self, "fixed", np.asarray(self.fixed, dtype=float))


def compute_grid(inst, request: GridRequest) -> dict:
    """Row-major values: index = i1 * resolution2 + i2, axis1 outermost."""
    prepared = inst if isinstance(inst, PreparedInstance) else prepare(inst)
    d = prepared.dimension
    for axis in (request.axis1, request.axis2):
        if not (1 <= axis <= d):
            raise InvalidArgumentError(f"axis index {axis} outside 1..{d}")
    if request.fixed is None:
        fixed = known_optimum(prepared.instance).location
    else:
        if request.fixed.shape != (d,):
            raise InvalidArgumentError(f"fixed values must have length {d}")
        fixed = request.fixed
    axis1_values = np.linspace(request.min1, request.max1, request.resolution1)
    axis2_values = np.linspace(request.min2, request.max2, request.resolution2)
    points = np.tile(fixed, (request.resolution1 * request.resolution2, 1))
    g1, g2 = np.meshgrid(axis1_values, axis2_values, indexing="ij")
    points[:, request.axis1 - 1] = g1.ravel()
    points[:, request.axis2 - 1] = g2.ravel()
    results = batch_evaluate(prepared, points)
    return {
        "axes": [
            {"dimension": request.axis1, "min": request.min1, "max": request.max1,
             "resolution": request.resolution1, "values": [float(v) for v in axis1_values]},
            {"dimension": request.axis2, "min": request.min2, "max": request.max2,
             "resolution": request.resolution2, "values": [float(v) for v in axis2_values]},
        ],
        "fixed": [float(v) for v in fixed],
        "values": [r.value for r in results],
    }
