"""Suggested parameter ranges and defaults.

These drive three things: validation warnings for out-of-range values,
the random generator's default sampling ranges, and the /api/defaults
endpoint that populates UI controls.  Ranges are (low, high) pairs;
bounds are inclusive unless noted in the description.
"""

import math

SCHEMA_VERSION = 1

COMPONENT_PARAMS = {
    "p": {"suggested_range": [0.2, 1.2], "default": 0.6,
          "description": "basin curvature exponent; low end exclusive"},
    "kappa": {"suggested_range": [1.0, 10000.0], "default": 100.0,
              "description": "anisotropy factor; any positive value is valid, "
                             "this is the generator's log-uniform sampling range"},
    "delta": {"suggested_range": [1.0, 1000.0], "default": 100.0,
              "description": "target rise at the reference radius"},
    "r_ref": {"suggested_range": [0.0, 100.0], "default": 100.0,
              "description": "reference radius; low end exclusive"},
    "angle": {"suggested_range": [-math.pi, math.pi], "default": 0.0,
              "description": "rotation angle in radians; high end exclusive"},
    "offset": {"suggested_range": [-1000.0, 0.0], "default": 0.0,
               "description": "value at the component center; any real is valid, "
                              "this is the generator's base-level range"},
}

LANDSCAPE_PARAMS = {
    "components_per_block": {"suggested_range": [1, 25], "default": 1},
    # None marks an unbounded end of the range (kept JSON-friendly).
    "block_weight": {"suggested_range": [0.0, None], "default": 1.0,
                     "description": "strictly positive"},
    "block_bounds": {"suggested_range": [-100.0, 100.0], "default": [-100.0, 100.0]},
    "block_dim": {"suggested_range": [2, None], "default": 2},
}

TRANSFORM_PARAMS = {
    "additive_periodic": {
        "mu": {"suggested_range": [0.1, 0.7], "default": 0.4},
        "gamma": {"suggested_range": [0.002, 0.2], "default": 0.05},
        "omega": {"suggested_range": [0.05, 1.0], "default": 1.0},
    },
    "log_sinusoidal": {
        "mu": {"suggested_range": [0.05, 0.5], "default": 0.25},
        "omega1": {"suggested_range": [5.0, 50.0], "default": 50.0},
        "omega2": {"suggested_range": [5.0, 50.0], "default": 50.0},
    },
    "wavelet": {
        "mu": {"suggested_range": [10.0, 50.0], "default": 50.0},
        "omega": {"suggested_range": [0.3, 1.0], "default": 0.3},
        "ell": {"suggested_range": [10.0, 80.0], "default": 80.0},
        "eta": {"suggested_range": [10.0, 24.0], "default": 10.0},
    },
    "tensor_interference": {
        "mu0": {"suggested_range": [10.0, 20.0], "default": 10.0},
        "omega": {"suggested_range": [0.1, 0.7], "default": 0.7},
    },
    "radial_hybrid": {
        "mu": {"suggested_range": [0.4, 2.0], "default": 1.0},
        "p": {"suggested_range": [0.4, 0.7], "default": 0.7},
        # Two presets: near-uniform rings (q in [0.9, 1.2], omega in
        # [0.1, 0.4]) and widening rings (q in [0.4, 0.6], omega in [5, 10]).
        "q": {"suggested_range": [0.4, 1.2], "default": 0.6},
        "omega": {"suggested_range": [0.1, 10.0], "default": 10.0},
    },
}

RADIAL_PRESETS = {
    "near_uniform": {"q": [0.9, 1.2], "omega": [0.1, 0.4]},
    "widening": {"q": [0.4, 0.6], "omega": [5.0, 10.0]},
}


def defaults_document() -> dict:
    """Everything a UI needs to populate its controls."""
    return {
        "schema_version": SCHEMA_VERSION,
        "component": COMPONENT_PARAMS,
        "landscape": LANDSCAPE_PARAMS,
        "transforms": TRANSFORM_PARAMS,
        "radial_presets": RADIAL_PRESETS,
    }
