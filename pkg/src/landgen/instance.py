"""Instance documents: validation, canonical JSON, seeded random generation.

The file format is a single self-describing JSON document (schema_version
1).  Serialization is canonical: sorted keys, two-space indent, floats
rendered with Python's shortest round-trip repr, trailing newline.  The
same instance therefore always serializes to the same bytes.

Random generation is a pure function of (seed, strata, generator
version).  Draws use the Philox counter-based generator with per
(entity, parameter-group) subkeys so that adding a parameter group later
does not disturb existing draws.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import defaults
from .component import ComponentSpec, Form, Sense
from .errors import InvalidArgumentError, ParseError, SchemaVersionError
from .landscape import (
    BlockSpec,
    EvalResult,
    PreparedInstance,
    ProblemInstance,
    Provenance,
    eval_composite,
    prepare,
)
from .rotation import AngleMatrix, build_rotation, orthogonality_residual
from .transforms import (
    AdditivePeriodic,
    LogSinusoidal,
    RadialHybrid,
    TensorInterference,
    Wavelet,
)

SCHEMA_VERSION = 1
GENERATOR_VERSION = "1.0"
RNG_NAME = "philox4x64"

_EVAL_CHUNK = 1024


# ---------------------------------------------------------------------------
# Serialization


def _floats(values) -> list:
    return [float(v) for v in np.asarray(values, dtype=float)]


def _transform_to_dict(t) -> dict:
    if isinstance(t, AdditivePeriodic):
        return {
            "type": t.tag,
            "mu_plus": _floats(t.mu_plus), "mu_minus": _floats(t.mu_minus),
            "gamma_plus": _floats(t.gamma_plus), "gamma_minus": _floats(t.gamma_minus),
            "omega_plus": _floats(t.omega_plus), "omega_minus": _floats(t.omega_minus),
        }
    if isinstance(t, LogSinusoidal):
        return {
            "type": t.tag,
            "mu_plus": _floats(t.mu_plus), "mu_minus": _floats(t.mu_minus),
            "omega1_plus": _floats(t.omega1_plus), "omega1_minus": _floats(t.omega1_minus),
            "omega2_plus": _floats(t.omega2_plus), "omega2_minus": _floats(t.omega2_minus),
        }
    if isinstance(t, Wavelet):
        doc = {
            "type": t.tag,
            "mu_plus": _floats(t.mu_plus), "mu_minus": _floats(t.mu_minus),
            "omega_plus": _floats(t.omega_plus), "omega_minus": _floats(t.omega_minus),
        }
        if t.eta is not None:
            doc["eta"] = float(t.eta)
        else:
            doc["ell_plus"] = _floats(t.ell_plus)
            doc["ell_minus"] = _floats(t.ell_minus)
        return doc
    if isinstance(t, TensorInterference):
        return {
            "type": t.tag,
            "mu0_plus": _floats(t.mu0_plus), "mu0_minus": _floats(t.mu0_minus),
            "omega_plus": _floats(t.omega_plus), "omega_minus": _floats(t.omega_minus),
        }
    if isinstance(t, RadialHybrid):
        return {
            "type": t.tag,
            "mu": float(t.mu), "p": float(t.p), "q": float(t.q), "omega": float(t.omega),
        }
    raise InvalidArgumentError(f"unknown transform {type(t).__name__}")


_TRANSFORM_FIELDS = {
    "additive_periodic": (
        AdditivePeriodic,
        ("mu_plus", "mu_minus", "gamma_plus", "gamma_minus", "omega_plus", "omega_minus"),
    ),
    "log_sinusoidal": (
        LogSinusoidal,
        ("mu_plus", "mu_minus", "omega1_plus", "omega1_minus", "omega2_plus", "omega2_minus"),
    ),
    "tensor_interference": (
        TensorInterference,
        ("mu0_plus", "mu0_minus", "omega_plus", "omega_minus"),
    ),
}


def _transform_from_dict(doc: dict, location: str):
    tag = doc.get("type")
    valid = "additive_periodic, log_sinusoidal, wavelet, tensor_interference, radial_hybrid"
    if tag is None:
        raise ParseError(f"transform is missing a 'type' tag (valid tags: {valid})", location)
    try:
        if tag in _TRANSFORM_FIELDS:
            cls, fields = _TRANSFORM_FIELDS[tag]
            return cls(**{name: np.asarray(doc[name], dtype=float) for name in fields})
        if tag == "wavelet":
            kwargs = {
                name: np.asarray(doc[name], dtype=float)
                for name in ("mu_plus", "mu_minus", "omega_plus", "omega_minus")
            }
            if "eta" in doc:
                kwargs["eta"] = float(doc["eta"])
            if "ell_plus" in doc:
                kwargs["ell_plus"] = np.asarray(doc["ell_plus"], dtype=float)
            if "ell_minus" in doc:
                kwargs["ell_minus"] = np.asarray(doc["ell_minus"], dtype=float)
            return Wavelet(**kwargs)
        if tag == "radial_hybrid":
            return RadialHybrid(
                mu=float(doc["mu"]), p=float(doc["p"]),
                q=float(doc["q"]), omega=float(doc["omega"]),
            )
    except KeyError as exc:
        raise ParseError(f"transform '{tag}' is missing field {exc}", location) from exc
    except (InvalidArgumentError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), location) from exc
    raise ParseError(f"unknown transform tag '{tag}' (valid tags: {valid})", location)


def _component_to_dict(comp: ComponentSpec) -> dict:
    doc = {
        "form": comp.form.value,
        "center": _floats(comp.center),
        "offset": float(comp.offset),
        "kappa_plus": _floats(comp.kappa_plus),
        "kappa_minus": _floats(comp.kappa_minus),
        "delta": float(comp.delta),
        "r_ref": float(comp.r_ref),
        "angles": [
            [u, v, psi] for u, v, psi in
            (comp.angle_matrix.to_triples() if comp.angle_matrix is not None else [])
        ],
        "transforms": [_transform_to_dict(t) for t in comp.transform_chain],
    }
    if comp.form is Form.PER_DIRECTION:
        doc["p_plus"] = _floats(comp.p_plus)
        doc["p_minus"] = _floats(comp.p_minus)
    else:
        doc["p"] = float(comp.p)
    return doc


def _component_from_dict(doc: dict, location: str) -> ComponentSpec:
    try:
        form = Form(doc["form"])
        center = np.asarray(doc["center"], dtype=float)
        dim = center.shape[0]
        angle_matrix = None
        triples = doc.get("angles", [])
        if triples:
            angle_matrix = AngleMatrix.from_triples(dim, triples)
        chain = tuple(
            _transform_from_dict(t, f"{location}.transforms[{i}]")
            for i, t in enumerate(doc.get("transforms", []))
        )
        kwargs = dict(
            form=form,
            center=center,
            offset=float(doc["offset"]),
            kappa_plus=np.asarray(doc["kappa_plus"], dtype=float),
            kappa_minus=np.asarray(doc["kappa_minus"], dtype=float),
            delta=float(doc["delta"]),
            r_ref=float(doc["r_ref"]),
            angle_matrix=angle_matrix,
            transform_chain=chain,
        )
        if form is Form.PER_DIRECTION:
            kwargs["p_plus"] = np.asarray(doc["p_plus"], dtype=float)
            kwargs["p_minus"] = np.asarray(doc["p_minus"], dtype=float)
        else:
            kwargs["p"] = float(doc["p"])
        return ComponentSpec(**kwargs)
    except ParseError:
        raise
    except KeyError as exc:
        raise ParseError(f"component is missing field {exc}", location) from exc
    except (InvalidArgumentError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), location) from exc


def to_document(inst: ProblemInstance) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "objective_sense": inst.sense.value,
        "dimension": inst.dimension,
        "overlap_allowed": inst.overlap_allowed,
        "blocks": [
            {
                "indices": list(block.indices),
                "weight": float(block.weight),
                "bounds": [[float(lo), float(hi)] for lo, hi in block.bounds],
                "components": [_component_to_dict(c) for c in block.components],
            }
            for block in inst.blocks
        ],
        "provenance": None if inst.provenance is None else {
            "seed": inst.provenance.seed,
            "generator_version": inst.provenance.generator_version,
            "strata_digest": inst.provenance.strata_digest,
            "rng": inst.provenance.rng,
        },
    }
    return doc


def from_document(doc: dict) -> ProblemInstance:
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schema_version {version!r}; this build supports {SCHEMA_VERSION}"
        )
    try:
        sense = Sense(doc["objective_sense"])
        dimension = int(doc["dimension"])
        overlap_allowed = bool(doc.get("overlap_allowed", False))
        blocks = []
        for j, block_doc in enumerate(doc["blocks"]):
            loc = f"blocks[{j}]"
            try:
                components = tuple(
                    _component_from_dict(c, f"{loc}.components[{k}]")
                    for k, c in enumerate(block_doc["components"])
                )
                blocks.append(BlockSpec(
                    indices=tuple(int(i) for i in block_doc["indices"]),
                    weight=float(block_doc["weight"]),
                    bounds=np.asarray(block_doc["bounds"], dtype=float),
                    components=components,
                ))
            except ParseError:
                raise
            except KeyError as exc:
                raise ParseError(f"block is missing field {exc}", loc) from exc
            except (InvalidArgumentError, TypeError, ValueError) as exc:
                raise ParseError(str(exc), loc) from exc
        prov_doc = doc.get("provenance")
        provenance = None
        if prov_doc is not None:
            provenance = Provenance(
                seed=prov_doc.get("seed"),
                generator_version=prov_doc.get("generator_version"),
                strata_digest=prov_doc.get("strata_digest"),
                rng=prov_doc.get("rng"),
            )
        return ProblemInstance(
            dimension=dimension,
            sense=sense,
            blocks=tuple(blocks),
            overlap_allowed=overlap_allowed,
            provenance=provenance,
        )
    except ParseError:
        raise
    except KeyError as exc:
        raise ParseError(f"document is missing field {exc}") from exc
    except (InvalidArgumentError, TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def serialize(inst: ProblemInstance) -> str:
    return json.dumps(to_document(inst), sort_keys=True, indent=2) + "\n"


def deserialize(document: str) -> ProblemInstance:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return from_document(doc)


# ---------------------------------------------------------------------------
# Validation


@dataclass
class ValidationReport:
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    rotation_residuals: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "errors": self.errors,
            "warnings": self.warnings,
            "rotation_residuals": self.rotation_residuals,
        }


def _warn_range(report, value, low, high, what, low_exclusive=False, high_exclusive=False):
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    below = arr <= low if low_exclusive else arr < low
    above = arr >= high if high_exclusive else arr > high
    if np.any(below | above):
        report.warnings.append(f"{what} outside suggested range [{low}, {high}]")


def _validate_transform(t, where: str, dim: int, report: ValidationReport):
    ranges = defaults.TRANSFORM_PARAMS.get(t.tag, {})

    def warn(name, value, key):
        if key in ranges:
            lo, hi = ranges[key]["suggested_range"]
            _warn_range(report, value, lo, hi, f"{where}: {name}")

    if isinstance(t, AdditivePeriodic):
        warn("mu", np.concatenate([t.mu_plus, t.mu_minus]), "mu")
        warn("gamma", np.concatenate([t.gamma_plus, t.gamma_minus]), "gamma")
        warn("omega", np.concatenate([t.omega_plus, t.omega_minus]), "omega")
    elif isinstance(t, LogSinusoidal):
        warn("mu", np.concatenate([t.mu_plus, t.mu_minus]), "mu")
        warn("omega1", np.concatenate([t.omega1_plus, t.omega1_minus]), "omega1")
        warn("omega2", np.concatenate([t.omega2_plus, t.omega2_minus]), "omega2")
    elif isinstance(t, Wavelet):
        warn("mu", np.concatenate([t.mu_plus, t.mu_minus]), "mu")
        warn("omega", np.concatenate([t.omega_plus, t.omega_minus]), "omega")
        if t.eta is not None:
            warn("eta", t.eta, "eta")
        else:
            warn("ell", np.concatenate([t.ell_plus, t.ell_minus]), "ell")
    elif isinstance(t, TensorInterference):
        warn("mu0", np.concatenate([t.mu0_plus, t.mu0_minus]), "mu0")
        warn("omega", np.concatenate([t.omega_plus, t.omega_minus]), "omega")
        if dim == 1:
            report.warnings.append(
                f"{where}: tensor interference on a 1-dimensional block degenerates "
                "to a pure sinusoidal perturbation"
            )
    elif isinstance(t, RadialHybrid):
        warn("mu", t.mu, "mu")
        warn("p", t.p, "p")
        warn("q", t.q, "q")
        warn("omega", t.omega, "omega")


def validate(inst) -> ValidationReport:
    """Validate an instance (or a raw document dict) against the rules.

    Structural violations that ``ProblemInstance`` construction would
    reject are reported as errors instead of raised, so the CLI can show
    a full report for a broken file.
    """
    report = ValidationReport()
    if isinstance(inst, ProblemInstance):
        doc = to_document(inst)
    elif isinstance(inst, dict):
        doc = inst
    else:
        raise InvalidArgumentError("validate expects a ProblemInstance or a document dict")

    if doc.get("schema_version") != SCHEMA_VERSION:
        report.errors.append(
            f"unsupported schema_version {doc.get('schema_version')!r}"
        )
        return report
    if doc.get("objective_sense") not in ("minimize", "maximize"):
        report.errors.append(f"unknown objective_sense {doc.get('objective_sense')!r}")
    dimension = doc.get("dimension")
    if not isinstance(dimension, int) or dimension < 1:
        report.errors.append(f"dimension must be a positive integer, got {dimension!r}")
        return report
    overlap_allowed = bool(doc.get("overlap_allowed", False))

    blocks = doc.get("blocks", [])
    if not blocks:
        report.errors.append("instance must contain at least one block")
        return report

    covered = []
    for j, block in enumerate(blocks):
        where = f"block {j}"
        indices = [int(i) for i in block.get("indices", [])]
        covered.extend(indices)
        dim = len(indices)
        if dim == 0:
            report.errors.append(f"{where}: empty index set")
            continue
        if len(set(indices)) != dim:
            report.errors.append(f"{where}: duplicate variable indices")
        if any(i < 1 or i > dimension for i in indices):
            report.errors.append(f"{where}: variable index outside 1..{dimension}")
        weight = block.get("weight", 0)
        if not (weight > 0 and math.isfinite(weight)):
            report.errors.append(f"{where}: weight must be strictly positive")
        bounds = np.asarray(block.get("bounds", []), dtype=float)
        if bounds.shape != (dim, 2):
            report.errors.append(f"{where}: bounds must be {dim} (lower, upper) pairs")
            bounds = None
        elif np.any(bounds[:, 0] >= bounds[:, 1]):
            report.errors.append(f"{where}: each lower bound must be below its upper bound")

        components = block.get("components", [])
        if len(components) < 1:
            report.errors.append(f"{where}: block must contain at least one component")
        if len(components) > defaults.LANDSCAPE_PARAMS["components_per_block"]["suggested_range"][1]:
            report.warnings.append(
                f"{where}: {len(components)} components exceeds the suggested maximum of 25"
            )
        for k, comp_doc in enumerate(components):
            cwhere = f"{where} component {k}"
            _validate_component(comp_doc, cwhere, dim, bounds, report, (j, k))

    if set(covered) != set(range(1, dimension + 1)):
        report.errors.append("union of block index sets must equal {1..dimension}")
    if len(covered) != len(set(covered)) and not overlap_allowed:
        report.errors.append("blocks overlap but overlap_allowed is false")
    return report


def _validate_component(doc, where, dim, bounds, report: ValidationReport, key):
    kappa = np.asarray(
        list(doc.get("kappa_plus", [])) + list(doc.get("kappa_minus", [])), dtype=float
    )
    if kappa.size != 2 * dim:
        report.errors.append(f"{where}: kappa vectors must each have length {dim}")
    if np.any(kappa <= 0):
        report.errors.append(f"{where}: anisotropy must be strictly positive")
    else:
        lo, hi = defaults.COMPONENT_PARAMS["kappa"]["suggested_range"]
        _warn_range(report, kappa, lo, hi, f"{where}: kappa")

    form = doc.get("form")
    if form == "per_direction":
        p = np.asarray(list(doc.get("p_plus", [])) + list(doc.get("p_minus", [])), dtype=float)
    elif form == "single_exponent":
        p = np.atleast_1d(np.asarray(doc.get("p", np.nan), dtype=float))
    else:
        report.errors.append(f"{where}: unknown form {form!r}")
        p = np.array([])
    if p.size:
        if np.any(~np.isfinite(p)) or np.any(p <= 0):
            report.errors.append(f"{where}: exponents must be strictly positive")
        else:
            lo, hi = defaults.COMPONENT_PARAMS["p"]["suggested_range"]
            _warn_range(report, p, lo, hi, f"{where}: exponent", low_exclusive=True)

    delta = doc.get("delta", 0)
    if not (isinstance(delta, (int, float)) and delta > 0 and math.isfinite(delta)):
        report.errors.append(f"{where}: delta must be strictly positive")
    else:
        lo, hi = defaults.COMPONENT_PARAMS["delta"]["suggested_range"]
        _warn_range(report, delta, lo, hi, f"{where}: delta")
    r_ref = doc.get("r_ref", 0)
    if not (isinstance(r_ref, (int, float)) and r_ref > 0 and math.isfinite(r_ref)):
        report.errors.append(f"{where}: r_ref must be strictly positive")
    else:
        lo, hi = defaults.COMPONENT_PARAMS["r_ref"]["suggested_range"]
        _warn_range(report, r_ref, lo, hi, f"{where}: r_ref", low_exclusive=True)

    center = np.asarray(doc.get("center", []), dtype=float)
    if center.shape != (dim,):
        report.errors.append(f"{where}: center must have length {dim}")
    elif bounds is not None:
        if np.any(center < bounds[:, 0]) or np.any(center > bounds[:, 1]):
            report.errors.append(f"{where}: center lies outside the block bounds")

    triples = doc.get("angles", [])
    angle_ok = True
    for u, v, psi in triples:
        if not (1 <= u < v <= dim):
            report.errors.append(
                f"{where}: angle entry ({u}, {v}) is not strictly upper-triangular"
            )
            angle_ok = False
        if not (-math.pi <= psi < math.pi):
            report.errors.append(f"{where}: angle ({u}, {v}) outside [-pi, pi)")
            angle_ok = False
    if triples and angle_ok:
        rotation = build_rotation(AngleMatrix.from_triples(dim, triples))
        residual = orthogonality_residual(rotation)
        report.rotation_residuals[f"block {key[0]} component {key[1]}"] = residual
        if residual > 1e-10:
            report.errors.append(
                f"{where}: rotation orthogonality residual {residual:.2e} exceeds 1e-10"
            )

    for i, t_doc in enumerate(doc.get("transforms", [])):
        twhere = f"{where} transform {i}"
        if isinstance(t_doc, dict):
            if t_doc.get("type") == "wavelet" and "eta" in t_doc and (
                "ell_plus" in t_doc or "ell_minus" in t_doc
            ):
                report.errors.append(
                    f"{twhere}: wavelet must use either explicit ell or eta, not both"
                )
                continue
            try:
                t = _transform_from_dict(t_doc, twhere)
            except ParseError as exc:
                report.errors.append(str(exc))
                continue
        else:
            t = t_doc
        _validate_transform(t, twhere, dim, report)


# ---------------------------------------------------------------------------
# Random generation


@dataclass(frozen=True)
class GenerationStrata:
    """Sampling policy for random instances; defaults follow the suggested
    ranges, with Table defaults for quantities the table fixes (weights 1,
    single-block layout is not forced: 1-2 blocks of 2-3 dims)."""

    n_blocks: Tuple[int, int] = (1, 2)
    block_dims: Tuple[int, int] = (2, 3)
    components_per_block: Tuple[int, int] = (1, 5)
    sense: str = "minimize"
    bounds: Tuple[float, float] = (-100.0, 100.0)
    p_range: Tuple[float, float] = (0.2, 1.2)
    delta_range: Tuple[float, float] = (1.0, 1000.0)
    r_ref_range: Tuple[float, float] = (1.0, 100.0)
    kappa_range: Tuple[float, float] = (1.0, 10000.0)  # sampled log-uniformly
    beta_base_range: Tuple[float, float] = (-1000.0, 0.0)
    beta_gap_range: Tuple[float, float] = (0.0, 100.0)
    weight_range: Tuple[float, float] = (1.0, 1.0)
    form_probability_per_direction: float = 0.5
    matched_sign_probability: float = 0.5
    rotation_fraction: float = 0.5
    angle_range: Tuple[float, float] = (-math.pi, math.pi)
    allowed_transforms: Tuple[str, ...] = (
        "additive_periodic", "log_sinusoidal", "wavelet",
        "tensor_interference", "radial_hybrid",
    )
    transform_weights: Optional[Tuple[float, ...]] = None
    chain_length_range: Tuple[int, int] = (0, 3)

    def __post_init__(self):
        def check_range(name, rng, low_ok=None):
            lo, hi = rng
            if lo > hi:
                raise InvalidArgumentError(f"strata: {name} range has lo > hi")
            if low_ok is not None and lo < low_ok:
                raise InvalidArgumentError(f"strata: {name} range must stay above {low_ok}")

        check_range("n_blocks", self.n_blocks, 1)
        check_range("block_dims", self.block_dims, 1)
        check_range("components_per_block", self.components_per_block, 1)
        check_range("p", self.p_range)
        check_range("delta", self.delta_range)
        check_range("r_ref", self.r_ref_range)
        check_range("kappa", self.kappa_range)
        check_range("beta_base", self.beta_base_range)
        check_range("beta_gap", self.beta_gap_range)
        check_range("weight", self.weight_range)
        check_range("chain_length", self.chain_length_range, 0)
        for name in ("p_range", "delta_range", "r_ref_range", "kappa_range", "weight_range"):
            if getattr(self, name)[0] <= 0:
                raise InvalidArgumentError(f"strata: {name} must be strictly positive")
        if self.chain_length_range[1] > 3:
            raise InvalidArgumentError("strata: chain length is capped at 3")
        if self.sense not in ("minimize", "maximize"):
            raise InvalidArgumentError(f"strata: unknown sense {self.sense!r}")
        if not (0 <= self.rotation_fraction <= 1):
            raise InvalidArgumentError("strata: rotation_fraction must lie in [0, 1]")
        unknown = set(self.allowed_transforms) - {
            "additive_periodic", "log_sinusoidal", "wavelet",
            "tensor_interference", "radial_hybrid",
        }
        if unknown:
            raise InvalidArgumentError(f"strata: unknown transforms {sorted(unknown)}")
        if self.transform_weights is not None and len(self.transform_weights) != len(
            self.allowed_transforms
        ):
            raise InvalidArgumentError(
                "strata: transform_weights must match allowed_transforms in length"
            )

    def to_dict(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    @classmethod
    def from_dict(cls, doc: dict) -> "GenerationStrata":
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise InvalidArgumentError(f"strata: unknown fields {sorted(unknown)}")
        kwargs = {}
        for name, value in doc.items():
            if isinstance(value, list):
                value = tuple(value)
            kwargs[name] = value
        return cls(**kwargs)


# Parameter-group subkeys; append, never renumber.
_G_STRUCTURE = 0
_G_CENTERS = 1
_G_OFFSETS = 2
_G_SHAPE = 3
_G_ANGLES = 4
_G_TRANSFORMS = 5
_G_WEIGHTS = 6


def _rng(seed: int, *key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(ss))


def _uniform(rng, lo, hi, size=None):
    if lo == hi:
        return np.full(size, float(lo)) if size is not None else float(lo)
    return rng.uniform(lo, hi, size)


def _log_uniform(rng, lo, hi, size=None):
    if lo == hi:
        return np.full(size, float(lo)) if size is not None else float(lo)
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size))


def _pair(rng, draw, matched):
    plus = draw(rng)
    minus = plus if matched else draw(rng)
    return plus, minus


def _random_transform(rng, tag: str, dim: int, matched: bool):
    params = defaults.TRANSFORM_PARAMS[tag]

    def vec(key):
        lo, hi = params[key]["suggested_range"]
        return _pair(rng, lambda r: r.uniform(lo, hi, dim), matched)

    if tag == "additive_periodic":
        mu_p, mu_m = vec("mu")
        g_p, g_m = vec("gamma")
        w_p, w_m = vec("omega")
        return AdditivePeriodic(mu_p, mu_m, g_p, g_m, w_p, w_m)
    if tag == "log_sinusoidal":
        mu_p, mu_m = vec("mu")
        w1_p, w1_m = vec("omega1")
        w2_p, w2_m = vec("omega2")
        return LogSinusoidal(mu_p, mu_m, w1_p, w1_m, w2_p, w2_m)
    if tag == "wavelet":
        mu_p, mu_m = vec("mu")
        w_p, w_m = vec("omega")
        lo, hi = params["eta"]["suggested_range"]
        return Wavelet(mu_p, mu_m, w_p, w_m, eta=float(rng.uniform(lo, hi)))
    if tag == "tensor_interference":
        mu_p, mu_m = vec("mu0")
        w_p, w_m = vec("omega")
        return TensorInterference(mu_p, mu_m, w_p, w_m)
    if tag == "radial_hybrid":
        preset = defaults.RADIAL_PRESETS[
            "near_uniform" if rng.random() < 0.5 else "widening"
        ]
        mu = float(rng.uniform(*params["mu"]["suggested_range"]))
        p = float(rng.uniform(*params["p"]["suggested_range"]))
        q = float(rng.uniform(*preset["q"]))
        omega = float(rng.uniform(*preset["omega"]))
        return RadialHybrid(mu=mu, p=p, q=q, omega=omega)
    raise InvalidArgumentError(f"unknown transform tag {tag!r}")


def _random_angles(rng, dim: int, fraction: float, angle_range) -> Optional[AngleMatrix]:
    if dim < 2 or fraction == 0.0:
        return None
    angles = np.zeros((dim, dim))
    lo, hi = angle_range
    for u in range(dim - 1):
        for v in range(u + 1, dim):
            if rng.random() < fraction:
                psi = float(rng.uniform(lo, hi))
                if psi >= math.pi:  # keep the canonical half-open interval
                    psi = math.nextafter(math.pi, 0.0)
                angles[u, v] = psi
    mat = AngleMatrix(dim=dim, angles=angles)
    return None if mat.is_identity else mat


def random_instance(seed: int, strata: Optional[GenerationStrata] = None) -> ProblemInstance:
    """Deterministic function of (seed, strata, generator version)."""
    if strata is None:
        strata = GenerationStrata()
    if not isinstance(strata, GenerationStrata):
        raise InvalidArgumentError("strata must be a GenerationStrata")

    rng_struct = _rng(seed, _G_STRUCTURE)
    n_blocks = int(rng_struct.integers(strata.n_blocks[0], strata.n_blocks[1] + 1))
    blocks = []
    next_index = 1
    for j in range(n_blocks):
        dim = int(rng_struct.integers(strata.block_dims[0], strata.block_dims[1] + 1))
        n_comp = int(rng_struct.integers(
            strata.components_per_block[0], strata.components_per_block[1] + 1
        ))
        indices = tuple(range(next_index, next_index + dim))
        next_index += dim
        lo, hi = strata.bounds
        bounds = np.tile([lo, hi], (dim, 1))

        rng_w = _rng(seed, _G_WEIGHTS, j)
        weight = float(_uniform(rng_w, *strata.weight_range))

        rng_off = _rng(seed, _G_OFFSETS, j)
        base = float(_uniform(rng_off, *strata.beta_base_range))
        gaps = np.atleast_1d(_uniform(rng_off, *strata.beta_gap_range, size=n_comp))

        components = []
        for k in range(n_comp):
            rng_shape = _rng(seed, _G_SHAPE, j, k)
            matched = bool(rng_shape.random() < strata.matched_sign_probability)
            per_direction = bool(
                rng_shape.random() < strata.form_probability_per_direction
            )
            kappa_plus = _log_uniform(rng_shape, *strata.kappa_range, size=dim)
            kappa_minus = (
                kappa_plus.copy() if matched
                else _log_uniform(rng_shape, *strata.kappa_range, size=dim)
            )
            delta = float(_uniform(rng_shape, *strata.delta_range))
            r_ref = float(_uniform(rng_shape, *strata.r_ref_range))

            rng_center = _rng(seed, _G_CENTERS, j, k)
            center = rng_center.uniform(bounds[:, 0], bounds[:, 1])

            angle_matrix = _random_angles(
                _rng(seed, _G_ANGLES, j, k), dim,
                strata.rotation_fraction, strata.angle_range,
            )

            rng_t = _rng(seed, _G_TRANSFORMS, j, k)
            lo_len, hi_len = strata.chain_length_range
            chain_len = int(rng_t.integers(lo_len, hi_len + 1))
            chain = []
            if strata.allowed_transforms and chain_len:
                weights = strata.transform_weights
                prob = None
                if weights is not None:
                    prob = np.asarray(weights, dtype=float)
                    prob = prob / prob.sum()
                tags = rng_t.choice(
                    np.array(strata.allowed_transforms, dtype=object),
                    size=chain_len, p=prob,
                )
                chain = [
                    _random_transform(rng_t, str(tag), dim, matched) for tag in tags
                ]

            kwargs = dict(
                center=center,
                offset=base + float(gaps[k]),
                kappa_plus=kappa_plus,
                kappa_minus=kappa_minus,
                delta=delta,
                r_ref=r_ref,
                angle_matrix=angle_matrix,
                transform_chain=tuple(chain),
            )
            if per_direction:
                p_plus = _uniform(rng_shape, *strata.p_range, size=dim)
                p_minus = p_plus.copy() if matched else _uniform(
                    rng_shape, *strata.p_range, size=dim
                )
                components.append(ComponentSpec(
                    form=Form.PER_DIRECTION, p_plus=p_plus, p_minus=p_minus, **kwargs
                ))
            else:
                components.append(ComponentSpec(
                    form=Form.SINGLE_EXPONENT,
                    p=float(_uniform(rng_shape, *strata.p_range)), **kwargs
                ))
        blocks.append(BlockSpec(
            indices=indices, weight=weight, bounds=bounds,
            components=tuple(components),
        ))

    return ProblemInstance(
        dimension=next_index - 1,
        sense=Sense(strata.sense),
        blocks=tuple(blocks),
        overlap_allowed=False,
        provenance=Provenance(
            seed=int(seed),
            generator_version=GENERATOR_VERSION,
            strata_digest=strata.digest(),
            rng=RNG_NAME,
        ),
    )


def instance_family(seed: int, base: ProblemInstance, count: int) -> List[ProblemInstance]:
    """Globally-equivalent variants of ``base``.

    Member 0 is the base itself; members 1..count-1 re-randomize centers,
    shift each block's offsets by a fresh base level (preserving the gap
    pattern), and resample angle values within the same sparsity pattern.
    Every shape parameter (forms, exponents, kappa, delta, r_ref, chains,
    weights, block structure) is carried over untouched.
    """
    if count < 1:
        raise InvalidArgumentError("count must be a positive integer")
    members = [base]
    for m in range(1, count):
        blocks = []
        for j, block in enumerate(base.blocks):
            offsets = np.array([c.offset for c in block.components])
            gaps = offsets - offsets.min()
            rng_off = _rng(seed, _G_OFFSETS, m, j)
            new_base = float(_uniform(rng_off, *GenerationStrata().beta_base_range))
            components = []
            for k, comp in enumerate(block.components):
                rng_center = _rng(seed, _G_CENTERS, m, j, k)
                center = rng_center.uniform(block.bounds[:, 0], block.bounds[:, 1])
                angle_matrix = comp.angle_matrix
                if angle_matrix is not None:
                    rng_angles = _rng(seed, _G_ANGLES, m, j, k)
                    angles = np.zeros_like(angle_matrix.angles)
                    for u, v, _ in angle_matrix.to_triples():
                        psi = float(rng_angles.uniform(-math.pi, math.pi))
                        if psi >= math.pi:
                            psi = math.nextafter(math.pi, 0.0)
                        angles[u - 1, v - 1] = psi
                    angle_matrix = AngleMatrix(dim=angle_matrix.dim, angles=angles)
                components.append(replace(
                    comp,
                    center=center,
                    offset=new_base + float(gaps[k]),
                    angle_matrix=angle_matrix,
                ))
            blocks.append(replace(block, components=tuple(components)))
        members.append(replace(base, blocks=tuple(blocks), provenance=Provenance(
            seed=int(seed),
            generator_version=GENERATOR_VERSION,
            strata_digest=None,
            rng=RNG_NAME,
        )))
    return members


# ---------------------------------------------------------------------------
# Batch evaluation


def _check_points(points, dimension: int) -> np.ndarray:
    rows = list(points)
    for i, row in enumerate(rows):
        if len(row) != dimension:
            raise InvalidArgumentError(
                f"point {i} has dimension {len(row)}, expected {dimension}"
            )
    return np.asarray(rows, dtype=float).reshape(len(rows), dimension)


def batch_evaluate(
    inst, points, parallel: bool = False, max_workers: Optional[int] = None
) -> List[EvalResult]:
    """Order-preserving batch evaluation.

    Points are processed in fixed-size chunks whether or not parallelism
    is requested, so parallel and sequential runs produce bit-identical
    results.
    """
    prepared = inst if isinstance(inst, PreparedInstance) else prepare(inst)
    batch = _check_points(points, prepared.dimension)
    if batch.shape[0] == 0:
        return []
    chunks = [
        batch[start:start + _EVAL_CHUNK]
        for start in range(0, batch.shape[0], _EVAL_CHUNK)
    ]

    def run(chunk):
        result = eval_composite(chunk, prepared)
        return result if isinstance(result, list) else [result]

    if parallel and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(chunk) for chunk in chunks]
    return [item for part in parts for item in part]
