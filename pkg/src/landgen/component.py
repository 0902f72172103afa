"""Component functions: two basin forms with rise neutralization.

A component is a basin centered at c with value beta at the center.  The
neutralizing factors rho are computed so that the basin rises by exactly
delta at the reference radius r_ref regardless of the chosen exponents
and anisotropy, which keeps shape and scale independent when several
components compete under the min operator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import EvaluationOverflowError, InvalidArgumentError
from .rotation import AngleMatrix, build_rotation
from .transforms import TransformSpec, apply_chain, _pick


class Form(enum.Enum):
    PER_DIRECTION = "per_direction"
    SINGLE_EXPONENT = "single_exponent"


class Sense(enum.Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


def _vec(value, dim, name):
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    if arr.shape != (dim,):
        raise InvalidArgumentError(f"{name} must have length {dim}, got shape {arr.shape}")
    return arr


def _positive(value, name):
    arr = np.asarray(value, dtype=float)
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be strictly positive and finite")


@dataclass(frozen=True)
class ComponentSpec:
    """All user-facing parameters of one component.

    ``p_plus``/``p_minus`` apply to the per-direction form; ``p`` applies
    to the single-exponent form.  Exactly the fields for the selected
    form are consulted.
    """

    form: Form
    center: np.ndarray
    offset: float
    kappa_plus: np.ndarray
    kappa_minus: np.ndarray
    delta: float
    r_ref: float
    angle_matrix: Optional[AngleMatrix] = None
    transform_chain: tuple = ()
    p_plus: Optional[np.ndarray] = None
    p_minus: Optional[np.ndarray] = None
    p: Optional[float] = None

    def __post_init__(self):
        center = np.atleast_1d(np.asarray(self.center, dtype=float))
        object.__setattr__(self, "center", center)
        d = center.shape[0]
        object.__setattr__(self, "kappa_plus", _vec(self.kappa_plus, d, "kappa_plus"))
        object.__setattr__(self, "kappa_minus", _vec(self.kappa_minus, d, "kappa_minus"))
        _positive(self.kappa_plus, "kappa_plus")
        _positive(self.kappa_minus, "kappa_minus")
        _positive(self.delta, "delta")
        _positive(self.r_ref, "r_ref")
        if self.form is Form.PER_DIRECTION:
            if self.p_plus is None or self.p_minus is None:
                raise InvalidArgumentError("per-direction form needs p_plus and p_minus")
            object.__setattr__(self, "p_plus", _vec(self.p_plus, d, "p_plus"))
            object.__setattr__(self, "p_minus", _vec(self.p_minus, d, "p_minus"))
            _positive(self.p_plus, "p_plus")
            _positive(self.p_minus, "p_minus")
        elif self.form is Form.SINGLE_EXPONENT:
            if self.p is None:
                raise InvalidArgumentError("single-exponent form needs p")
            _positive(self.p, "p")
        else:
            raise InvalidArgumentError(f"unknown form {self.form!r}")
        if self.angle_matrix is not None and self.angle_matrix.dim != d:
            raise InvalidArgumentError(
                f"angle matrix dim {self.angle_matrix.dim} != component dim {d}"
            )
        object.__setattr__(self, "transform_chain", tuple(self.transform_chain))

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    @property
    def kappa_bar_per_dim(self) -> np.ndarray:
        return 0.5 * (self.kappa_plus + self.kappa_minus)

    @property
    def kappa_bar(self) -> float:
        return float(np.mean(self.kappa_bar_per_dim))


@dataclass(frozen=True)
class NeutralizedComponent:
    """A component with its rotation and rho factors precomputed."""

    spec: ComponentSpec
    rotation: Optional[np.ndarray]  # None means identity (all-zero angles)
    rho_plus: Optional[np.ndarray] = None
    rho_minus: Optional[np.ndarray] = None
    rho: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.spec.dim


def neutralize(spec: ComponentSpec) -> NeutralizedComponent:
    if spec.form is Form.PER_DIRECTION:
        return neutralize_form1(spec)
    return neutralize_form2(spec)


def _rotation_of(spec: ComponentSpec):
    if spec.angle_matrix is None or spec.angle_matrix.is_identity:
        return None
    return build_rotation(spec.angle_matrix)


def neutralize_form1(spec: ComponentSpec) -> NeutralizedComponent:
    """Per-term rho so that each dimension contributes delta/d at r_ref."""
    if spec.form is not Form.PER_DIRECTION:
        raise InvalidArgumentError("neutralize_form1 requires the per-direction form")
    share = spec.delta / spec.dim
    kb = spec.kappa_bar
    rho_plus = share / (kb * spec.r_ref ** (2.0 * spec.p_plus))
    rho_minus = share / (kb * spec.r_ref ** (2.0 * spec.p_minus))
    if not (np.all(np.isfinite(rho_plus)) and np.all(np.isfinite(rho_minus))):
        raise InvalidArgumentError("neutralization produced non-finite rho; check delta/r_ref/p")
    return NeutralizedComponent(
        spec=spec, rotation=_rotation_of(spec), rho_plus=rho_plus, rho_minus=rho_minus
    )


def neutralize_form2(spec: ComponentSpec) -> NeutralizedComponent:
    """Single rho so that the powered sum rises by delta at r_ref."""
    if spec.form is not Form.SINGLE_EXPONENT:
        raise InvalidArgumentError("neutralize_form2 requires the single-exponent form")
    s_star = spec.r_ref ** 2 * np.sum(spec.kappa_bar_per_dim ** (1.0 / spec.p))
    rho = spec.delta / s_star ** spec.p
    if not np.isfinite(rho) or rho <= 0:
        raise InvalidArgumentError("neutralization produced non-finite rho; check delta/r_ref/p")
    return NeutralizedComponent(spec=spec, rotation=_rotation_of(spec), rho=float(rho))


def internal_coords(x, comp: NeutralizedComponent) -> np.ndarray:
    """Transformed, rotated, centered coordinates; accepts (d,) or (n, d)."""
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 1
    batch = arr[None, :] if single else arr
    if batch.shape[1] != comp.dim:
        raise InvalidArgumentError(
            f"point dimension {batch.shape[1]} != component dimension {comp.dim}"
        )
    a = batch - comp.spec.center
    if comp.rotation is not None:
        a = a @ comp.rotation.T
    z = apply_chain(a, comp.spec.transform_chain)
    return z[0] if single else z


def _abs_pow(z: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    """|z| ** e via exp(e * log|z|), guarded at z = 0."""
    t = np.abs(z)
    with np.errstate(divide="ignore", over="ignore"):
        out = np.where(t > 0, np.exp(exponent * np.log(np.where(t > 0, t, 1.0))), 0.0)
    return out


def _check_finite(values: np.ndarray):
    if not np.all(np.isfinite(values)):
        raise EvaluationOverflowError("component evaluation produced a non-finite value")


def eval_form1(x, comp: NeutralizedComponent, sense: Sense = Sense.MINIMIZE):
    """Per-direction form; returns a scalar for (d,) input, (n,) for (n, d)."""
    if comp.rho_plus is None:
        raise InvalidArgumentError("component was not neutralized for the per-direction form")
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 1
    z = internal_coords(arr if not single else arr[None, :], comp)
    spec = comp.spec
    rho = _pick(z, comp.rho_plus, comp.rho_minus)
    kappa = _pick(z, spec.kappa_plus, spec.kappa_minus)
    p = _pick(z, spec.p_plus, spec.p_minus)
    powered = np.sum(rho * kappa * _abs_pow(z, 2.0 * p), axis=1)
    _check_finite(powered)
    values = spec.offset + powered if sense is Sense.MINIMIZE else spec.offset - powered
    return float(values[0]) if single else values


def eval_form2(x, comp: NeutralizedComponent, sense: Sense = Sense.MINIMIZE):
    """Single-exponent form; returns a scalar for (d,) input, (n,) for (n, d)."""
    if comp.rho is None:
        raise InvalidArgumentError("component was not neutralized for the single-exponent form")
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 1
    z = internal_coords(arr if not single else arr[None, :], comp)
    spec = comp.spec
    kappa = _pick(z, spec.kappa_plus, spec.kappa_minus)
    inner = np.sum(kappa ** (1.0 / spec.p) * z * z, axis=1)
    with np.errstate(over="ignore"):
        powered = comp.rho * _abs_pow(inner, np.asarray(spec.p))
    _check_finite(powered)
    values = spec.offset + powered if sense is Sense.MINIMIZE else spec.offset - powered
    return float(values[0]) if single else values


def eval_component(x, comp: NeutralizedComponent, sense: Sense = Sense.MINIMIZE):
    if comp.spec.form is Form.PER_DIRECTION:
        return eval_form1(x, comp, sense)
    return eval_form2(x, comp, sense)
