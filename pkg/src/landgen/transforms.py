"""Center- and curvature-preserving warps of internal coordinates.

Three element-wise operators (additive periodic, log-sinusoidal, wavelet)
act per coordinate; two coupling operators (tensor interference, radial
hybrid) mix coordinates.  All map 0 to 0 so component centers survive any
chain.  Directional parameters come in +/- pairs selected by the sign of
the coordinate; the sign of exactly zero selects the "+" set (the
perturbation vanishes there anyway).

Every ``apply`` accepts a (n, d) batch of points or a single (d,) vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import InvalidArgumentError

# Fixed numerical-stability constant; deliberately not configurable.
EPSILON = 1e-12


def _as_vector(value, dim: int, name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    if arr.shape != (dim,):
        raise InvalidArgumentError(f"{name} must have length {dim}, got shape {arr.shape}")
    return arr


def _require_positive(arr: np.ndarray, name: str):
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be strictly positive and finite")


def _require_nonnegative(arr: np.ndarray, name: str):
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be nonnegative and finite")


def _pick(a: np.ndarray, plus: np.ndarray, minus: np.ndarray) -> np.ndarray:
    """Direction-specific parameter selection; a >= 0 picks the "+" set."""
    return np.where(a >= 0, plus, minus)


def _batched(a) -> tuple[np.ndarray, bool]:
    arr = np.asarray(a, dtype=float)
    if arr.ndim == 1:
        return arr[None, :], True
    if arr.ndim == 2:
        return arr, False
    raise InvalidArgumentError(f"expected a (d,) or (n, d) array, got ndim={arr.ndim}")


class _TransformBase:
    tag: str = ""

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def _check_dim(self, a: np.ndarray):
        if a.shape[1] != self.dim:
            raise InvalidArgumentError(
                f"{self.tag}: point dimension {a.shape[1]} != parameter dimension {self.dim}"
            )

    def apply(self, a):
        batch, single = _batched(a)
        self._check_dim(batch)
        out = self._apply(batch)
        return out[0] if single else out

    def _apply(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class AdditivePeriodic(_TransformBase):
    """Sinusoidal ripples under a saturating exponential envelope."""

    mu_plus: np.ndarray
    mu_minus: np.ndarray
    gamma_plus: np.ndarray
    gamma_minus: np.ndarray
    omega_plus: np.ndarray
    omega_minus: np.ndarray

    tag = "additive_periodic"

    def __post_init__(self):
        dim = np.atleast_1d(np.asarray(self.mu_plus)).shape[0]
        for name in ("mu_plus", "mu_minus", "gamma_plus", "gamma_minus", "omega_plus", "omega_minus"):
            object.__setattr__(self, name, _as_vector(getattr(self, name), dim, name))
        _require_nonnegative(self.mu_plus, "mu_plus")
        _require_nonnegative(self.mu_minus, "mu_minus")
        _require_positive(self.gamma_plus, "gamma_plus")
        _require_positive(self.gamma_minus, "gamma_minus")
        _require_positive(self.omega_plus, "omega_plus")
        _require_positive(self.omega_minus, "omega_minus")

    @property
    def dim(self) -> int:
        return self.mu_plus.shape[0]

    def _apply(self, a: np.ndarray) -> np.ndarray:
        mu = _pick(a, self.mu_plus, self.mu_minus)
        gamma = _pick(a, self.gamma_plus, self.gamma_minus)
        omega = _pick(a, self.omega_plus, self.omega_minus)
        t = np.abs(a)
        return a + mu * a * (1.0 - np.exp(-gamma * t)) * np.sin(omega * t)


@dataclass(frozen=True)
class LogSinusoidal(_TransformBase):
    """Two-frequency sinusoidal phase modulation in log-space."""

    mu_plus: np.ndarray
    mu_minus: np.ndarray
    omega1_plus: np.ndarray
    omega1_minus: np.ndarray
    omega2_plus: np.ndarray
    omega2_minus: np.ndarray

    tag = "log_sinusoidal"

    def __post_init__(self):
        dim = np.atleast_1d(np.asarray(self.mu_plus)).shape[0]
        for name in ("mu_plus", "mu_minus", "omega1_plus", "omega1_minus", "omega2_plus", "omega2_minus"):
            object.__setattr__(self, name, _as_vector(getattr(self, name), dim, name))
        _require_nonnegative(self.mu_plus, "mu_plus")
        _require_nonnegative(self.mu_minus, "mu_minus")
        _require_positive(self.omega1_plus, "omega1_plus")
        _require_positive(self.omega1_minus, "omega1_minus")
        _require_positive(self.omega2_plus, "omega2_plus")
        _require_positive(self.omega2_minus, "omega2_minus")

    @property
    def dim(self) -> int:
        return self.mu_plus.shape[0]

    def _apply(self, a: np.ndarray) -> np.ndarray:
        mu = _pick(a, self.mu_plus, self.mu_minus)
        w1 = _pick(a, self.omega1_plus, self.omega1_minus)
        w2 = _pick(a, self.omega2_plus, self.omega2_minus)
        logt = np.log(np.abs(a) + EPSILON)
        warped = np.exp(logt + mu * (np.sin(w1 * logt) + np.sin(w2 * logt)))
        return np.sign(a) * warped


@dataclass(frozen=True)
class Wavelet(_TransformBase):
    """Gaussian-windowed sinusoidal carrier applied as an odd lift.

    The envelope length is either given explicitly per direction or
    derived from a component-level extent scale eta as eta / omega;
    exactly one of the two modes must be chosen.
    """

    mu_plus: np.ndarray
    mu_minus: np.ndarray
    omega_plus: np.ndarray
    omega_minus: np.ndarray
    ell_plus: Optional[np.ndarray] = None
    ell_minus: Optional[np.ndarray] = None
    eta: Optional[float] = None

    tag = "wavelet"

    def __post_init__(self):
        dim = np.atleast_1d(np.asarray(self.mu_plus)).shape[0]
        for name in ("mu_plus", "mu_minus", "omega_plus", "omega_minus"):
            object.__setattr__(self, name, _as_vector(getattr(self, name), dim, name))
        _require_nonnegative(self.mu_plus, "mu_plus")
        _require_nonnegative(self.mu_minus, "mu_minus")
        _require_positive(self.omega_plus, "omega_plus")
        _require_positive(self.omega_minus, "omega_minus")
        explicit = self.ell_plus is not None or self.ell_minus is not None
        if explicit and self.eta is not None:
            raise InvalidArgumentError("wavelet: give either explicit ell or eta, not both")
        if explicit:
            if self.ell_plus is None or self.ell_minus is None:
                raise InvalidArgumentError("wavelet: explicit mode needs both ell_plus and ell_minus")
            object.__setattr__(self, "ell_plus", _as_vector(self.ell_plus, dim, "ell_plus"))
            object.__setattr__(self, "ell_minus", _as_vector(self.ell_minus, dim, "ell_minus"))
            _require_positive(self.ell_plus, "ell_plus")
            _require_positive(self.ell_minus, "ell_minus")
        else:
            if self.eta is None:
                raise InvalidArgumentError("wavelet: give either explicit ell or eta")
            if not (self.eta > 0 and np.isfinite(self.eta)):
                raise InvalidArgumentError("wavelet: eta must be strictly positive")
            object.__setattr__(self, "eta", float(self.eta))

    @property
    def dim(self) -> int:
        return self.mu_plus.shape[0]

    def resolved_ell(self) -> tuple[np.ndarray, np.ndarray]:
        if self.ell_plus is not None:
            return self.ell_plus, self.ell_minus
        return self.eta / self.omega_plus, self.eta / self.omega_minus

    def _apply(self, a: np.ndarray) -> np.ndarray:
        ell_plus, ell_minus = self.resolved_ell()
        mu = _pick(a, self.mu_plus, self.mu_minus)
        omega = _pick(a, self.omega_plus, self.omega_minus)
        ell = _pick(a, ell_plus, ell_minus)
        t = np.abs(a)
        u = t / ell
        envelope = u * u * np.exp(-u * u) * np.sin(omega * t - np.pi / 2)
        return a + mu * envelope * a / (t + EPSILON)


@dataclass(frozen=True)
class TensorInterference(_TransformBase):
    """Odd sinusoid per coordinate gated by sin^2 interference of the others.

    The stored amplitude mu0 is dimension-independent; the effective
    amplitude mu0 * 2^(d-1) is computed at evaluation and never stored.
    With d = 1 the gate product is empty (== 1) and the operator
    degenerates to a pure sinusoidal perturbation.
    """

    mu0_plus: np.ndarray
    mu0_minus: np.ndarray
    omega_plus: np.ndarray
    omega_minus: np.ndarray

    tag = "tensor_interference"

    def __post_init__(self):
        dim = np.atleast_1d(np.asarray(self.mu0_plus)).shape[0]
        for name in ("mu0_plus", "mu0_minus", "omega_plus", "omega_minus"):
            object.__setattr__(self, name, _as_vector(getattr(self, name), dim, name))
        _require_nonnegative(self.mu0_plus, "mu0_plus")
        _require_nonnegative(self.mu0_minus, "mu0_minus")
        _require_positive(self.omega_plus, "omega_plus")
        _require_positive(self.omega_minus, "omega_minus")

    @property
    def dim(self) -> int:
        return self.mu0_plus.shape[0]

    def gate(self, a) -> np.ndarray:
        """Leave-one-out interference product, one column per coordinate."""
        batch, single = _batched(a)
        self._check_dim(batch)
        omega = _pick(batch, self.omega_plus, self.omega_minus)
        s = np.sin(omega * batch) ** 2
        d = self.dim
        gate = np.empty_like(batch)
        for i in range(d):
            others = np.concatenate([s[:, :i], s[:, i + 1:]], axis=1)
            gate[:, i] = others.prod(axis=1) if d > 1 else 1.0
        return gate[0] if single else gate

    def _apply(self, a: np.ndarray) -> np.ndarray:
        mu = _pick(a, self.mu0_plus, self.mu0_minus) * 2.0 ** (self.dim - 1)
        omega = _pick(a, self.omega_plus, self.omega_minus)
        return a + mu * np.sin(omega * a) * self.gate(a)


@dataclass(frozen=True)
class RadialHybrid(_TransformBase):
    """Isotropic radius-dependent modulation producing concentric rings."""

    mu: float
    p: float
    q: float
    omega: float

    tag = "radial_hybrid"

    def __post_init__(self):
        if not (self.mu >= 0 and np.isfinite(self.mu)):
            raise InvalidArgumentError("radial_hybrid: mu must be nonnegative")
        if not (0 < self.p < 1):
            raise InvalidArgumentError("radial_hybrid: p must lie in (0, 1)")
        if not (self.q > 0 and np.isfinite(self.q)):
            raise InvalidArgumentError("radial_hybrid: q must be strictly positive")
        if not (self.omega > 0 and np.isfinite(self.omega)):
            raise InvalidArgumentError("radial_hybrid: omega must be strictly positive")

    @property
    def dim(self) -> int:
        # Radial operators are dimension-agnostic.
        return -1

    def _check_dim(self, a):
        pass

    def _apply(self, a: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(a, axis=1, keepdims=True)
        # r ** p with r = 0 handled by the sine factor vanishing faster.
        with np.errstate(divide="ignore"):
            carrier = np.where(r > 0, r ** self.p * np.sin(self.omega * r ** self.q), 0.0)
        return a + self.mu * carrier * a / (r + EPSILON)


TransformSpec = Union[AdditivePeriodic, LogSinusoidal, Wavelet, TensorInterference, RadialHybrid]

TRANSFORM_TYPES = {
    cls.tag: cls
    for cls in (AdditivePeriodic, LogSinusoidal, Wavelet, TensorInterference, RadialHybrid)
}


def apply_chain(a, chain) -> np.ndarray:
    """Apply transforms in list order: the first element acts innermost."""
    batch, single = _batched(a)
    out = batch
    for transform in chain:
        out = transform.apply(out)
    return out[0] if single else out


def apply_additive_periodic(a, t: AdditivePeriodic):
    return t.apply(a)


def apply_log_sinusoidal(a, t: LogSinusoidal):
    return t.apply(a)


def apply_wavelet(a, t: Wavelet):
    return t.apply(a)


def apply_tensor_interference(a, t: TensorInterference):
    return t.apply(a)


def apply_radial_hybrid(a, t: RadialHybrid):
    return t.apply(a)
