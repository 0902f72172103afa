"""Orthogonal rotation matrices built from upper-triangular angle matrices.

Rotations are assembled as an ordered product of Givens plane rotations:
the outer loop runs over the first axis u = 1..d-1, the inner loop over
v = u+1..d, and each nonzero angle multiplies the accumulator on the
right.  The order matters (plane rotations do not commute), so it is
fixed here and pinned by tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError

# Maximum allowed deviation of R @ R.T from the identity.
ORTHOGONALITY_TOL = 1e-10


@dataclass(frozen=True)
class AngleMatrix:
    """Strictly upper-triangular matrix of rotation angles in radians.

    Indices are 1-based in the file format and in ``givens_matrix``;
    internally the array is a plain 0-based (dim, dim) float array.
    """

    dim: int
    angles: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidArgumentError(f"dim must be positive, got {self.dim}")
        angles = np.asarray(self.angles, dtype=float)
        if angles.shape != (self.dim, self.dim):
            raise InvalidArgumentError(
                f"angles must have shape ({self.dim}, {self.dim}), got {angles.shape}"
            )
        if np.any(np.tril(angles) != 0.0):
            raise InvalidArgumentError("angles must be strictly upper-triangular")
        nonzero = angles[angles != 0.0]
        if nonzero.size and (np.any(nonzero < -np.pi) or np.any(nonzero >= np.pi)):
            raise InvalidArgumentError("angles must lie in [-pi, pi)")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def zero(cls, dim: int) -> "AngleMatrix":
        return cls(dim=dim, angles=np.zeros((dim, dim)))

    @classmethod
    def from_triples(cls, dim: int, triples) -> "AngleMatrix":
        """Build from a sparse list of (u, v, angle) triples, 1-based."""
        angles = np.zeros((dim, dim))
        for u, v, psi in triples:
            if not (1 <= u < v <= dim):
                raise InvalidArgumentError(
                    f"angle indices must satisfy 1 <= u < v <= dim, got ({u}, {v})"
                )
            angles[u - 1, v - 1] = psi
        return cls(dim=dim, angles=angles)

    def to_triples(self):
        """Sparse (u, v, angle) triples, 1-based, row-major order."""
        us, vs = np.nonzero(self.angles)
        return [(int(u) + 1, int(v) + 1, float(self.angles[u, v])) for u, v in zip(us, vs)]

    @property
    def is_identity(self) -> bool:
        return not np.any(self.angles)


def givens_matrix(dim: int, u: int, v: int, psi: float) -> np.ndarray:
    """Plane rotation by ``psi`` in the (u, v) coordinate plane, 1-based."""
    if not (1 <= u < v <= dim):
        raise InvalidArgumentError(
            f"indices must satisfy 1 <= u < v <= dim, got u={u}, v={v}, dim={dim}"
        )
    g = np.eye(dim)
    c, s = np.cos(psi), np.sin(psi)
    g[u - 1, u - 1] = c
    g[v - 1, v - 1] = c
    g[u - 1, v - 1] = -s
    g[v - 1, u - 1] = s
    return g


def build_rotation(psi: AngleMatrix) -> np.ndarray:
    """Accumulate plane rotations for every nonzero angle in fixed order."""
    d = psi.dim
    r = np.eye(d)
    for u in range(1, d):
        for v in range(u + 1, d + 1):
            angle = psi.angles[u - 1, v - 1]
            if angle != 0.0:
                r = r @ givens_matrix(d, u, v, angle)
    return r


def orthogonality_residual(r: np.ndarray) -> float:
    """Max-norm deviation of R @ R.T from the identity."""
    d = r.shape[0]
    return float(np.max(np.abs(r @ r.T - np.eye(d))))
