"""Layer 2/3 assembly: min-envelopes of components and block composition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .component import (
    ComponentSpec,
    NeutralizedComponent,
    Sense,
    eval_component,
    neutralize,
)
from .errors import EvaluationOverflowError, InvalidArgumentError

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class BlockSpec:
    """One block: a set of global variable indices, bounds, weight, components."""

    indices: Tuple[int, ...]  # global variable indices, 1-based
    weight: float
    bounds: np.ndarray  # (d_j, 2) lower/upper pairs
    components: Tuple[ComponentSpec, ...]

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if len(indices) == 0:
            raise InvalidArgumentError("block must own at least one variable index")
        if len(set(indices)) != len(indices):
            raise InvalidArgumentError("block indices must be distinct")
        object.__setattr__(self, "indices", indices)
        bounds = np.asarray(self.bounds, dtype=float)
        if bounds.shape != (len(indices), 2):
            raise InvalidArgumentError(
                f"bounds must have shape ({len(indices)}, 2), got {bounds.shape}"
            )
        object.__setattr__(self, "bounds", bounds)
        components = tuple(self.components)
        if not components:
            raise InvalidArgumentError("block must contain at least one component")
        for comp in components:
            if comp.dim != len(indices):
                raise InvalidArgumentError(
                    f"component dim {comp.dim} != block dim {len(indices)}"
                )
        object.__setattr__(self, "components", components)
        if not (self.weight > 0 and np.isfinite(self.weight)):
            raise InvalidArgumentError("block weight must be strictly positive")

    @property
    def dim(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class Provenance:
    seed: Optional[int] = None
    generator_version: Optional[str] = None
    strata_digest: Optional[str] = None
    rng: Optional[str] = None


@dataclass(frozen=True)
class ProblemInstance:
    """Complete, immutable problem definition."""

    dimension: int
    sense: Sense
    blocks: Tuple[BlockSpec, ...]
    overlap_allowed: bool = False
    provenance: Optional[Provenance] = None
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise InvalidArgumentError("instance must contain at least one block")
        object.__setattr__(self, "blocks", blocks)
        covered = []
        for block in blocks:
            covered.extend(block.indices)
        if set(covered) != set(range(1, self.dimension + 1)):
            raise InvalidArgumentError(
                "union of block index sets must equal {1..dimension}"
            )
        if not self.overlap_allowed and len(covered) != len(set(covered)):
            raise InvalidArgumentError(
                "blocks share variable indices but overlap_allowed is false"
            )

    @property
    def has_overlap(self) -> bool:
        total = sum(len(b.indices) for b in self.blocks)
        return total != len({i for b in self.blocks for i in b.indices})


@dataclass(frozen=True)
class EvalResult:
    """Objective value plus per-block attribution."""

    value: float
    per_block: Tuple[Tuple[int, float, int], ...]  # (block id, block value, active component id)


@dataclass(frozen=True)
class PreparedBlock:
    spec: BlockSpec
    components: Tuple[NeutralizedComponent, ...]

    @property
    def dim(self) -> int:
        return self.spec.dim


@dataclass(frozen=True)
class PreparedInstance:
    """An instance with all components neutralized, ready for evaluation."""

    instance: ProblemInstance
    blocks: Tuple[PreparedBlock, ...]

    @property
    def dimension(self) -> int:
        return self.instance.dimension

    @property
    def sense(self) -> Sense:
        return self.instance.sense


def prepare(inst: ProblemInstance) -> PreparedInstance:
    prepared = tuple(
        PreparedBlock(spec=block, components=tuple(neutralize(c) for c in block.components))
        for block in inst.blocks
    )
    return PreparedInstance(instance=inst, blocks=prepared)


def eval_landscape(x_local, block: PreparedBlock, sense: Sense = Sense.MINIMIZE):
    """Lower (min) / upper (max) envelope over the block's components.

    Returns (values, active_ids); scalars for a single (d,) point.  Ties
    are broken toward the lowest component index so attribution is
    deterministic.
    """
    arr = np.asarray(x_local, dtype=float)
    single = arr.ndim == 1
    batch = arr[None, :] if single else arr
    if batch.shape[1] != block.dim:
        raise InvalidArgumentError(
            f"point dimension {batch.shape[1]} != block dimension {block.dim}"
        )
    values = np.empty((len(block.components), batch.shape[0]))
    for k, comp in enumerate(block.components):
        try:
            values[k] = eval_component(batch, comp, sense)
        except EvaluationOverflowError as exc:
            raise EvaluationOverflowError(str(exc), component_id=k) from exc
    if sense is Sense.MINIMIZE:
        active = np.argmin(values, axis=0)
    else:
        active = np.argmax(values, axis=0)
    best = values[active, np.arange(batch.shape[0])]
    if single:
        return float(best[0]), int(active[0])
    return best, active


def _gather(points: np.ndarray, indices: Tuple[int, ...]) -> np.ndarray:
    return points[:, [i - 1 for i in indices]]


def eval_composite(x, prepared: PreparedInstance):
    """Weighted sum of block envelopes; accepts (d,) or (n, d) points.

    Returns one EvalResult for a single point, else a list of them in
    input order.
    """
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 1
    batch = arr[None, :] if single else arr
    if batch.shape[1] != prepared.dimension:
        raise InvalidArgumentError(
            f"point dimension {batch.shape[1]} != instance dimension {prepared.dimension}"
        )
    n = batch.shape[0]
    total = np.zeros(n)
    block_values = []
    block_active = []
    for j, block in enumerate(prepared.blocks):
        sub = _gather(batch, block.spec.indices)
        try:
            values, active = eval_landscape(sub, block, prepared.sense)
        except EvaluationOverflowError as exc:
            raise EvaluationOverflowError(
                str(exc), component_id=exc.component_id, block_id=j
            ) from exc
        total += block.spec.weight * values
        block_values.append(values)
        block_active.append(active)
    results = [
        EvalResult(
            value=float(total[i]),
            per_block=tuple(
                (j, float(block_values[j][i]), int(block_active[j][i]))
                for j in range(len(prepared.blocks))
            ),
        )
        for i in range(n)
    ]
    return results[0] if single else results


def eval_values(x, prepared: PreparedInstance) -> np.ndarray:
    """Objective values only, as a (n,) array; cheaper than eval_composite."""
    arr = np.asarray(x, dtype=float)
    batch = arr[None, :] if arr.ndim == 1 else arr
    if batch.shape[1] != prepared.dimension:
        raise InvalidArgumentError(
            f"point dimension {batch.shape[1]} != instance dimension {prepared.dimension}"
        )
    total = np.zeros(batch.shape[0])
    for block in prepared.blocks:
        sub = _gather(batch, block.spec.indices)
        values, _ = eval_landscape(sub, block, prepared.sense)
        total += block.spec.weight * values
    return total


@dataclass(frozen=True)
class KnownOptimum:
    location: np.ndarray
    value: float
    exactness: str  # "exact" or "lower_bound"
    co_optimal: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()
    # per block: (block id, ids of components tied at the optimal offset)


def known_optimum(inst: ProblemInstance) -> KnownOptimum:
    """Analytic optimum: per block, the component with the best offset.

    For overlapping blocks whose per-block minimizers disagree on shared
    coordinates the assembled value is a bound, not an attained value;
    coordinates written later win in the assembled location.
    """
    location = np.zeros(inst.dimension)
    assigned = {}
    value = 0.0
    exact = True
    ties = []
    for j, block in enumerate(inst.blocks):
        offsets = np.array([c.offset for c in block.components])
        if inst.sense is Sense.MINIMIZE:
            best = float(np.min(offsets))
        else:
            best = float(np.max(offsets))
        tied = tuple(int(k) for k in np.nonzero(offsets == best)[0])
        k_star = tied[0]
        ties.append((j, tied))
        center = block.components[k_star].center
        for local, global_index in enumerate(block.indices):
            if global_index in assigned and assigned[global_index] != center[local]:
                exact = False
            assigned[global_index] = center[local]
            location[global_index - 1] = center[local]
        value += block.weight * best
    return KnownOptimum(
        location=location,
        value=value,
        exactness="exact" if exact else "lower_bound",
        co_optimal=tuple(ties),
    )
