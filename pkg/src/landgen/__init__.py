"""Configurable benchmark-landscape generator for continuous optimization."""

from .component import (
    ComponentSpec,
    Form,
    NeutralizedComponent,
    Sense,
    eval_component,
    eval_form1,
    eval_form2,
    internal_coords,
    neutralize,
    neutralize_form1,
    neutralize_form2,
)
from .errors import EvaluationOverflowError, InvalidArgumentError, LandgenError, ParseError, SchemaVersionError
from .instance import (
    GENERATOR_VERSION,
    SCHEMA_VERSION,
    GenerationStrata,
    ValidationReport,
    batch_evaluate,
    deserialize,
    from_document,
    instance_family,
    random_instance,
    serialize,
    to_document,
    validate,
)
from .landscape import (
    BlockSpec,
    EvalResult,
    KnownOptimum,
    PreparedInstance,
    ProblemInstance,
    Provenance,
    eval_composite,
    eval_landscape,
    eval_values,
    known_optimum,
    prepare,
)
from .rotation import AngleMatrix, build_rotation, givens_matrix, orthogonality_residual
from .transforms import (
    EPSILON,
    AdditivePeriodic,
    LogSinusoidal,
    RadialHybrid,
    TensorInterference,
    TransformSpec,
    Wavelet,
    apply_chain,
)

__version__ = "0.1.0"
