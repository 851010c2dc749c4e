"""Group-valued persistence diagrams of constructible one-parameter modules."""

from .backends import (FieldMorphism, FieldObject, FinAbMorphism, FinAbObject, classify, compose,
                       identity, image_class, limit_pair, smith_normal_form)
from .bottleneck import (Matching, bottleneck_distance, bottleneck_oracle, matching_norm,
                         validate_matching)
from .diagram import (Interval, PersistenceDiagram, box_sum, corner_sum, injectivity_radius,
                      is_positive, mobius_inversion, rank_from_diagram)
from .errors import (BackendMismatchError, CompositionError, DomainError, GrodiagError,
                     IngestionError, OrderError, PreconditionError, UnsupportedBackendError,
                     ValidationError)
from .grocat import (DIM, FINAB, VECT, GeneratorKey, GroupElement, add, dim, negate, partial_leq,
                     primes, zero)
from .interleave import (InterleavingData, interleaving_from_functions, interpolate,
                         verify_interleaving)
from .pipeline import FilteredComplex, Simplex, classical_diagram, homology_module
from .pmodule import (ConstructibleModule, check_constructible, evaluate, evaluate_map,
                      interval_module, module, rank_function, zero_module)

__version__ = "0.1.0"

__all__ = [
    "FieldMorphism",
    "FieldObject",
    "FinAbMorphism",
    "FinAbObject",
    "classify",
    "compose",
    "identity",
    "image_class",
    "limit_pair",
    "smith_normal_form",
    "Matching",
    "bottleneck_distance",
    "bottleneck_oracle",
    "matching_norm",
    "validate_matching",
    "Interval",
    "PersistenceDiagram",
    "box_sum",
    "corner_sum",
    "injectivity_radius",
    "is_positive",
    "mobius_inversion",
    "rank_from_diagram",
    "BackendMismatchError",
    "CompositionError",
    "DomainError",
    "GrodiagError",
    "IngestionError",
    "OrderError",
    "PreconditionError",
    "UnsupportedBackendError",
    "ValidationError",
    "DIM",
    "FINAB",
    "VECT",
    "GeneratorKey",
    "GroupElement",
    "add",
    "dim",
    "negate",
    "partial_leq",
    "primes",
    "zero",
    "InterleavingData",
    "interleaving_from_functions",
    "interpolate",
    "verify_interleaving",
    "FilteredComplex",
    "Simplex",
    "classical_diagram",
    "homology_module",
    "ConstructibleModule",
    "check_constructible",
    "evaluate",
    "evaluate_map",
    "interval_module",
    "module",
    "rank_function",
    "zero_module",
]
