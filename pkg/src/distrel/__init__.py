"""Constraint networks as distributed relations, with their satisfaction
contexts and concept lattices."""

from .errors import CapacityError, InputError, ParseError, ValidationError
from .fca import (
    Concept, ConceptLattice, FormalContext, concept_join, concept_meet, concept_of_attributes,
    concept_of_objects, context_direct_image, context_inverse_image, derive_extent,
    derive_intent, enumerate_concepts, extent_closure, intent_hull, validate_context,
)
from .flow import (
    DomainMorphism, compose, direct_image, inverse_image, projection_morphism, validate_morphism,
)
from .interior import (
    containment_conditions, equivalent, interior, isolated_tuples, project_solution, solution_set,
)
from .kernels import BACKEND
from .participation import (
    SubLattice, attribute_concept, full_sublattice, object_concept, participation_context,
    principal_ideal, solution_indicator_context,
)
from .poset import Poset, Violation
from .relational import (
    DEFAULT_CAP, DistributedRelation, Relation, Signature, SortedDomain, Tuple, as_single_sorted,
    natural_join, power, project_tuple, projective_containment, satisfaction_context, satisfies,
    to_context, tuple_leq, validate_network,
)


def data_path(name: str):
    """Path of a bundled fixture such as ``table1.json``."""
    from importlib.resources import files
    return files(__name__) / "data" / name


__version__ = "0.1.0"

__all__ = [
    "__version__",
    "as_single_sorted",
    "attribute_concept",
    "BACKEND",
    "CapacityError",
    "compose",
    "Concept",
    "concept_join",
    "concept_meet",
    "concept_of_attributes",
    "concept_of_objects",
    "ConceptLattice",
    "containment_conditions",
    "context_direct_image",
    "context_inverse_image",
    "data_path",
    "DEFAULT_CAP",
    "derive_extent",
    "derive_intent",
    "direct_image",
    "DistributedRelation",
    "DomainMorphism",
    "enumerate_concepts",
    "equivalent",
    "extent_closure",
    "FormalContext",
    "full_sublattice",
    "InputError",
    "intent_hull",
    "interior",
    "inverse_image",
    "isolated_tuples",
    "natural_join",
    "object_concept",
    "ParseError",
    "participation_context",
    "Poset",
    "power",
    "principal_ideal",
    "project_solution",
    "project_tuple",
    "projection_morphism",
    "projective_containment",
    "Relation",
    "satisfaction_context",
    "satisfies",
    "Signature",
    "solution_indicator_context",
    "solution_set",
    "SortedDomain",
    "SubLattice",
    "to_context",
    "Tuple",
    "tuple_leq",
    "validate_context",
    "validate_morphism",
    "validate_network",
    "ValidationError",
    "Violation",
]
