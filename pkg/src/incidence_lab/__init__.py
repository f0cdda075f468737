"""Incidence rings of finite relations, their group gradings, grading sets and compressions."""

from .compression import (
    CompressionMap,
    SplitResult,
    compressions_isomorphic,
    graded_embedding,
    induce_hom_through,
    split_clasps,
    transport_grading_set,
    verify_compression,
)
from .errors import BudgetExceeded, IncidenceLabError, InputError, ValidationError
from .grading import (
    InducedGrading,
    RelationHomomorphism,
    decompose,
    extract_homomorphism,
    induce_grading,
    truncated_naturals_demo,
    verify_component_closure,
    verify_homomorphism,
)
from .gradingsets import (
    ExtensionSolver,
    enumerate_homomorphisms,
    grading_set_verdict,
    hasse_extension,
    is_essential,
    is_extendible,
    is_grading_set,
    jones_lift,
    search_grading_set,
)
from .groups import CayleyTable, InfiniteCyclic, by_name, cyclic
from .relation import (
    FiniteRelation,
    clasps,
    crosscuts,
    hasse_arrows,
    interval,
    is_balanced,
    is_minimally_connected,
    is_partial_order,
    is_preorder,
    is_stable,
    min_crosscut_length,
    paired_quotient,
    transitive_triples,
)
from .ring import (
    Integers,
    IntegersMod,
    Rationals,
    RingElement,
    identity_e,
    standard_unit,
    unit_associativity_oracle,
)

__version__ = "0.1.0"
