"""Rough sets of arbitrary binary relations, their completion and its negations."""

from .approximation import ApproxSpace, Direction, is_definable, lower, upper
from .bz import (
    BZReport, NegOperator, PBZStructure, all_bz_negations, check_bz_axioms,
    enumerate_pbz_structures, extending_equivalences, neg_from_equivalence,
    neg_from_subortholattice, pbz_star_check, stone_analysis, trivial_neg,
)
from .completion import (
    DMLattice, FiniteLattice, build_dm, dm_matches_oracle, kleene_neg,
    lattice_isomorphic, macneille_oracle,
)
from .documents import RelationDocument, ReportDocument
from .errors import (
    CapExceeded, NotAnEquivalence, PreconditionError, RoughDMError,
    TheoremViolation, UniverseMismatch,
)
from .harness import mine, run_theorem_suite
from .kleene import center, complemented_mask, is_sharp, sharp_criterion
from .relations import Partition, Relation, Universe, classify, equivalence_closure
from .rough import RoughPair, build_a_family, build_rs, exact_family, rs_is_lattice

__version__ = "0.1.0"
