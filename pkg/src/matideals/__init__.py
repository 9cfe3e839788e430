"""Left ideals, idempotent generators and subspace counting in M_n(F_q)."""

from .gf import FieldSpec, field_new, field_from_order
from .matlin import Mat, SubspaceKey, rref, rank, row_space_key, col_space_key, is_idempotent
from .ideals import (
    CanonicalIdempotent,
    CountTable,
    IdealHandle,
    NotCanonical,
    canonical_idempotent_for_subspace,
    check_equivalence_triple,
    count_canonical_recurrence,
    count_idempotent_generators,
    count_independent_tuples,
    count_rank_k_matrices,
    count_table,
    enumerate_canonical_idempotents,
    enumerate_subspaces,
    gaussian_binomial,
    idempotent_generators,
    idempotents_same_ideal,
    left_ideal_contains,
    pivotal_positions,
    same_left_ideal,
    same_right_ideal,
)
from .oracle import LatticeReport, brute_lattice, brute_left_ideal, cross_check

__version__ = "0.1.0"
