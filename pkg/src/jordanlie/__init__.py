"""Exact computations with Jordan-Lie inner ideals of finite-dimensional associative algebras."""

from .algebra import Algebra, LeviDecomposition, MatrixUnitSystem, QuotientMap
from .corpus import (
    BimoduleSpec,
    RandomAlgebraParams,
    build_direct_sum,
    build_matrix_algebra,
    build_semidirect,
    build_triangular,
    enumerate_idempotent_pairs,
    example_nr,
    random_algebra,
    standard_corpus,
)
from .errors import (
    DimensionMismatch,
    JordanLieError,
    NotAnIdeal,
    NotAssociative,
    NotInnerIdeal,
    NotRegular,
    NotSplitError,
    ParseError,
    PreconditionError,
    ReductionFailed,
    UndecidableError,
    UnsupportedCharacteristic,
)
from .fileformat import AlgebraFile, emit, emit_algebra, parse, read
from .inner_ideal import (
    IdempotentPair,
    InnerIdealCandidate,
    InnerIdealReport,
    RegularWitness,
    component_split,
    core,
    corner,
    eAf,
    is_inner_ideal,
    is_jordan_lie,
    is_L_perfect,
    is_regular,
    pair_relations,
    recover_pair_semisimple,
    reduce_pair_under,
    regular_violation,
    regular_witness,
)
from .invariants import analyze
from .lie import LieView, bar_image, derived_limit, derived_member, is_quasi_semisimple, quasi_levi, same_bar
from .reduction import (
    ReductionResult,
    SplitWitness,
    bar_minimal_reduce,
    is_bar_minimal,
    lift_idempotent,
    lift_strict_pair,
    split_witness,
)
from .scalars import QQ, FieldSpec, Subspace, canonicalize, kernel, solve, span

__version__ = "0.1.0"
