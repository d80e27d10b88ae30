"""Exact computations in the Motzkin monoid Mo_n."""
from ._backend import BACKEND
from .cells import (
    CellDecomposition,
    GramMatrix,
    TruncatedMonoid,
    apex_table,
    connectedness,
    consecutive_submatrix,
    decompose,
    faith_lower_bound,
    gap,
    gram_matrix,
    is_left_connected,
    is_null_connected,
    is_right_connected,
    simple_dimension,
    ssdim,
    ssgap,
    truncate,
)
from .combinatorics import (
    lcell_size,
    lcell_size_binomial_form,
    motzkin_number,
    nth_root_curve,
    peak_t,
    ratio_curves,
    submatrix_bound,
)
from .diagram import (
    CompositionResult,
    Diagram,
    DiagramError,
    HalfDiagram,
    compose,
    enumerate_halves,
    enumerate_jcell,
    enumerate_monoid,
    factorize,
    generator,
    identity,
    is_idempotent,
    is_idempotent_structural,
    make_half,
    product,
    star,
    tensor,
    through_count,
)
from .linalg import GF2, Q, FieldSpec, Matrix01, kernel_vector, rank

__version__ = "0.1.0"
