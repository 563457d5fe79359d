"""Braid-group representations from anyon data, their link invariants, and contextuality analysis."""

from .braid import (
    BraidParseError,
    BraidRep,
    BraidWord,
    apply_word,
    build_rep,
    lie_closure,
    lie_closure_dim,
    parse_braid_word,
    verify_braid_relations,
    verify_unitarity,
)
from .category import (
    CategoryData,
    CategoryError,
    CheckReport,
    make_category,
    quantum_dimensions,
    s_matrix,
    verify_all,
    verify_hexagon,
    verify_modularity,
    verify_pentagon,
)
from .fusion import FusionBasis, FusionTree, dimension, enumerate_basis, f_move_matrix
from .invariants import jones_at_fibonacci_root, kauffman_bracket_oracle, link_invariant, markov_trace
from .models import builtin, fibonacci_category, ising_category, su2k_category

__version__ = "0.1.0"
