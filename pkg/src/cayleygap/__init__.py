"""Spectral gaps of weighted Cayley and Schreier graphs on the symmetric group."""

from .bounds import (
    Decomposition,
    GapReport,
    branching_lower_bound,
    default_decomposition,
    gap_s2,
    has_property_A,
    psi_n11_via_defining,
    recursion_check,
    verify_unit_gap,
)
from .errors import CapExceededError, CayleyGapError, DegreeMismatchError, VerificationError
from .perms import (
    GeneratingSet,
    GroupAlgebraElement,
    Permutation,
    compose,
    embed,
    enumerate_group,
    initial_reversal,
    inverse,
    is_symmetric,
    l1_norm,
    reversal_element,
)
from .spectra import (
    SchreierGraph,
    Spectrum,
    cayley_gap_irrep,
    cayley_laplacian_dense,
    full_spectrum_irrep,
    lambda_max,
    psi,
    schreier_graph_n22,
    schreier_spectrum,
    spectrum_subset,
    sym_eigenvalues,
)
from .young import (
    OrthogonalRep,
    branch_down,
    build_orthogonal_rep,
    defining_rep_matrix,
    dimension,
    partitions_of,
    rep_apply,
    rep_matrix,
    standard_tableaux,
)

__version__ = "0.1.0"
