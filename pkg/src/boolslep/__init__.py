"""Spatio-spectral limiting on the Boolean hypercube.

Eigenspaces of the band/ball limiting operators PQP and QPQ and of the
Boolean difference operator, computed through the Hamming-sphere harmonic
decomposition (small coefficient matrices) and checked against dense
brute-force operators.
"""

from ._kernels import BACKEND
from .coeff import (
    CoeffMatrix,
    HBDOParams,
    Route,
    as_table_layout,
    coeff_a,
    coeff_aminus,
    coeff_aplus,
    coeff_p,
    hbdo_matrix,
    lagrange_p,
    principal_minor,
    symmetrize,
)
from .cube import (
    apply_adjacency,
    apply_inner,
    apply_outer,
    apply_T,
    dyadic_mask,
    dyadic_rank,
    sphere_indices,
)
from .eigen import eig_small, hbdo_eigenspaces, pqp_eigenvectors, qpq_eigenspaces, qpq_eigenvectors
from .hadamard import conjugate_by_hbar, hadamard_vector, wht
from .harmonics import (
    commutator_apply,
    multiplier,
    project_onto_wr,
    theorem1_check,
    word_action,
    wr_basis,
)

__version__ = "0.1.0"
