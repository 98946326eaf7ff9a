"""Exact Hecke-eigenvalue congruence verification for split orthogonal
groups, with numeric evaluation of the spinor and triple-product L-functions
whose critical-value ratios the congruence moduli divide."""

from .afe import EvalResult, coeffs_required, evaluate, evaluate_many, fe_residual, ratio
from .congruence import (
    bound_check,
    check,
    check_norm,
    check_quadratic,
    load_cases,
    rhs_eisenstein,
    rhs_harder,
    rhs_so43,
    rhs_so44,
    run_case,
)
from .dataset import Dataset, HeckeRecord, Miss, bundled, load, merge
from .exact import (
    Factorization,
    QuadInt,
    cf_expand,
    factorize,
    is_prime,
    quad_norm,
    rational_reconstruct,
)
from .forms import QSeries, ap, eigenform, is_ordinary
from .lfunc import (
    EulerFactor,
    LSpec,
    alg_ratio_identity,
    build_lspec,
    dirichlet_coefficients,
    elliptic_spec,
    gamma_quotient,
    spinor_euler,
    spinor_spec,
    triple_euler,
    triple_spec,
    zeta_spec,
)
from .resolve import endoscopic_subtract, quadratic_resolve, restrict_square, trace_square
from .rootdata import (
    CRLabel,
    HalfIntVector,
    jk_to_cr,
    mu_plus_rho,
    pairing_table,
    parabolic_data,
    rho_G,
    so43_target,
    so44_target,
)

__version__ = "0.1.0"
