"""Exact path counts and growth constants for multi-dimensional Eulerian graphs."""

from .asymptotics import (
    alpha_decomposition,
    b_closed_form,
    b_from_alpha,
    b_operator_exact,
    b_truncated_series,
    limit_verify,
)
from .exact_core import MultiPoly, RationalFnU, UniPoly
from .gamma_delta import delta_poly, delta_poly_bruteforce, gamma_poly, gamma_via_frobenius
from .identity_suite import IdentityReport, run_suite, verify_range
from .operator_calculus import I_nk, eq_new_n_lhs, eq_new_n_rhs, theorem1_closed_form
from .path_engine import path_count, path_count_bruteforce, ratio_sequence
from .special_numbers import binomial, eulerian, falling_factorial, stirling1, stirling2

__version__ = "0.1.0"
