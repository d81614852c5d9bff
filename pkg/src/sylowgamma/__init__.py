"""Exact Sylow-polynomial invariants of direct products, with independent cross-checks."""

from .errors import CrossCheckError, GroupSyntaxError, Refusal
from .numerics import PrimePower, is_prime, lcm_all, rat, rat_sum
from .groups import GroupExpr, SylowDatum, SylowProfile, atom_profile, order_of, parse_group, render_group
from .sylow import gamma, merge_profiles, profile_of, sylow_polynomial
from .compensation import NilpotentSpec, defect, gamma_a5_times, one_sided_check, threshold_classify
from .certify import (
    Certificate,
    SearchBounds,
    certificate_to_group,
    residual_bounds,
    search_certificates,
    verify_certificate,
)

__version__ = "0.1.0"
