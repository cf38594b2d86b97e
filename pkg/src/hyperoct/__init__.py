"""Hyperoctahedral groups, their Z/2 central extension, and branch-divisor checks."""

from .branched_cover import (
    ComponentData,
    HypothesisViolation,
    TorusMonodromy,
    alpha_pairing,
    branch_divisor_pairing,
    components,
    torus_integral,
    verify_torus_identity,
)
from .central_extension import (
    ExtElement,
    GenWord,
    NormalForm,
    cocycle,
    gn_mul,
    hn_inv,
    hn_mul,
    lift,
    normal_form,
    project,
)
from .coverfile import CoverPresentation, check_cover, parse_cover
from .group_core import (
    Permutation,
    SignedPerm,
    bn_mul,
    centralizer_enumerate,
    centralizer_sample,
    cycle_decomposition,
    is_commuting,
    parse_signed_perm,
    perm_compose,
)
from .pairing import decompose, orbit_factorization, phi, phi_acycle, phi_closed_form

__version__ = "0.1.0"

__all__ = [
    "ComponentData",
    "HypothesisViolation",
    "TorusMonodromy",
    "alpha_pairing",
    "branch_divisor_pairing",
    "components",
    "torus_integral",
    "verify_torus_identity",
    "ExtElement",
    "GenWord",
    "NormalForm",
    "cocycle",
    "gn_mul",
    "hn_inv",
    "hn_mul",
    "lift",
    "normal_form",
    "project",
    "CoverPresentation",
    "check_cover",
    "parse_cover",
    "Permutation",
    "SignedPerm",
    "bn_mul",
    "centralizer_enumerate",
    "centralizer_sample",
    "cycle_decomposition",
    "is_commuting",
    "parse_signed_perm",
    "perm_compose",
    "decompose",
    "orbit_factorization",
    "phi",
    "phi_acycle",
    "phi_closed_form",
]
