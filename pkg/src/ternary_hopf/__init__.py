"""Enveloping algebras of Lie algebras of order three, their Z3-graded Hopf
structure and its dual, with exact arithmetic over Q(q), q^3 = 1."""

from .coeff import CycQ, Q, q_pow
from .structure import (
    AlgebraSpec,
    builtin_iso3,
    builtin_killing,
    builtin_killing_rank1,
    builtin_matrix_rep,
    check_representation,
    get_builtin,
    validate,
)
from .exterior import is_roby, reduce_pure, roby_basis, roby_dim
from .enveloping import Element, PBWMonomial, engine, mul, normalize, pbw_basis
from .oracle import oracle_reduce
from .hopf import (
    TensorElement,
    antipode,
    check_antipode,
    check_coassoc,
    check_primitive,
    coproduct,
    counit,
    hopf_check,
    twisted_mul,
)
from .dual import (
    DualElement,
    alpha,
    dual_antipode,
    dual_coproduct,
    dual_counit,
    dual_mul,
    pair,
    psi,
    theta,
    three_exterior_check,
)
from .textio import parse_algebra, parse_element, parse_expr, render_element

__version__ = "0.1.0"
