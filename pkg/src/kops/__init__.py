"""Exact computations with stable degree-zero operations in p-local K-theory.

The operation algebras are modelled as truncated series in explicit bases:
``phi``/``Phi`` (connective and periodic), their Adams-summand variants
``phiHat``/``PhiHat``, and at p = 2 the ``zeta``, ``ko`` and ``KO`` bases.
"""

from .connective import (
    act_on_coefficients,
    adams_to_phi,
    coproduct,
    divide_by_phi1,
    hopf_bundle_action,
    idempotent,
    invert,
    is_unit,
    series_mul,
)
from .errors import (
    BasisMismatch,
    ContextMismatch,
    InsufficientPrecision,
    IntegralityViolation,
    KOpsError,
    NotAUnit,
    NotDivisible,
    NotInIdeal,
    NotInSpan,
    NotPLocal,
    PreconditionViolated,
    SizeLimit,
    ZeroDenominator,
)
from .exact_arith import LocalScalar, gaussian_binomial, make_scalar, nu, validate_generator
from .periodic import (
    antipode,
    connective_phi_to_Phi,
    periodic_act_on_coefficients,
    periodic_adams_to_Phi,
    periodic_coproduct,
    periodic_idempotent,
    periodic_mul,
    periodic_to_connective,
)
from .series import Series, TensorSeries
from .theta import (
    NodeSequence,
    basis_change,
    constant,
    explicit,
    geometric,
    interleaved,
    odd_powers,
    theta_poly,
)
from .two_local import quotient_to_ko, zeta_action, zeta_coproduct, zeta_mul, zeta_to_group_ring

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
