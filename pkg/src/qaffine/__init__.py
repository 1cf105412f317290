"""Exact computations in evaluation modules of U_q(sl2-hat)."""

from .scalars import (
    ONE,
    Q,
    X,
    Y,
    ZERO,
    LaurentPoly,
    Scalar,
    SpecializationError,
    canonical_string,
    classical_limit,
    parse_scalar,
    q_binomial,
    q_factorial,
    q_int,
    specialize,
)

__version__ = "0.1.0"
