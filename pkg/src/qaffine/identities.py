"""Exact checks of the q-binomial identities behind the alpha and determinant formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .scalars import (
    ONE,
    X,
    Y,
    ZERO,
    Scalar,
    canonical_string,
    classical_limit,
    q_binomial,
    q_factorial,
    q_power,
)

__all__ = [
    "IdentityReport",
    "theorem21_lhs",
    "theorem21_factorial_lhs",
    "theorem21_check",
    "corollary_sum",
    "corollary_check",
    "lemma31_admissible_k",
    "lemma31_sum",
    "lemma31_check",
    "lemma32_sides",
    "lemma32_check",
]


@dataclass(frozen=True)
class IdentityReport:
    id: str
    params: dict = field(default_factory=dict)
    lhs: Scalar = ZERO
    rhs: Scalar = ZERO

    @property
    def holds(self) -> bool:
        return (self.lhs - self.rhs).is_zero

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": dict(self.params),
            "holds": self.holds,
            "lhs": canonical_string(self.lhs),
            "rhs": canonical_string(self.rhs),
        }


def _check_ml(m: int, l: int):
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m; got (m, l) = ({m}, {l})")


def theorem21_lhs(m: int, l: int) -> Scalar:
    """sum_{i=0}^{min(l, m-l)} (-1)^i q^-i [l choose i] [m-i choose l]."""
    total = ZERO
    for i in range(min(l, m - l) + 1):
        t = q_power(-i) * q_binomial(l, i) * q_binomial(m - i, l)
        total = total - t if i % 2 else total + t
    return total


def theorem21_factorial_lhs(m: int, l: int) -> Scalar:
    # [m-i]! / ([i]! [l-i]! [m-l-i]!), reading the last bracket as a factorial
    total = ZERO
    for i in range(min(l, m - l) + 1):
        t = q_power(-i) * q_factorial(m - i) / (q_factorial(i) * q_factorial(l - i) * q_factorial(m - l - i))
        total = total - t if i % 2 else total + t
    return total


def theorem21_check(m: int, l: int) -> IdentityReport:
    _check_ml(m, l)
    return IdentityReport("theorem21", {"m": m, "l": l}, theorem21_lhs(m, l), q_power(l * (m - l)))


def corollary_sum(m: int, l: int) -> int:
    return sum((-1) ** i * comb(l, i) * comb(m - i, l) for i in range(min(l, m - l) + 1))


def corollary_check(m: int, l: int) -> IdentityReport:
    """Classical limit of the q-binomial sum, evaluated term by term."""
    _check_ml(m, l)
    total = Fraction(0)
    for i in range(min(l, m - l) + 1):
        t = classical_limit(q_binomial(l, i)) * classical_limit(q_binomial(m - i, l))
        total += -t if i % 2 else t
    return IdentityReport("corollary", {"m": m, "l": l}, Scalar(total), ONE)


def lemma31_admissible_k(l: int) -> list:
    return list(range(l - 1, -l, -2))


def lemma31_sum(l: int, k: int) -> Scalar:
    total = ZERO
    for i in range(l + 1):
        t = q_binomial(l, i) * q_power(i * k)
        total = total - t if i % 2 else total + t
    return total


def lemma31_check(l: int, k: int) -> IdentityReport:
    if l < 1:
        raise ValueError("the vanishing sum needs l >= 1")
    if k not in lemma31_admissible_k(l):
        raise ValueError(f"k = {k} is not in {{l-1, l-3, ..., 1-l}} for l = {l}")
    return IdentityReport("lemma31", {"l": l, "k": k}, lemma31_sum(l, k), ZERO)


def lemma32_sides(l: int, s: int) -> tuple:
    """Both sides with s standing for m + n."""
    lhs = ZERO
    for i in range(l + 1):
        t = q_binomial(l, i) * X**i * Y ** (l - i) * q_power(i * (l - 1) - i * s)
        lhs = lhs - t if i % 2 else lhs + t
    rhs = ONE
    for j in range(l):
        rhs = rhs * (Y - X * q_power(-s + 2 * j))
    return lhs, rhs


def lemma32_check(l: int, s: int) -> IdentityReport:
    if l < 1:
        raise ValueError("the product expansion needs l >= 1")
    lhs, rhs = lemma32_sides(l, s)
    return IdentityReport("lemma32", {"l": l, "s": s}, lhs, rhs)
