"""Highest and lowest weight vectors of V_m(x) (x) V_n(y) and the constant alpha_l.

``omega(m, n, l)`` is the highest weight vector of the summand V_(m+n-2l),

    Omega_l = sum_i c_i v_i (x) w_(l-i),
    c_i = (-1)^i q^(i(2l-n-i-1)) prod_{j=j0..i} [n-l+j] / [m-j+1],

and ``phi(m, n, l)`` the matching lowest weight vector

    Phi_l = sum_i d_i v_(m-l+i) (x) w_(n-i),
    d_i = (-1)^i q^(i(-m+2l-i-1)) prod_{j=j0..i} [m-l+j] / [n-j+1].

With ``convention="paper"`` the products start at j0 = 0, so the coefficients
carry the overall factor [n-l]/[m+1] (resp. [m-l]/[n+1]) and the vector
vanishes at l = n (resp. l = m). ``convention="unit"`` starts at j0 = 1, which
gives leading coefficient 1 and never degenerates.

alpha_l is defined by f^(m+n-2l) Omega_l = alpha_l Phi_l and is computed three
ways: by applying the operators (``alpha_direct``), from the explicit sum for
the coefficient of v_(m-l) (x) w_n (``alpha_sum``), and from the product
formula obtained by the e0 recursion (``alpha_closed``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import solve
from .repmod import Gen, TensorElement, act_tensor, act_word, weight_indices
from .scalars import ONE, X, Y, ZERO, Scalar, q_binomial, q_factorial, q_int, q_power

__all__ = [
    "CONVENTIONS",
    "ExtremalVector",
    "AlphaValue",
    "E0Decomposition",
    "NonProportionalError",
    "omega",
    "phi",
    "omega_coefficient",
    "phi_coefficient",
    "coproduct_f_power",
    "alpha_direct",
    "alpha_sum",
    "alpha_closed",
    "alpha_ratio_formula",
    "lemma21_sides",
    "lemma21_check",
    "lemma22_sides",
    "lemma22_check",
    "decompose_e0_omega",
    "c_prev_formula",
]

CONVENTIONS = ("paper", "unit")


class NonProportionalError(ArithmeticError):
    """f^(m+n-2l) Omega_l is not a multiple of Phi_l."""


@dataclass(frozen=True)
class ExtremalVector:
    kind: str  # "Omega" or "Phi"
    m: int
    n: int
    l: int
    value: TensorElement
    degenerate: bool
    convention: str = "paper"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "l": self.l,
            "convention": self.convention,
            "degenerate": self.degenerate,
            "value": self.value.to_json(),
        }


@dataclass(frozen=True)
class AlphaValue:
    m: int
    n: int
    l: int
    value: Scalar

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "l": self.l, "value": str(self.value)}


def _start(convention: str) -> int:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    return 0 if convention == "paper" else 1


def _check_l(m: int, n: int, l: int):
    if m < 0 or n < 0 or not 0 <= l <= min(m, n):
        raise ValueError(f"need 0 <= l <= min(m, n); got (m, n, l) = ({m}, {n}, {l})")


def omega_coefficient(m: int, n: int, l: int, i: int, convention: str = "paper") -> Scalar:
    c = q_power(i * (2 * l - n - i - 1))
    if i % 2:
        c = -c
    for j in range(_start(convention), i + 1):
        c = c * q_int(n - l + j) / q_int(m - j + 1)
    return c


def phi_coefficient(m: int, n: int, l: int, i: int, convention: str = "paper") -> Scalar:
    d = q_power(i * (-m + 2 * l - i - 1))
    if i % 2:
        d = -d
    for j in range(_start(convention), i + 1):
        d = d * q_int(m - l + j) / q_int(n - j + 1)
    return d


def omega(m: int, n: int, l: int, convention: str = "paper") -> ExtremalVector:
    _check_l(m, n, l)
    t = TensorElement.build(
        m, n, (((i, l - i), omega_coefficient(m, n, l, i, convention)) for i in range(l + 1))
    )
    return ExtremalVector("Omega", m, n, l, t, t.is_zero, convention)


def phi(m: int, n: int, l: int, convention: str = "paper") -> ExtremalVector:
    _check_l(m, n, l)
    t = TensorElement.build(
        m, n, (((m - l + i, n - i), phi_coefficient(m, n, l, i, convention)) for i in range(l + 1))
    )
    return ExtremalVector("Phi", m, n, l, t, t.is_zero, convention)


def coproduct_f_power(k: int, t: TensorElement) -> TensorElement:
    """f^k through the closed expansion

        D(f^k) = sum_j q^(-j(k-j)) [k choose j] K^-j f^(k-j) (x) f^j.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    m, n = t.m, t.n
    pairs = []
    for (a, b), c in t.coeffs.items():
        for j in range(k + 1):
            i2, j2 = a + k - j, b + j
            if i2 > m or j2 > n:
                continue
            left = q_factorial(i2) / q_factorial(a) * q_power(-j * (m - 2 * i2))
            right = q_factorial(j2) / q_factorial(b)
            coeff = q_power(-j * (k - j)) * q_binomial(k, j) * left * right
            pairs.append(((i2, j2), c * coeff))
    return TensorElement.build(m, n, pairs, t.left_param, t.right_param)


def f_power(k: int, t: TensorElement) -> TensorElement:
    for _ in range(k):
        t = act_tensor(Gen.F1, t)
    return t


def alpha_direct(m: int, n: int, l: int, convention: str = "paper") -> AlphaValue:
    """Ratio f^(m+n-2l) Omega_l / Phi_l, with proportionality verified on every component."""
    _check_l(m, n, l)
    ph = phi(m, n, l, convention)
    if ph.degenerate:
        raise ValueError(f"Phi_{l} is identically zero for (m, n) = ({m}, {n})")
    image = f_power(m + n - 2 * l, omega(m, n, l, convention).value)
    ratio = image.get(m - l, n) / ph.value.get(m - l, n)
    if image != ph.value.scale(ratio):
        raise NonProportionalError(f"f^{m + n - 2 * l} Omega_{l} is not proportional to Phi_{l}")
    return AlphaValue(m, n, l, ratio)


def alpha_sum(m: int, n: int, l: int) -> AlphaValue:
    """alpha_l from the explicit coefficient of v_(m-l) (x) w_n."""
    if not (0 <= l < min(m, n) and m > l):
        raise ValueError(f"alpha_sum needs 0 <= l < min(m, n); got (m, n, l) = ({m}, {n}, {l})")
    qf = q_factorial
    total = ZERO
    for i in range(min(l, m - l) + 1):
        term = qf(m + n - 2 * l) * qf(m - l) * qf(n) / (
            qf(m - l - i) * qf(n - l + i) * qf(i) * qf(l - i)
        )
        for j in range(i + 1):
            term = term * q_int(n - l + j) / q_int(m - j + 1)
        term = term * q_power(-i)
        total = total + (-term if i % 2 else term)
    return AlphaValue(m, n, l, q_power(-l * (n - l)) * q_int(n + 1) / q_int(m - l) * total)


def alpha_closed(m: int, n: int, l: int) -> AlphaValue:
    """Product formula for alpha_l (requires 1 <= n <= m, 0 <= l <= n, l < m)."""
    if not (1 <= n <= m and 0 <= l <= n and l < m):
        raise ValueError(f"alpha_closed needs 1 <= n <= m, 0 <= l <= n, l < m; got ({m}, {n}, {l})")
    v = q_power((m - n) * l) * q_int(n) * q_int(n + 1) * q_factorial(m + n) / (q_int(m) * q_int(m + 1))
    for i in range(1, l + 1):
        v = v * q_int(n - i) / q_int(m - i)
    for i in range(1, 2 * l + 1):
        v = v / q_int(m + n - 2 * l + i)
    return AlphaValue(m, n, l, v)


def alpha_ratio_formula(m: int, n: int, l: int) -> Scalar:
    """alpha_l / alpha_(l-1) as obtained from the two lemmas."""
    return (
        q_int(n - l) / q_int(m - l) * q_power(m - n)
        / (q_int(m + n - 2 * l + 1) * q_int(m + n - 2 * l + 2))
    )


def lemma21_sides(m: int, n: int, l: int, convention: str = "paper") -> tuple:
    """(e^2 e0 Omega_l, [2][n-l] q^-1 (x q^m - y q^(-n+2l-2)) Omega_(l-1))."""
    if not (1 <= l <= min(m, n)):
        raise ValueError("e0 Omega_l identity needs 1 <= l <= min(m, n)")
    lhs = act_word([Gen.E1, Gen.E1, Gen.E0], omega(m, n, l, convention).value)
    factor = q_int(2) * q_int(n - l) * q_power(-1) * (X * q_power(m) - Y * q_power(-n + 2 * l - 2))
    rhs = omega(m, n, l - 1, convention).value.scale(factor)
    return lhs, rhs


def lemma21_check(m: int, n: int, l: int, convention: str = "paper") -> bool:
    lhs, rhs = lemma21_sides(m, n, l, convention)
    return lhs == rhs


def lemma22_sides(m: int, n: int, l: int, convention: str = "paper") -> tuple:
    """(e0 Phi_l, [m-l] q^-1 (x q^n - y q^(-m+2l-2)) Phi_(l-1))."""
    if not (1 <= l <= min(m, n)):
        raise ValueError("f0 Phi_l identity needs 1 <= l <= min(m, n)")
    lhs = act_tensor(Gen.E0, phi(m, n, l, convention).value)
    factor = q_int(m - l) * q_power(-1) * (X * q_power(n) - Y * q_power(-m + 2 * l - 2))
    rhs = phi(m, n, l - 1, convention).value.scale(factor)
    return lhs, rhs


def lemma22_check(m: int, n: int, l: int, convention: str = "paper") -> bool:
    lhs, rhs = lemma22_sides(m, n, l, convention)
    return lhs == rhs


def c_prev_formula(m: int, n: int, l: int) -> Scalar:
    return (
        q_int(n - l) * q_power(-1) * (X * q_power(m) - Y * q_power(-n + 2 * l - 2))
        / (q_int(m + n - 2 * l + 1) * q_int(m + n - 2 * l + 2))
    )


@dataclass(frozen=True)
class E0Decomposition:
    m: int
    n: int
    l: int
    c_prev: Scalar
    c_same: Scalar
    c_next: Scalar
    formula_c_prev: Scalar

    @property
    def matches_formula(self) -> bool:
        return self.c_prev == self.formula_c_prev


def decompose_e0_omega(m: int, n: int, l: int, convention: str = "paper") -> E0Decomposition:
    """Solve e0 Omega_l = c_prev f^2 Omega_(l-1) + c_same f Omega_l + c_next Omega_(l+1).

    Omega_(l+1) is taken from the unit convention when the chosen convention
    makes it vanish, so that the three target vectors stay independent.
    """
    if not (1 <= l < n <= m):
        raise ValueError(f"decomposition needs 1 <= l < n <= m; got ({m}, {n}, {l})")
    target = act_tensor(Gen.E0, omega(m, n, l, convention).value)
    nxt = omega(m, n, l + 1, convention)
    if nxt.degenerate:
        nxt = omega(m, n, l + 1, "unit")
    vectors = [
        f_power(2, omega(m, n, l - 1, convention).value),
        act_tensor(Gen.F1, omega(m, n, l, convention).value),
        nxt.value,
    ]
    rows = weight_indices(m, n, l + 1)
    sol = solve([[v.get(*r) for r in rows] for v in vectors], [target.get(*r) for r in rows])
    if sol is None:
        raise ArithmeticError("e0 Omega_l is not in the span of the three vectors")
    return E0Decomposition(m, n, l, *sol, c_prev_formula(m, n, l))
