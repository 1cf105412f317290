"""The vectors phi_{l,j} = e0^(l-j) f^j Omega_0, their coefficient matrices, and the bases built from them.

Throughout n <= m. The coefficient matrix of weight l has rows indexed by j
(which phi_{l,j}) and columns by i (the component v_i (x) w_(l-i)), columns in
ascending i. ``prop31_closed`` is the product formula

    [n]/[m+1] * q^(-(l+1)(l+2)/2) * prod_{j=1}^{l+1} [j]!
              * prod_{j=0}^{l} (y - x q^(-m-n+2j))^(l+1-j)

for |Delta_(l+1)|; ``determinant_report`` compares it with the exact
determinant. The x, y dependence vanishes exactly on the hyperplanes
y = x q^(-m-n+2j), j < n, and the union of Delta_l, f^(m+n-2l) Delta_l
(l < n) and f^i Delta_n (i <= m-n) is a basis off those hyperplanes.

The dual family uses varphi_{l,j} = f0^(l-j) e^j Phi_0 with e-powers in
place of f-powers; ``criterion(dual=True)`` tests the hyperplanes
y = x q^(m+n-2j).

``normalization="unit"`` starts from Omega_0 = v_0 (x) w_0 (and
Phi_0 = v_m (x) w_n); ``"paper"`` keeps the printed coefficients
[n]/[m+1] and [m]/[n+1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .extremal import omega, phi
from .linalg import bareiss_det, rank, rank_rational
from .repmod import Gen, TensorElement, act_tensor
from .scalars import (
    ONE,
    X,
    Y,
    Scalar,
    canonical_string,
    q_factorial,
    q_int,
    q_binomial,
    q_power,
    specialize,
)

__all__ = [
    "NORMALIZATIONS",
    "CoeffMatrix",
    "DeterminantReport",
    "BasisReport",
    "phi_lj",
    "varphi_lj",
    "delta_matrix",
    "lambda_matrix",
    "gamma_top_closed",
    "gamma_recursion_check",
    "det_exact",
    "prop31_closed",
    "prop31_parts",
    "determinant_report",
    "delta_det_formula",
    "inductive_c",
    "inductive_step_check",
    "build_delta_basis",
    "build_lambda_basis",
    "criterion",
    "rank_certify",
    "rank_symbolic",
    "certify_basis",
]

NORMALIZATIONS = ("paper", "unit")


def _check(m: int, n: int, l: Optional[int] = None):
    if n > m:
        raise ValueError(f"n <= m is required (got m={m}, n={n}); swap the factors explicitly")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if l is not None and not 0 <= l <= n:
        raise ValueError(f"need 0 <= l <= n; got l={l}")


def _omega0(m: int, n: int, normalization: str) -> TensorElement:
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    return omega(m, n, 0, normalization).value


def _phi0(m: int, n: int, normalization: str) -> TensorElement:
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    return phi(m, n, 0, normalization).value


def _power(g: Gen, k: int, t: TensorElement) -> TensorElement:
    for _ in range(k):
        t = act_tensor(g, t)
    return t


def phi_lj(m: int, n: int, l: int, j: int, normalization: str = "unit") -> TensorElement:
    _check(m, n, l)
    if not 0 <= j <= l:
        raise ValueError(f"need 0 <= j <= l; got j={j}, l={l}")
    return _power(Gen.E0, l - j, _power(Gen.F1, j, _omega0(m, n, normalization)))


def varphi_lj(m: int, n: int, l: int, j: int, normalization: str = "unit") -> TensorElement:
    """Dual vector f0^(l-j) e^j Phi_0."""
    _check(m, n, l)
    if not 0 <= j <= l:
        raise ValueError(f"need 0 <= j <= l; got j={j}, l={l}")
    return _power(Gen.F0, l - j, _power(Gen.E1, j, _phi0(m, n, normalization)))


def _level_vectors(m, n, l, normalization, dual=False) -> list:
    """[phi_{l,0}, ..., phi_{l,l}], reusing f^j Omega_0 across j."""
    seed = _phi0(m, n, normalization) if dual else _omega0(m, n, normalization)
    up, side = (Gen.E1, Gen.F0) if dual else (Gen.F1, Gen.E0)
    out = []
    t = seed
    for j in range(l + 1):
        out.append(_power(side, l - j, t))
        t = act_tensor(up, t)
    return out


@dataclass(frozen=True)
class CoeffMatrix:
    m: int
    n: int
    l: int
    entries: tuple  # entries[j][i]
    normalization: str = "unit"
    dual: bool = False

    @property
    def size(self) -> int:
        return self.l + 1

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "l": self.l,
            "normalization": self.normalization,
            "dual": self.dual,
            "rows": [[canonical_string(v) for v in row] for row in self.entries],
        }


def delta_matrix(m: int, n: int, l: int, normalization: str = "unit") -> CoeffMatrix:
    """Entry [j][i] is the coefficient of v_i (x) w_(l-i) in phi_{l,j}."""
    _check(m, n, l)
    rows = tuple(
        tuple(v.get(i, l - i) for i in range(l + 1))
        for v in _level_vectors(m, n, l, normalization)
    )
    return CoeffMatrix(m, n, l, rows, normalization)


def lambda_matrix(m: int, n: int, l: int, normalization: str = "unit") -> CoeffMatrix:
    """Entry [j][i] is the coefficient of v_(m-i) (x) w_(n-l+i) in varphi_{l,j}."""
    _check(m, n, l)
    rows = tuple(
        tuple(v.get(m - i, n - l + i) for i in range(l + 1))
        for v in _level_vectors(m, n, l, normalization, dual=True)
    )
    return CoeffMatrix(m, n, l, rows, normalization, dual=True)


def gamma_top_closed(m: int, n: int, l: int, i: int) -> Scalar:
    """Coefficient of v_(l-i) (x) w_i in e0^l (v_0 (x) w_0)."""
    return X ** (l - i) * Y**i * q_factorial(l) * q_power(-l + (l - i) * (i - n))


def gamma_recursion_check(m: int, n: int, l: int, normalization: str = "unit") -> bool:
    """Both three-term recursions linking the weight-l and weight-(l+1) matrices."""
    _check(m, n)
    if not 0 <= l < n:
        raise ValueError(f"need 0 <= l < n; got l={l}")
    a = delta_matrix(m, n, l, normalization).entries
    b = delta_matrix(m, n, l + 1, normalization).entries

    def g(row, i):
        return row[i] if 0 <= i < len(row) else Scalar(0)

    for i in range(l + 2):
        expect = Y * q_power(-1) * q_int(l - i + 1) * g(a[0], i) + X * q_power(
            -n + 2 * l - 2 * i + 1
        ) * q_int(i) * g(a[0], i - 1)
        if b[0][i] != expect:
            return False
        for j in range(1, l + 2):
            expect = q_power(-m + 2 * i) * q_int(l - i + 1) * g(a[j - 1], i) + q_int(i) * g(
                a[j - 1], i - 1
            )
            if b[j][i] != expect:
                return False
    return True


def det_exact(mat) -> Scalar:
    entries = mat.entries if isinstance(mat, CoeffMatrix) else mat
    return bareiss_det(entries)


def prop31_parts(m: int, n: int, l: int) -> dict:
    """Pieces of the closed form for |Delta_(l+1)|.

    ``xy_factors`` is a list of (linear factor, multiplicity).
    """
    fact = ONE
    for j in range(1, l + 2):
        fact = fact * q_factorial(j)
    xy = [(Y - X * q_power(-m - n + 2 * j), l + 1 - j) for j in range(l + 1)]
    return {
        "prefactor": q_int(n) / q_int(m + 1),
        "q_power": q_power(-(l + 1) * (l + 2) // 2),
        "factorial_product": fact,
        "xy_factors": xy,
    }


def _xy_product(factors) -> Scalar:
    out = ONE
    for f, k in factors:
        out = out * f**k
    return out


def prop31_closed(m: int, n: int, l: int) -> Scalar:
    if not 0 <= l < n <= m:
        raise ValueError(f"need 0 <= l < n <= m; got ({m}, {n}, {l})")
    p = prop31_parts(m, n, l)
    return p["prefactor"] * p["q_power"] * p["factorial_product"] * _xy_product(p["xy_factors"])


def delta_det_formula(m: int, n: int, l: int, normalization: str = "unit") -> Scalar:
    """|Delta_(l+1)| with each [j]! entering squared.

    Each row of the matrix inherits the Omega_0 coefficient, so the "paper"
    normalization multiplies the unit value by ([n]/[m+1])^(l+2).
    """
    if not 0 <= l < n <= m:
        raise ValueError(f"need 0 <= l < n <= m; got ({m}, {n}, {l})")
    p = prop31_parts(m, n, l)
    value = p["q_power"] * p["factorial_product"] ** 2 * _xy_product(p["xy_factors"])
    if normalization == "paper":
        value = value * p["prefactor"] ** (l + 2)
    return value


@dataclass(frozen=True)
class DeterminantReport:
    """|Delta_(l+1)| against its closed form.

    ``prefactor`` is det / (q-power * factorial product * xy product); the
    closed form predicts [n]/[m+1].
    """

    m: int
    n: int
    l: int
    normalization: str
    det: Scalar
    closed_form: Scalar
    prefactor: Scalar
    factors: tuple

    @property
    def ratio(self) -> Scalar:
        return self.det / self.closed_form

    @property
    def xy_independent(self) -> bool:
        return not (self.prefactor.variables() & {"x", "y"})

    @property
    def matches_up_to_sign(self) -> bool:
        return self.det == self.closed_form or self.det == -self.closed_form

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "l": self.l,
            "normalization": self.normalization,
            "det": canonical_string(self.det),
            "closed_form": canonical_string(self.closed_form),
            "prefactor": canonical_string(self.prefactor),
            "ratio": canonical_string(self.ratio),
            "factored": [[canonical_string(f), k] for f, k in self.factors],
        }


def determinant_report(m: int, n: int, l: int, normalization: str = "unit") -> DeterminantReport:
    """Report for |Delta_(l+1)|."""
    if not 0 <= l < n <= m:
        raise ValueError(f"need 0 <= l < n <= m; got ({m}, {n}, {l})")
    mat = delta_matrix(m, n, l + 1, normalization)
    det = det_exact(mat)
    p = prop31_parts(m, n, l)
    structural = p["q_power"] * p["factorial_product"] * _xy_product(p["xy_factors"])
    closed = p["prefactor"] * structural
    factors = [(p["prefactor"] * p["q_power"] * p["factorial_product"], 1)] + [
        (f, k) for f, k in p["xy_factors"] if k
    ]
    return DeterminantReport(m, n, l, normalization, det, closed, det / structural, tuple(factors))


def inductive_c(m: int, n: int, l: int) -> Scalar:
    """c = (y - x q^(-m-n+2l)) q^-(l+1) sum_i (-1)^i [l choose i] x^i y^(l-i) q^(i(l-1)) q^(-i(m+n))."""
    s = Scalar(0)
    for i in range(l + 1):
        t = q_binomial(l, i) * X**i * Y ** (l - i) * q_power(i * (l - 1) - i * (m + n))
        s = s - t if i % 2 else s + t
    return (Y - X * q_power(-m - n + 2 * l)) * q_power(-(l + 1)) * s


def inductive_step_check(m: int, n: int, l: int, normalization: str = "unit") -> bool:
    """|Delta_(l+1)| = c [l+1]! |Delta_l|, and c equals q^-(l+1) prod_{j<=l} (y - x q^(-m-n+2j))."""
    if not 0 <= l < n <= m:
        raise ValueError(f"need 0 <= l < n <= m; got ({m}, {n}, {l})")
    c = inductive_c(m, n, l)
    product = q_power(-(l + 1))
    for j in range(l + 1):
        product = product * (Y - X * q_power(-m - n + 2 * j))
    if c != product:
        return False
    big = det_exact(delta_matrix(m, n, l + 1, normalization))
    small = det_exact(delta_matrix(m, n, l, normalization))
    return big == c * q_factorial(l + 1) * small


def _build(m, n, normalization, dual) -> list:
    _check(m, n)
    if n < 1:
        raise ValueError("n >= 1 is required")
    raise_gen = Gen.E1 if dual else Gen.F1
    levels = [_level_vectors(m, n, l, normalization, dual) for l in range(n + 1)]
    out = []
    for l in range(n):
        out.extend(levels[l])
    for l in range(n):
        out.extend(_power(raise_gen, m + n - 2 * l, v) for v in levels[l])
    for i in range(m - n + 1):
        out.extend(_power(raise_gen, i, v) for v in levels[n])
    return out


def build_delta_basis(m: int, n: int, normalization: str = "unit") -> list:
    return _build(m, n, normalization, dual=False)


def build_lambda_basis(m: int, n: int, normalization: str = "unit") -> list:
    return _build(m, n, normalization, dual=True)


@dataclass
class BasisReport:
    m: int
    n: int
    dual: bool
    specialization: Optional[tuple]  # (q0, x0, y0) or None for symbolic
    criterion_pass: bool
    failing_j: list = field(default_factory=list)
    rank: Optional[int] = None
    size: Optional[int] = None

    @property
    def expected_rank(self) -> int:
        return (self.m + 1) * (self.n + 1)

    @property
    def is_basis(self) -> bool:
        return self.rank == self.expected_rank and self.size == self.expected_rank

    @property
    def consistent(self) -> Optional[bool]:
        """Whether the hyperplane criterion agrees with the certified rank."""
        if self.rank is None:
            return None
        return self.criterion_pass == self.is_basis

    def to_json(self) -> dict:
        spec = None
        if self.specialization is not None:
            spec = dict(zip(("q", "x", "y"), (str(Fraction(v)) for v in self.specialization)))
        return {
            "m": self.m,
            "n": self.n,
            "dual": self.dual,
            "specialization": spec,
            "criterion_pass": self.criterion_pass,
            "failing_j": list(self.failing_j),
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "size": self.size,
            "is_basis": self.is_basis,
            "consistent": self.consistent,
        }


def criterion(m: int, n: int, q0, x0, y0, dual: bool = False) -> BasisReport:
    """Which j in 0..n-1 put (x0, y0) on a degenerate hyperplane."""
    _check(m, n)
    q0, x0, y0 = Fraction(q0), Fraction(x0), Fraction(y0)
    specialize(ONE, q0, x0, y0)  # validates the point
    sign = 1 if dual else -1
    failing = [j for j in range(n) if y0 == x0 * q0 ** (sign * (m + n) - sign * 2 * j)]
    return BasisReport(m, n, dual, (q0, x0, y0), not failing, failing)


def _coefficient_rows(vectors: Sequence[TensorElement]):
    if not vectors:
        return [], []
    m, n = vectors[0].m, vectors[0].n
    cols = [(i, j) for i in range(m + 1) for j in range(n + 1)]
    return cols, [[v.get(*c) for c in cols] for v in vectors]


def rank_certify(vectors: Sequence[TensorElement], q0, x0, y0) -> int:
    """Exact rank over Q of the candidate vectors specialized at (q0, x0, y0)."""
    _, rows = _coefficient_rows(vectors)
    return rank_rational([[specialize(v, q0, x0, y0) for v in row] for row in rows])


def rank_symbolic(vectors: Sequence[TensorElement]) -> int:
    """Rank over Q(q, x, y); practical only for small modules."""
    _, rows = _coefficient_rows(vectors)
    return rank(rows)


def certify_basis(m: int, n: int, q0=2, x0=3, y0=5, dual: bool = False, normalization: str = "unit") -> BasisReport:
    report = criterion(m, n, q0, x0, y0, dual)
    vectors = build_lambda_basis(m, n, normalization) if dual else build_delta_basis(m, n, normalization)
    report.size = len(vectors)
    report.rank = rank_certify(vectors, q0, x0, y0)
    return report
