"""Exact arithmetic in Q[q^±1, x^±1, y^±1] and its fraction field.

Two layers live here:

* ``LaurentPoly`` -- sparse Laurent polynomials in ``q, x, y`` with rational
  coefficients, stored as a map from exponent triples ``(a, b, c)`` (powers
  of ``q``, ``x``, ``y``) to nonzero coefficients.
* ``Scalar`` -- reduced fractions ``num / den`` of Laurent polynomials, the
  coefficient field for every module computation in the package.

A ``Scalar`` is kept in canonical form: ``den`` is an ordinary polynomial
(nonnegative exponents, no monomial factor), primitive over the integers,
with positive lex-leading coefficient, and ``gcd(num, den)`` is a unit.
Equality is therefore structural.

Multivariate gcd and exact division are delegated to sympy's sparse
polynomial rings; everything else is plain dict arithmetic.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

__all__ = [
    "LaurentPoly",
    "Scalar",
    "ScalarLike",
    "SpecializationError",
    "Q",
    "X",
    "Y",
    "ONE",
    "ZERO",
    "q_power",
    "q_int",
    "q_factorial",
    "q_binomial",
    "specialize",
    "classical_limit",
    "canonical_string",
    "parse_scalar",
]

Exp = tuple  # (q, x, y) exponent triple

_EXP_LIMIT = 2**31 - 1

# Lex order (x, y, q): the sympy rings list generators in that order.
_ZZ_RING = ring("x,y,q", ZZ, lex)[0]
_QQ_RING = ring("x,y,q", QQ, lex)[0]


class SpecializationError(ValueError):
    """Raised when a scalar cannot be evaluated at the requested point."""


def _coeff(c):
    """Normalize a coefficient to int when integral, else Fraction."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _check_exp(e: Exp) -> Exp:
    for k in e:
        if k > _EXP_LIMIT or k < -_EXP_LIMIT:
            raise OverflowError(f"exponent {k} out of range")
    return e


def _order_key(e: Exp):
    # monomial order: lex on (x, y, q)
    return (e[1], e[2], e[0])


class LaurentPoly:
    """Immutable sparse Laurent polynomial in q, x, y."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _coeff(c)
                if c:
                    e = tuple(int(k) for k in e)
                    if len(e) != 3:
                        raise ValueError("exponent triples must have length 3")
                    clean[_check_exp(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        c = _coeff(c)
        return cls._wrap({(0, 0, 0): c} if c else {})

    @classmethod
    def monomial(cls, coeff=1, q: int = 0, x: int = 0, y: int = 0) -> "LaurentPoly":
        c = _coeff(coeff)
        return cls._wrap({_check_exp((q, x, y)): c} if c else {})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        t = self._terms
        return not t or (len(t) == 1 and (0, 0, 0) in t)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self):
        if not self.is_constant:
            raise ValueError("not a constant")
        return self._terms.get((0, 0, 0), 0)

    def min_exponents(self) -> Exp:
        if not self._terms:
            return (0, 0, 0)
        keys = self._terms.keys()
        return tuple(min(e[k] for e in keys) for k in range(3))

    def leading_term(self):
        e = max(self._terms, key=_order_key)
        return e, self._terms[e]

    def sorted_terms(self):
        """Terms sorted descending by (x, y, q) exponents."""
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def variables(self) -> set:
        names = set()
        for e in self._terms:
            for k, name in enumerate("qxy"):
                if e[k]:
                    names.add(name)
        return names

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _coeff(s)
            else:
                out.pop(e, None)
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if not c:
                return LaurentPoly._wrap({})
            return LaurentPoly._wrap({e: _coeff(v * c) for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for (q1, x1, y1), c1 in b.items():
            for (q2, x2, y2), c2 in a.items():
                e = (q1 + q2, x1 + x2, y1 + y2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._wrap({e: _coeff(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial:
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly.monomial(Fraction(1) / Fraction(c) ** (-k), *(k * x for x in e))
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        for e in result._terms:
            _check_exp(e)
        return result

    def shift(self, q: int = 0, x: int = 0, y: int = 0) -> "LaurentPoly":
        """Multiply by the monomial q^q x^x y^y."""
        if not (q or x or y):
            return self
        return LaurentPoly._wrap(
            {_check_exp((a + q, b + x, c + y)): v for (a, b, c), v in self._terms.items()}
        )

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in the Laurent ring; raises if ``other`` does not divide."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return self
        if other.is_monomial:
            (e, c), = other._terms.items()
            inv = Fraction(1) / Fraction(c)
            return LaurentPoly._wrap(
                {(a - e[0], b - e[1], d - e[2]): _coeff(v * inv) for (a, b, d), v in self._terms.items()}
            )
        sa, sb = self.min_exponents(), other.min_exponents()
        pa = _to_sympy(self.shift(*(-k for k in sa)), _QQ_RING)
        pb = _to_sympy(other.shift(*(-k for k in sb)), _QQ_RING)
        try:
            quo = pa.exquo(pb)
        except Exception as exc:  # sympy raises ExactQuotientFailed
            raise ValueError("polynomial division is not exact") from exc
        return _from_sympy(quo).shift(*(a - b for a, b in zip(sa, sb)))

    def evaluate(self, q0, x0, y0) -> Fraction:
        total = Fraction(0)
        for (a, b, c), v in self._terms.items():
            total += v * Fraction(q0) ** a * Fraction(x0) ** b * Fraction(y0) ** c
        return total

    def coefficient_sum(self):
        return sum(self._terms.values(), 0)

    def substitute_q_inverse(self) -> "LaurentPoly":
        return LaurentPoly._wrap({(-a, b, c): v for (a, b, c), v in self._terms.items()})

    def swap_xy(self) -> "LaurentPoly":
        return LaurentPoly._wrap({(a, c, b): v for (a, b, c), v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({_poly_string(self)!r})"

    def __str__(self):
        return _poly_string(self)


def _to_sympy(p: LaurentPoly, R):
    return R.from_dict({(b, c, a): v for (a, b, c), v in p._terms.items()})


def _from_sympy(p) -> LaurentPoly:
    out = {}
    for (b, c, a), v in p.items():
        v = _coeff(Fraction(int(v.numerator), int(v.denominator)) if hasattr(v, "denominator") else int(v))
        if v:
            out[(a, b, c)] = v
    return LaurentPoly._wrap(out)


def _integer_content(p: LaurentPoly) -> Fraction:
    """Rational c with p / c primitive integral and positive lex-leading coefficient."""
    vals = list(p._terms.values())
    den = math.lcm(*(Fraction(v).denominator for v in vals))
    num = math.gcd(*(int(v * den) for v in vals))
    c = Fraction(num, den)
    if p.leading_term()[1] < 0:
        c = -c
    return c


def _poly_cofactors(a: LaurentPoly, b: LaurentPoly):
    """For polynomials a, b (nonnegative exponents) return (a/g, b/g), g = gcd."""
    la = math.lcm(*(Fraction(v).denominator for v in a._terms.values()))
    lb = math.lcm(*(Fraction(v).denominator for v in b._terms.values()))
    pa = _to_sympy(a * la, _ZZ_RING)
    pb = _to_sympy(b * lb, _ZZ_RING)
    _, ca, cb = pa.cofactors(pb)
    return _from_sympy(ca) * Fraction(1, la), _from_sympy(cb) * Fraction(1, lb)


ScalarLike = Union["Scalar", LaurentPoly, int, Fraction]

_POLY_ONE = LaurentPoly.constant(1)
_POLY_ZERO = LaurentPoly._wrap({})


class Scalar:
    """Element of Q(q, x, y), stored as a canonical reduced fraction."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: ScalarLike = 0, den: ScalarLike = 1):
        n = _as_fraction(num)
        d = _as_fraction(den)
        r = _canonical(n.num * d.den, n.den * d.num)
        self.num, self.den, self._hash = r.num, r.den, None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        s = object.__new__(cls)
        s.num, s.den, s._hash = num, den, None
        return s

    @classmethod
    def laurent(cls, p: LaurentPoly) -> "Scalar":
        return cls._raw(p, _POLY_ONE)

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    @property
    def is_laurent(self) -> bool:
        """True when the reduced denominator is 1."""
        return self.den is _POLY_ONE or self.den == _POLY_ONE

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def swap_xy(self) -> "Scalar":
        """Exchange the roles of x and y."""
        return _canonical(self.num.swap_xy(), self.den.swap_xy())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero:
            return self
        if self.num.is_zero:
            return o
        if self.den == o.den:
            if self.den == _POLY_ONE:
                return Scalar._raw(self.num + o.num, _POLY_ONE)
            return _canonical(self.num + o.num, self.den)
        return _canonical(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero or o.num.is_zero:
            return ZERO
        if self.den == _POLY_ONE and o.den == _POLY_ONE:
            return Scalar._raw(self.num * o.num, _POLY_ONE)
        # cross-cancel: both inputs are already reduced
        a, d = _cancel(self.num, o.den)
        c, b = _cancel(o.num, self.den)
        return _canonical(a * c, b * d, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of the zero scalar")
        return _canonical(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.den == _POLY_ONE:
            return Scalar._raw(self.num**k, _POLY_ONE)
        return Scalar._raw(self.num**k, self.den**k)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"Scalar({canonical_string(self)!r})"

    def __str__(self):
        return canonical_string(self)


def _as_fraction(v) -> Scalar:
    if isinstance(v, Scalar):
        return v
    if isinstance(v, LaurentPoly):
        return Scalar._raw(v, _POLY_ONE)
    if isinstance(v, (int, Fraction)):
        return Scalar._raw(LaurentPoly.constant(v), _POLY_ONE)
    if isinstance(v, str):
        return parse_scalar(v)
    raise TypeError(f"cannot convert {type(v).__name__} to Scalar")


def _coerce(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, LaurentPoly):
        return Scalar._raw(v, _POLY_ONE)
    if isinstance(v, (int, Fraction)):
        return Scalar._raw(LaurentPoly.constant(v), _POLY_ONE)
    return None


def _cancel(num: LaurentPoly, den: LaurentPoly):
    """Remove gcd(num, den) where den is a canonical denominator."""
    if num.is_zero or den == _POLY_ONE:
        return num, den
    s = num.min_exponents()
    shifted = num.shift(*(-k for k in s))
    if shifted.is_constant:
        return num, den
    cn, cd = _poly_cofactors(shifted, den)
    return cn.shift(*s), cd


def _canonical(num: LaurentPoly, den: LaurentPoly, reduced: bool = False) -> Scalar:
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return ZERO
    s = den.min_exponents()
    if s != (0, 0, 0):
        den = den.shift(*(-k for k in s))
        num = num.shift(*(-k for k in s))
    if den.is_constant:
        c = den.constant_value()
        return Scalar._raw(num * (Fraction(1) / Fraction(c)) if c != 1 else num, _POLY_ONE)
    if not reduced:
        num, den = _cancel(num, den)
        if den.is_constant:
            c = den.constant_value()
            return Scalar._raw(num * (Fraction(1) / Fraction(c)), _POLY_ONE)
    c = _integer_content(den)
    if c != 1:
        inv = Fraction(1) / c
        num, den = num * inv, den * inv
    return Scalar._raw(num, den)


ZERO = Scalar._raw(_POLY_ZERO, _POLY_ONE)
ONE = Scalar._raw(_POLY_ONE, _POLY_ONE)
Q = Scalar.laurent(LaurentPoly.monomial(1, q=1))
X = Scalar.laurent(LaurentPoly.monomial(1, x=1))
Y = Scalar.laurent(LaurentPoly.monomial(1, y=1))


# -- q-combinatorics ---------------------------------------------------------


@lru_cache(maxsize=None)
def q_power(k: int) -> Scalar:
    return Scalar.laurent(LaurentPoly.monomial(1, q=k))


@lru_cache(maxsize=None)
def q_int(r: int) -> Scalar:
    """The q-integer [r]_q = q^(r-1) + q^(r-3) + ... + q^(1-r)."""
    if r < 0:
        return -q_int(-r)
    return Scalar.laurent(LaurentPoly({(r - 1 - 2 * k, 0, 0): 1 for k in range(r)}))


@lru_cache(maxsize=None)
def q_factorial(r: int) -> Scalar:
    if r < 0:
        raise ValueError(f"q_factorial of negative integer {r}")
    if r == 0:
        return ONE
    return q_factorial(r - 1) * q_int(r)


@lru_cache(maxsize=None)
def q_binomial(r: int, s: int) -> Scalar:
    if s < 0 or s > r:
        raise ValueError(f"q_binomial({r}, {s}) requires 0 <= s <= r")
    den = (q_factorial(s) * q_factorial(r - s)).num
    return Scalar.laurent(q_factorial(r).num.exact_div(den))


# -- evaluation --------------------------------------------------------------


def specialize(s: ScalarLike, q0, x0=1, y0=1) -> Fraction:
    """Exact value of ``s`` at a rational point with q0 outside {0, 1, -1}."""
    q0, x0, y0 = Fraction(q0), Fraction(x0), Fraction(y0)
    if q0 in (0, 1, -1):
        raise SpecializationError(f"q0 = {q0} is not allowed (must avoid 0, 1, -1)")
    if x0 == 0 or y0 == 0:
        raise SpecializationError("x0 and y0 must be nonzero")
    return _evaluate(_as_fraction(s), q0, x0, y0)


def _evaluate(s: Scalar, q0, x0, y0) -> Fraction:
    d = s.den.evaluate(q0, x0, y0)
    if d == 0:
        raise SpecializationError(f"denominator vanishes at (q, x, y) = ({q0}, {x0}, {y0})")
    return s.num.evaluate(q0, x0, y0) / d


def classical_limit(s: ScalarLike) -> Fraction:
    """Value at q = x = y = 1."""
    s = _as_fraction(s)
    d = s.den.coefficient_sum()
    if d == 0:
        raise SpecializationError("pole at the classical limit q = 1")
    return Fraction(s.num.coefficient_sum()) / d


# -- serialization -----------------------------------------------------------


def _factors(e: Exp) -> str:
    a, b, c = e
    parts = []
    if b:
        parts.append(f"x^{b}")
    if c:
        parts.append(f"y^{c}")
    if a:
        parts.append(f"q^{a}")
    return "*".join(parts)


def _poly_string(p: LaurentPoly) -> str:
    if p.is_zero:
        return "0"
    out = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        f = _factors(e)
        if k == 0:
            if not f:
                out.append(str(c))
            elif c == 1:
                out.append(f)
            else:
                out.append(f"{c}*{f}")
        else:
            out.append(" - " if c < 0 else " + ")
            a = abs(c)
            if not f:
                out.append(str(a))
            elif a == 1:
                out.append(f)
            else:
                out.append(f"{a}*{f}")
    return "".join(out)


def canonical_string(s: ScalarLike) -> str:
    """Deterministic text form; ``(num)/(den)`` when the denominator is not 1."""
    s = _as_fraction(s)
    if s.is_laurent:
        return _poly_string(s.num)
    return f"({_poly_string(s.num)})/({_poly_string(s.den)})"


_INT = r"-?\d+"
_COEFF_RE = re.compile(r"^(\d+)(?:/(\d+))?$")
_FACTOR_RE = re.compile(rf"^([qxy])\^({_INT})$")
_SPLIT_RE = re.compile(r" ([+-]) ")


def _parse_term(text: str, sign: int) -> tuple:
    if text.startswith("-"):
        sign, text = -sign, text[1:]
    parts = text.split("*")
    coeff = Fraction(1)
    m = _COEFF_RE.match(parts[0])
    if m:
        coeff = Fraction(int(m.group(1)), int(m.group(2) or 1))
        parts = parts[1:]
    exps = {"q": 0, "x": 0, "y": 0}
    seen = set()
    for part in parts:
        f = _FACTOR_RE.match(part)
        if not f or f.group(1) in seen:
            raise ValueError(f"malformed term {text!r}")
        seen.add(f.group(1))
        exps[f.group(1)] = int(f.group(2))
    if not parts and not m:
        raise ValueError(f"malformed term {text!r}")
    return (exps["q"], exps["x"], exps["y"]), sign * coeff


def _parse_poly(text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return _POLY_ZERO
    pieces = _SPLIT_RE.split(text)
    terms: dict = {}
    signs = [1] + [1 if s == "+" else -1 for s in pieces[1::2]]
    for sign, body in zip(signs, pieces[0::2]):
        if not body or body != body.strip():
            raise ValueError(f"malformed polynomial {text!r}")
        e, c = _parse_term(body, sign)
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(terms)


def parse_scalar(text: str) -> Scalar:
    """Inverse of ``canonical_string``."""
    text = text.strip()
    if text.startswith("("):
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
        if not m:
            raise ValueError(f"malformed fraction {text!r}")
        return Scalar(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
    return Scalar.laurent(_parse_poly(text))


def scalar_sum(values: Iterable[ScalarLike]) -> Scalar:
    total = ZERO
    for v in values:
        total = total + v
    return total
