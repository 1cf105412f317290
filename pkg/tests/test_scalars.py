import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from qaffine import (
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
from qaffine.sweeps import random_scalar

import oracle


def laurent(coeffs: dict) -> Scalar:
    """{q exponent: coefficient} -> Scalar."""
    return Scalar.laurent(LaurentPoly({(e, 0, 0): c for e, c in coeffs.items()}))


def to_sympy(s: Scalar):
    return sp.sympify(canonical_string(s).replace("^", "**"))


def gaussian_oracle(r, s):
    """Symmetric q-binomial by counting s-subsets of range(r) by their sum."""
    counts = {}
    base = s * (s - 1) // 2
    for sub in combinations(range(r), s):
        k = sum(sub) - base
        counts[k] = counts.get(k, 0) + 1
    # standard Gaussian binomial in t = q^2, shifted by q^(-s(r-s))
    return laurent({2 * k - s * (r - s): c for k, c in counts.items()})


# -- worked examples ---------------------------------------------------------


def test_ring_examples():
    assert (Q + Q**-1) - Q**-1 == Q
    assert X * X**-1 == ONE
    assert (Q**2 - Q**-2) / (Q - Q**-1) == Q + Q**-1
    assert ((Q**2 - Q**-2) / (Q - Q**-1)).is_laurent


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Q / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_q_int_examples():
    assert q_int(0) == ZERO
    assert q_int(2) == Q + Q**-1
    assert q_int(3) == Q**2 + 1 + Q**-2
    assert q_int(-3) == -q_int(3)


def test_q_factorial_examples():
    assert q_factorial(0) == ONE
    assert q_factorial(2) == Q + Q**-1
    # frozen from sympy.expand((q + 1/q)*(q**2 + 1 + q**-2))
    assert sp.expand((oracle.q + 1 / oracle.q) * (oracle.q**2 + 1 + oracle.q**-2)) == sp.sympify(
        "q**3 + 2*q + 2/q + q**-3"
    )
    assert q_factorial(3) == laurent({3: 1, 1: 2, -1: 2, -3: 1})
    with pytest.raises(ValueError):
        q_factorial(-1)


def test_q_binomial_examples():
    assert q_binomial(2, 1) == Q + Q**-1
    assert q_binomial(4, 2) == laurent({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert q_binomial(5, 0) == ONE
    for bad in [(3, -1), (3, 4)]:
        with pytest.raises(ValueError):
            q_binomial(*bad)


@pytest.mark.parametrize("r", range(0, 9))
def test_q_binomial_matches_subset_count(r):
    for s in range(r + 1):
        assert q_binomial(r, s) == gaussian_oracle(r, s)


def test_q_factorial_matches_sympy():
    for r in range(7):
        ours = to_sympy(q_factorial(r))
        assert sp.simplify(ours - oracle.qfact(r)) == 0


def test_specialize_examples():
    assert specialize(Q + Q**-1, 2) == Fraction(5, 2)
    assert specialize(X * Q**-1, 2, 3) == Fraction(3, 2)
    with pytest.raises(SpecializationError):
        specialize(ONE / (Q - Q**-1), 1)
    for bad in [(0, 1, 1), (-1, 1, 1), (2, 0, 1), (2, 1, 0)]:
        with pytest.raises(SpecializationError):
            specialize(ONE, *bad)
    with pytest.raises(SpecializationError):
        specialize(ONE / (Y - X * Q**-2), 2, 1, Fraction(1, 4))


def test_classical_limit_examples():
    assert classical_limit(q_binomial(4, 2)) == 6
    assert classical_limit(q_int(5)) == 5
    assert classical_limit(q_int(0)) == 0
    with pytest.raises(SpecializationError):
        classical_limit(ONE / (Q - Q**-1))


def test_canonical_string_examples():
    assert canonical_string(q_int(2)) == "q^1 + q^-1"
    assert canonical_string(ZERO) == "0"
    assert canonical_string(-X * Q**-2 + Y) == "-1*x^1*q^-2 + y^1"
    assert canonical_string(Scalar(Fraction(-3, 4))) == "-3/4"


def test_canonical_denominator():
    s = (Q**-3 * X) / (Q**2 + 1)
    assert all(min(e) >= 0 for e in s.den.terms)
    # equal values, different spellings
    assert s == (X * Q**-1) / (Q**4 + Q**2)
    assert (2 * X) / (4 * Y + 2) == X / (2 * Y + 1)
    assert ONE / (-Y + X) == -ONE / (Y - X)


def test_parse_rejects_garbage():
    for text in ["q^", "2*z^1", "q^1 +", "(q^1)/"]:
        with pytest.raises(ValueError):
            parse_scalar(text)


# -- properties ---------------------------------------------------------------

exps = st.integers(-3, 3)
monos = st.tuples(exps, exps, exps)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(monos, coeffs, max_size=4).map(lambda d: Scalar.laurent(LaurentPoly(d)))
scalars = st.tuples(polys, polys.filter(lambda p: not p.is_zero)).map(lambda t: t[0] / t[1])


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO
    if not a.is_zero:
        assert a * a.inverse() == ONE


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_arithmetic_matches_sympy(a, b):
    sa, sb = to_sympy(a), to_sympy(b)
    assert sp.simplify(to_sympy(a * b - a) - (sa * sb - sa)) == 0


@settings(max_examples=80, deadline=None)
@given(scalars)
def test_round_trip(a):
    assert parse_scalar(canonical_string(a)) == a
    assert canonical_string(parse_scalar(canonical_string(a))) == canonical_string(a)


@settings(max_examples=40, deadline=None)
@given(scalars, scalars)
def test_equality_criterion(a, b):
    # a == b exactly when a - b canonicalizes to zero
    assert (a == b) == (a - b).is_zero


@given(st.integers(0, 10), st.integers(0, 10))
def test_q_binomial_symmetry_and_pascal(r, s):
    if s > r:
        r, s = s, r
    b = q_binomial(r, s)
    assert b == q_binomial(r, r - s)
    assert Scalar(b.num.substitute_q_inverse(), b.den.substitute_q_inverse()) == b
    if 0 < s < r:
        assert b == Q**-s * q_binomial(r - 1, s) + Q ** (r - s) * q_binomial(r - 1, s - 1)
    assert classical_limit(b) == sp.binomial(r, s)


@given(st.integers(-20, 20))
def test_q_int_limit_and_symmetry(r):
    assert classical_limit(q_int(r)) == r
    two = Fraction(2)
    assert specialize(q_int(r), 2) == (two**r - two**-r) / Fraction(3, 2)


def test_random_round_trip_1000():
    rng = random.Random(20261016)
    for _ in range(1000):
        s = random_scalar(rng)
        assert parse_scalar(canonical_string(s)) == s


def test_exponent_overflow_guard():
    with pytest.raises(OverflowError):
        Q ** (2**31)
