import json
from fractions import Fraction

import pytest
import sympy as sp

from qaffine import basis as bs
from qaffine.repmod import basis_vector
from qaffine.scalars import ONE, Q, X, Y, canonical_string, q_factorial, q_int, q_power

import oracle
from test_linalg import leibniz

GRID = [(m, n) for m in range(1, 5) for n in range(1, m + 1)]


def sym(s):
    return sp.sympify(canonical_string(s).replace("^", "**"))


def test_phi_lj_examples():
    assert bs.phi_lj(1, 1, 1, 1) == basis_vector(1, 1, 1, 0) + basis_vector(1, 1, 0, 1).scale(Q**-1)
    assert bs.phi_lj(1, 1, 1, 0) == basis_vector(1, 1, 1, 0).scale(X * Q**-2) + basis_vector(1, 1, 0, 1).scale(Y * Q**-1)
    assert bs.phi_lj(1, 1, 0, 0, "paper") == basis_vector(1, 1, 0, 0).scale(ONE / (Q + Q**-1))
    with pytest.raises(ValueError):
        bs.phi_lj(1, 2, 0, 0)


def test_delta_matrix_examples():
    mat = bs.delta_matrix(1, 1, 1)
    assert mat.entries == ((Y * Q**-1, X * Q**-2), (Q**-1, ONE))
    assert bs.delta_matrix(1, 1, 0).entries == ((ONE,),)
    assert json.loads(json.dumps(mat.to_json()))["rows"][1] == ["q^-1", "1"]


@pytest.mark.parametrize("m,n,l", [(2, 2, 1), (3, 2, 2), (3, 3, 2)])
def test_delta_matrix_against_sympy(m, n, l):
    ours = sp.Matrix([[sym(v) for v in row] for row in bs.delta_matrix(m, n, l).entries])
    diff = ours - oracle.delta_matrix(m, n, l)
    assert diff.applyfunc(sp.simplify).is_zero_matrix


def test_gamma_top_row():
    for m, n in GRID:
        for l in range(n + 1):
            row = bs.delta_matrix(m, n, l).entries[0]
            for i in range(l + 1):
                # column i holds v_i (x) w_(l-i), the closed form is indexed by the w exponent
                assert row[i] == bs.gamma_top_closed(m, n, l, l - i)


@pytest.mark.parametrize("m,n,l", [(2, 2, 0), (2, 2, 1), (3, 2, 0), (4, 3, 2)])
def test_gamma_recursions(m, n, l):
    assert bs.gamma_recursion_check(m, n, l)
    assert bs.gamma_recursion_check(m, n, l, "paper")


def test_det_examples():
    assert bs.det_exact(bs.delta_matrix(1, 1, 1)) == Q**-1 * (Y - X * Q**-2)
    assert bs.det_exact([[X * Q]]) == X * Q
    assert bs.det_exact([[X, Y], [X, Y]]).is_zero


@pytest.mark.parametrize("m,n,l", [(2, 2, 2), (3, 2, 2), (3, 3, 3)])
def test_det_against_leibniz_and_sympy(m, n, l):
    mat = bs.delta_matrix(m, n, l)
    det = bs.det_exact(mat)
    assert det == leibniz(mat.entries)
    assert sp.simplify(sym(det) - oracle.delta_matrix(m, n, l).det()) == 0


def test_product_formula_examples():
    assert bs.prop31_closed(1, 1, 0) == Q**-1 * (Y - X * Q**-2) / (Q + Q**-1)
    p = bs.prop31_parts(2, 2, 1)
    xy = ONE
    for f, k in p["xy_factors"]:
        xy = xy * f**k
    assert xy == (Y - X * Q**-4) ** 2 * (Y - X * Q**-2)
    assert p["q_power"] == Q**-3


def test_determinant_structure():
    for m, n in GRID:
        for l in range(n):
            rep = bs.determinant_report(m, n, l)
            assert rep.xy_independent
            assert not (rep.ratio.variables() & {"x", "y"})
            json.dumps(rep.to_json())


def test_determinant_has_squared_factorials():
    # |Delta_(l+1)| carries prod [j]! twice: once from gamma_(l+1,0) and once from the lower rows
    for m, n in GRID:
        for l in range(n):
            for norm in bs.NORMALIZATIONS:
                assert bs.det_exact(bs.delta_matrix(m, n, l + 1, norm)) == bs.delta_det_formula(m, n, l, norm)


def test_squared_factorials_in_sympy():
    # (q^2+1)^2 / q^2 = [2]^2 in |Delta_2| for V_2 (x) V_2
    det = sp.factor(oracle.delta_matrix(2, 2, 2).det())
    expected = oracle.q**-3 * oracle.qi(2) ** 2 * (oracle.y - oracle.x * oracle.q**-4) ** 2 * (oracle.y - oracle.x * oracle.q**-2)
    assert sp.simplify(det - expected) == 0


def test_inductive_step_first_level():
    assert bs.inductive_step_check(2, 2, 0)
    assert bs.inductive_c(2, 2, 0) == Q**-1 * (Y - X * Q**-4)


def test_inductive_recursion_with_square():
    for m, n in GRID:
        for l in range(1, n):
            big = bs.det_exact(bs.delta_matrix(m, n, l + 1))
            small = bs.det_exact(bs.delta_matrix(m, n, l))
            assert big == bs.inductive_c(m, n, l) * q_factorial(l + 1) ** 2 * small


def test_basis_sizes():
    assert len(bs.build_delta_basis(1, 1)) == 4
    assert len(bs.build_delta_basis(2, 1)) == 6
    assert len(bs.build_delta_basis(3, 2)) == 12
    assert len(bs.build_lambda_basis(1, 1)) == 4
    assert len(bs.build_lambda_basis(2, 1)) == 6


def test_lambda_vectors_weight_homogeneous():
    for v in bs.build_lambda_basis(3, 2):
        assert len(v.weights()) == 1


def test_criterion_examples():
    r = bs.criterion(1, 1, 2, 1, Fraction(1, 4))
    assert r.failing_j == [0] and not r.criterion_pass
    assert bs.criterion(1, 1, 2, 3, 5).criterion_pass
    assert bs.criterion(1, 1, 2, 1, 4, dual=True).failing_j == [0]


def test_rank_examples():
    assert bs.rank_certify(bs.build_delta_basis(1, 1), 2, 3, 5) == 4
    assert bs.rank_certify(bs.build_delta_basis(1, 1), 2, 1, Fraction(1, 4)) < 4
    assert bs.rank_symbolic(bs.build_delta_basis(2, 1)) == 6


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_ranks_against_sympy(m, n):
    ours = {"delta": bs.build_delta_basis(m, n), "lambda": bs.build_lambda_basis(m, n)}
    theirs = {"delta": oracle.delta_vectors(m, n), "lambda": oracle.lambda_vectors(m, n)}
    points = [(2, 3, 5)] + [(2, 1, Fraction(2) ** (s * (m + n - 2 * j))) for s in (1, -1) for j in range(n)]
    for name in ours:
        for pt in points:
            assert bs.rank_certify(ours[name], *pt) == oracle.rank_at(theirs[name], *pt), (name, pt)


def test_lambda_degenerates_on_delta_hyperplanes():
    for m, n in GRID:
        vectors = bs.build_lambda_basis(m, n)
        full = (m + 1) * (n + 1)
        for j in range(n):
            assert bs.rank_certify(vectors, 2, 3, Fraction(3) * Fraction(2) ** (-m - n + 2 * j)) < full


def test_certify_report():
    rep = bs.certify_basis(2, 1)
    assert rep.is_basis and rep.consistent
    data = json.loads(json.dumps(rep.to_json()))
    assert data["rank"] == 6 and data["specialization"] == {"q": "2", "x": "3", "y": "5"}
