"""Evaluation modules V_m(x) of U_q(sl2-hat) and their tensor products.

The standard module V_m has basis v_0..v_m with

    K v_i = q^(m-2i) v_i,   f v_i = [i+1] v_(i+1),   e v_i = [m+1-i] v_(i-1),

out-of-range indices dropped. The affine generators act through the
evaluation map (e0 -> q^-1 x f, f0 -> q x^-1 e, K0 -> K^-1, and the index-1
generators as e, f, K). On V_m(x) (x) V_n(y) the left leg uses x and the right
leg y, combined through the coproduct

    D(e_i) = e_i (x) K_i + 1 (x) e_i,   D(f_i) = f_i (x) 1 + K_i^-1 (x) f_i,
    D(K_i) = K_i (x) K_i.

All actions are sparse rewrites on coefficient maps; nothing is materialized
as a matrix here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .linalg import nullspace
from .scalars import (
    ONE,
    X,
    Y,
    ZERO,
    Q,
    Scalar,
    ScalarLike,
    canonical_string,
    parse_scalar,
    q_int,
    q_power,
)

__all__ = [
    "Gen",
    "ModuleShape",
    "ModuleElement",
    "TensorElement",
    "act_sl2",
    "act_eval",
    "act_tensor",
    "act_word",
    "basis_vector",
    "tensor_basis",
    "check_relations",
    "check_sl2_relations",
    "weight_indices",
    "RelationReport",
    "highest_weight_kernel",
    "k_weight",
]


class Gen(enum.Enum):
    # finite type
    E = "e"
    F = "f"
    K = "K"
    KINV = "Kinv"
    # affine
    E0 = "e0"
    E1 = "e1"
    F0 = "f0"
    F1 = "f1"
    K0 = "K0"
    K0INV = "K0inv"
    K1 = "K1"
    K1INV = "K1inv"

    @property
    def is_affine(self) -> bool:
        return self not in _FINITE


_FINITE = {Gen.E, Gen.F, Gen.K, Gen.KINV}


@dataclass(frozen=True)
class ModuleShape:
    m: int
    param: Scalar = X

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("module dimension parameter m must be nonnegative")


@dataclass(frozen=True)
class ModuleElement:
    shape: ModuleShape
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        for i in self.coeffs:
            if not 0 <= i <= self.shape.m:
                raise IndexError(f"basis index {i} outside 0..{self.shape.m}")

    @classmethod
    def build(cls, shape: ModuleShape, pairs: Iterable) -> "ModuleElement":
        acc: dict = {}
        for i, c in pairs:
            if 0 <= i <= shape.m:
                acc[i] = acc.get(i, ZERO) + c
        return cls(shape, {i: c for i, c in acc.items() if c})

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement.build(self.shape, [*self.coeffs.items(), *other.coeffs.items()])

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + other.scale(-1)

    def scale(self, c: ScalarLike) -> "ModuleElement":
        return ModuleElement.build(self.shape, [(i, v * c) for i, v in self.coeffs.items()])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs


# -- single-leg actions ------------------------------------------------------
# Each returns a list of (index, coefficient) for the image of basis vector i.


def _sl2_on_basis(g: Gen, m: int, i: int) -> list:
    if g is Gen.K:
        return [(i, q_power(m - 2 * i))]
    if g is Gen.KINV:
        return [(i, q_power(2 * i - m))]
    if g is Gen.F:
        return [(i + 1, q_int(i + 1))] if i < m else []
    if g is Gen.E:
        return [(i - 1, q_int(m + 1 - i))] if i > 0 else []
    raise ValueError(f"{g} is not a finite-type generator")


_EVAL = {
    Gen.E1: (Gen.E, None),
    Gen.F1: (Gen.F, None),
    Gen.K1: (Gen.K, None),
    Gen.K1INV: (Gen.KINV, None),
    Gen.K0: (Gen.KINV, None),
    Gen.K0INV: (Gen.K, None),
    Gen.E0: (Gen.F, "e0"),
    Gen.F0: (Gen.E, "f0"),
}


def _eval_scale(kind, param: Scalar) -> Scalar:
    if kind is None:
        return ONE
    if kind == "e0":
        return q_power(-1) * param
    return Q / param


def _eval_on_basis(g: Gen, m: int, param: Scalar, i: int) -> list:
    if not g.is_affine:
        return _sl2_on_basis(g, m, i)
    finite, kind = _EVAL[g]
    out = _sl2_on_basis(finite, m, i)
    if kind is None:
        return out
    s = _eval_scale(kind, param)
    return [(j, c * s) for j, c in out]


def act_sl2(g: Gen, v: ModuleElement) -> ModuleElement:
    if g.is_affine:
        raise ValueError(f"{g} is not a finite-type generator")
    m = v.shape.m
    return ModuleElement.build(
        v.shape, [(j, c * a) for i, a in v.coeffs.items() for j, c in _sl2_on_basis(g, m, i)]
    )


def act_eval(g: Gen, v: ModuleElement) -> ModuleElement:
    """Action of an affine generator on V_m(param) via the evaluation map."""
    m, p = v.shape.m, v.shape.param
    return ModuleElement.build(
        v.shape, [(j, c * a) for i, a in v.coeffs.items() for j, c in _eval_on_basis(g, m, p, i)]
    )


# -- tensor product ----------------------------------------------------------


@dataclass(frozen=True)
class TensorElement:
    """Element of V_m(left_param) (x) V_n(right_param), keyed by (i, j)."""

    m: int
    n: int
    coeffs: dict = field(default_factory=dict)
    left_param: Scalar = X
    right_param: Scalar = Y

    def __post_init__(self):
        for i, j in self.coeffs:
            if not (0 <= i <= self.m and 0 <= j <= self.n):
                raise IndexError(f"basis index {(i, j)} outside V_{self.m} (x) V_{self.n}")

    @classmethod
    def build(cls, m: int, n: int, pairs: Iterable, left_param=X, right_param=Y) -> "TensorElement":
        acc: dict = {}
        for key, c in pairs:
            i, j = key
            if 0 <= i <= m and 0 <= j <= n:
                acc[key] = acc[key] + c if key in acc else c
        return cls(m, n, {k: c for k, c in acc.items() if c}, left_param, right_param)

    def _like(self, pairs) -> "TensorElement":
        return TensorElement.build(self.m, self.n, pairs, self.left_param, self.right_param)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check_compatible(other)
        return self._like([*self.coeffs.items(), *other.coeffs.items()])

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._check_compatible(other)
        return self._like([*self.coeffs.items(), *((k, -c) for k, c in other.coeffs.items())])

    def __neg__(self):
        return self._like((k, -c) for k, c in self.coeffs.items())

    def scale(self, c: ScalarLike) -> "TensorElement":
        return self._like((k, v * c) for k, v in self.coeffs.items())

    def _check_compatible(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("tensor elements live in different modules")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.m, self.n, self.coeffs) == (other.m, other.n, other.coeffs)

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.coeffs.items())))

    def get(self, i: int, j: int) -> Scalar:
        return self.coeffs.get((i, j), ZERO)

    def weights(self) -> set:
        """Set of index sums i + j on the support (one element for homogeneous vectors)."""
        return {i + j for i, j in self.coeffs}

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "coeffs": [
                {"i": i, "j": j, "value": canonical_string(c)}
                for (i, j), c in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TensorElement":
        return cls.build(
            data["m"],
            data["n"],
            [((e["i"], e["j"]), parse_scalar(e["value"])) for e in data["coeffs"]],
        )

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({canonical_string(c)})*v{i}w{j}" for (i, j), c in sorted(self.coeffs.items())
        )


def basis_vector(m: int, n: int, i: int, j: int, left_param=X, right_param=Y) -> TensorElement:
    return TensorElement(m, n, {(i, j): ONE}, left_param, right_param)


def tensor_basis(m: int, n: int, left_param=X, right_param=Y) -> list:
    return [
        basis_vector(m, n, i, j, left_param, right_param) for i in range(m + 1) for j in range(n + 1)
    ]


# (left, right) pairs; None is the identity.
_COPRODUCT = {
    Gen.E0: [(Gen.E0, Gen.K0), (None, Gen.E0)],
    Gen.E1: [(Gen.E1, Gen.K1), (None, Gen.E1)],
    Gen.F0: [(Gen.F0, None), (Gen.K0INV, Gen.F0)],
    Gen.F1: [(Gen.F1, None), (Gen.K1INV, Gen.F1)],
    Gen.K0: [(Gen.K0, Gen.K0)],
    Gen.K0INV: [(Gen.K0INV, Gen.K0INV)],
    Gen.K1: [(Gen.K1, Gen.K1)],
    Gen.K1INV: [(Gen.K1INV, Gen.K1INV)],
}

_ALIASES = {Gen.E: Gen.E1, Gen.F: Gen.F1, Gen.K: Gen.K1, Gen.KINV: Gen.K1INV}


def _leg(g, m, param, i):
    if g is None:
        return [(i, ONE)]
    return _eval_on_basis(g, m, param, i)


def act_tensor(g: Gen, t: TensorElement) -> TensorElement:
    """Affine generator acting on V_m(x) (x) V_n(y) through the coproduct.

    Finite-type generators are accepted as e -> e1, f -> f1, K -> K1.
    """
    g = _ALIASES.get(g, g)
    m, n, px, py = t.m, t.n, t.left_param, t.right_param
    out: dict = {}
    for (i, j), a in t.coeffs.items():
        for left, right in _COPRODUCT[g]:
            for i2, cl in _leg(left, m, px, i):
                for j2, cr in _leg(right, n, py, j):
                    c = a * cl * cr
                    key = (i2, j2)
                    out[key] = out[key] + c if key in out else c
    return TensorElement(m, n, {k: c for k, c in out.items() if c}, px, py)


def act_word(word: Sequence[Gen], t: TensorElement) -> TensorElement:
    """Apply a generator word, rightmost generator first."""
    for g in reversed(word):
        t = act_tensor(g, t)
    return t


def k_weight(g: Gen, m: int, n: int, i: int, j: int) -> int:
    """Exponent of q in the K_i eigenvalue of v_i (x) w_j (index from the generator name)."""
    w = (m - 2 * i) + (n - 2 * j)
    return -w if g in (Gen.E0, Gen.F0, Gen.K0, Gen.K0INV) else w


# -- relations ---------------------------------------------------------------

# A relation is a list of (coefficient, word) whose sum must act as zero.
Relation = list


def _affine_relations() -> dict:
    K = {0: Gen.K0, 1: Gen.K1}
    KI = {0: Gen.K0INV, 1: Gen.K1INV}
    E = {0: Gen.E0, 1: Gen.E1}
    F = {0: Gen.F0, 1: Gen.F1}
    q2, qm2 = q_power(2), q_power(-2)
    inv_qq = ONE / (Q - q_power(-1))
    three = q_int(3)
    rels: dict = {}
    for i in (0, 1):
        rels[f"K{i}K{i}^-1=1"] = [(ONE, [K[i], KI[i]]), (-ONE, [])]
        rels[f"K{i}^-1K{i}=1"] = [(ONE, [KI[i], K[i]]), (-ONE, [])]
        rels[f"[e{i},f{i}]=(K{i}-K{i}^-1)/(q-q^-1)"] = [
            (ONE, [E[i], F[i]]),
            (-ONE, [F[i], E[i]]),
            (-inv_qq, [K[i]]),
            (inv_qq, [KI[i]]),
        ]
        for j in (0, 1):
            s_e, s_f = (q2, qm2) if i == j else (qm2, q2)
            rels[f"K{i}e{j}K{i}^-1"] = [(ONE, [K[i], E[j], KI[i]]), (-s_e, [E[j]])]
            rels[f"K{i}f{j}K{i}^-1"] = [(ONE, [K[i], F[j], KI[i]]), (-s_f, [F[j]])]
        j = 1 - i
        for name, G in (("e", E), ("f", F)):
            rels[f"serre_{name}{i}{j}"] = [
                (ONE, [G[i]] * 3 + [G[j]]),
                (-three, [G[i]] * 2 + [G[j], G[i]]),
                (three, [G[i], G[j]] + [G[i]] * 2),
                (-ONE, [G[j]] + [G[i]] * 3),
            ]
    rels["K0K1=K1K0"] = [(ONE, [Gen.K0, Gen.K1]), (-ONE, [Gen.K1, Gen.K0])]
    rels["[e0,f1]=0"] = [(ONE, [Gen.E0, Gen.F1]), (-ONE, [Gen.F1, Gen.E0])]
    rels["[e1,f0]=0"] = [(ONE, [Gen.E1, Gen.F0]), (-ONE, [Gen.F0, Gen.E1])]
    return rels


def _sl2_relations() -> dict:
    inv_qq = ONE / (Q - q_power(-1))
    return {
        "KK^-1=1": [(ONE, [Gen.K, Gen.KINV]), (-ONE, [])],
        "K^-1K=1": [(ONE, [Gen.KINV, Gen.K]), (-ONE, [])],
        "KeK^-1=q^2e": [(ONE, [Gen.K, Gen.E, Gen.KINV]), (-q_power(2), [Gen.E])],
        "KfK^-1=q^-2f": [(ONE, [Gen.K, Gen.F, Gen.KINV]), (-q_power(-2), [Gen.F])],
        "[e,f]=(K-K^-1)/(q-q^-1)": [
            (ONE, [Gen.E, Gen.F]),
            (-ONE, [Gen.F, Gen.E]),
            (-inv_qq, [Gen.K]),
            (inv_qq, [Gen.KINV]),
        ],
    }


AFFINE_RELATIONS = _affine_relations()
SL2_RELATIONS = _sl2_relations()


@dataclass
class RelationReport:
    m: int
    n: int
    checked: int = 0
    failures: list = field(default_factory=list)  # (relation name, (i, j), residual)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_violation(self):
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "checked": self.checked,
            "ok": self.ok,
            "failures": [
                {"relation": name, "basis": list(ij), "residual": r.to_json()}
                for name, ij, r in self.failures
            ],
        }


def _apply_relation(rel: Relation, t: TensorElement, act: Callable) -> TensorElement:
    total = TensorElement(t.m, t.n, {}, t.left_param, t.right_param)
    for coeff, word in rel:
        v = t
        for g in reversed(word):
            v = act(g, v)
        total = total + v.scale(coeff)
    return total


def check_relations(m: int, n: int, relations: dict | None = None, stop_at_first: bool = False) -> RelationReport:
    """Check each defining relation on every basis vector of V_m(x) (x) V_n(y)."""
    relations = AFFINE_RELATIONS if relations is None else relations
    report = RelationReport(m, n)
    for name, rel in relations.items():
        for b in tensor_basis(m, n):
            residual = _apply_relation(rel, b, act_tensor)
            report.checked += 1
            if not residual.is_zero:
                (ij,) = b.coeffs
                report.failures.append((name, ij, residual))
                if stop_at_first:
                    return report
    return report


def check_sl2_relations(m: int) -> list:
    """Names of finite-type relations failing on V_m (empty when all hold)."""
    failed = []
    shape = ModuleShape(m)
    for name, rel in SL2_RELATIONS.items():
        for i in range(m + 1):
            v = ModuleElement(shape, {i: ONE})
            total = ModuleElement(shape, {})
            for coeff, word in rel:
                w = v
                for g in reversed(word):
                    w = act_sl2(g, w)
                total = total + w.scale(coeff)
            if not total.is_zero:
                failed.append((name, i))
    return failed


# -- highest weight vectors --------------------------------------------------


def weight_indices(m: int, n: int, l: int) -> list:
    """Basis pairs (i, l - i) spanning the weight space with index sum l."""
    return [(i, l - i) for i in range(max(0, l - n), min(l, m) + 1)]


def highest_weight_kernel(m: int, n: int, l: int) -> list:
    """Basis of ker(e1) on span{v_i (x) w_(l-i)}."""
    if not 0 <= l <= min(m, n):
        raise ValueError(f"l = {l} outside 0..min(m, n)")
    cols = weight_indices(m, n, l)
    images = [act_tensor(Gen.E1, basis_vector(m, n, i, j)) for i, j in cols]
    rows = weight_indices(m, n, l - 1) if l > 0 else []
    matrix = [[img.get(*r) for img in images] for r in rows]
    kernel = nullspace(matrix, len(cols))
    return [TensorElement.build(m, n, zip(cols, vec)) for vec in kernel]
