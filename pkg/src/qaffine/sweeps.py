"""Parameter sweeps behind ``qaffine verify``.

Every check is a top-level function taking keyword parameters and returning a
record ``{"check": name, "params": {...}, "ok": bool, ...}``, so sweeps can be
farmed out to worker processes and collected in order.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from . import basis, extremal, identities, repmod
from .scalars import (
    ONE,
    LaurentPoly,
    Scalar,
    canonical_string,
    classical_limit,
    parse_scalar,
)

SCOPES = (
    "relations",
    "identities",
    "extremal",
    "alpha",
    "lemmas",
    "determinant",
    "basis",
    "scalars",
)

# Acceptance-criterion sizes.
DEFAULTS = {
    "relations": {"max_m": 3, "max_n": 3},
    "identities": {"max_m": 20, "corollary_max_m": 30, "limit_max_m": 12, "lemma31_max_l": 12, "lemma32_max_l": 10, "lemma32_max_s": 10},
    "extremal": {"max_m": 5, "coproduct_max": 4},
    "alpha": {"max_m": 5},
    "lemmas": {"max_m": 5},
    "determinant": {"max_m": 5},
    "basis": {"max_m": 4},
    "scalars": {"cases": 1000},
}


@dataclass
class SweepConfig:
    max_m: Optional[int] = None
    max_n: Optional[int] = None
    normalization: str = "unit"
    point: tuple = (Fraction(2), Fraction(3), Fraction(5))
    seed: int = 0

    def __post_init__(self):
        for name in ("max_m", "max_n"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive")
        if self.normalization not in basis.NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")


def _record(check: str, params: dict, ok: bool, **extra) -> dict:
    return {"check": check, "params": params, "ok": bool(ok), **extra}


# -- individual checks -------------------------------------------------------


def check_relations(m, n):
    rep = repmod.check_relations(m, n)
    extra = {}
    if not rep.ok:
        name, ij, _ = rep.first_violation
        extra["first_violation"] = {"relation": name, "basis": list(ij)}
    return _record("relations", {"m": m, "n": n}, rep.ok, checked=rep.checked, **extra)


def check_sl2_relations(m):
    failed = repmod.check_sl2_relations(m)
    return _record("sl2_relations", {"m": m}, not failed, failed=[list(f) for f in failed])


def check_theorem21(m, l):
    r = identities.theorem21_check(m, l)
    return _record("theorem21", {"m": m, "l": l}, r.holds)


def check_corollary(m, l):
    r = identities.corollary_check(m, l)
    return _record("corollary", {"m": m, "l": l}, r.holds and r.lhs == identities.corollary_sum(m, l))


def check_classical_limit(m, l):
    ok = classical_limit(identities.theorem21_lhs(m, l)) == identities.corollary_sum(m, l)
    return _record("theorem21_classical_limit", {"m": m, "l": l}, ok)


def check_lemma31(l):
    ks = identities.lemma31_admissible_k(l)
    ok = all(identities.lemma31_check(l, k).holds for k in ks)
    return _record("lemma31", {"l": l}, ok, k=ks)


def check_lemma32(l, s):
    return _record("lemma32", {"l": l, "s": s}, identities.lemma32_check(l, s).holds)


def check_extremal(m, n, l):
    om = extremal.omega(m, n, l)
    ph = extremal.phi(m, n, l)
    killed = (
        repmod.act_tensor(repmod.Gen.E1, om.value).is_zero
        and repmod.act_tensor(repmod.Gen.F1, ph.value).is_zero
    )
    (kernel,) = repmod.highest_weight_kernel(m, n, l)
    u = extremal.omega(m, n, l, "unit").value
    (i0, j0), c0 = next(iter(kernel.coeffs.items()))
    proportional = u == kernel.scale(u.get(i0, j0) / c0)
    return _record("extremal", {"m": m, "n": n, "l": l}, killed and proportional and not om.degenerate)


def check_degenerate(m, n):
    om = extremal.omega(m, n, n)
    return _record("omega_degenerate_at_n", {"m": m, "n": n}, om.degenerate and om.value.is_zero)


def check_coproduct(m, n):
    ok = True
    for k in range(m + n + 1):
        for b in repmod.tensor_basis(m, n):
            if extremal.coproduct_f_power(k, b) != extremal.f_power(k, b):
                ok = False
    return _record("coproduct_f_power", {"m": m, "n": n}, ok)


def check_alpha(m, n, l):
    d = extremal.alpha_direct(m, n, l).value
    s = extremal.alpha_sum(m, n, l).value
    c = extremal.alpha_closed(m, n, l).value
    ok = d == s == c
    if l >= 1:
        ok = ok and c / extremal.alpha_closed(m, n, l - 1).value == extremal.alpha_ratio_formula(m, n, l)
    return _record("alpha", {"m": m, "n": n, "l": l}, ok, value=canonical_string(c))


def check_lemma21(m, n, l):
    ok = extremal.lemma21_check(m, n, l)
    dec = extremal.decompose_e0_omega(m, n, l)
    return _record("lemma21", {"m": m, "n": n, "l": l}, ok and dec.matches_formula)


def check_lemma22(m, n, l):
    return _record("lemma22", {"m": m, "n": n, "l": l}, extremal.lemma22_check(m, n, l))


def determinant_subchecks(m, n, l, normalization="unit") -> dict:
    """Sub-checks of the determinant formula for |Delta_(l+1)|."""
    rep = basis.determinant_report(m, n, l, normalization)
    p = basis.prop31_parts(m, n, l)
    ratio = rep.ratio
    # the xy-free part must be bar-invariant once the printed q-power is removed
    q_free = rep.prefactor
    bar = Scalar(q_free.num.substitute_q_inverse(), q_free.den.substitute_q_inverse())
    row_scale = ONE
    if normalization == "paper":
        row_scale = extremal.omega_coefficient(m, n, 0, 0, "paper") ** (l + 2)
    constant = ratio / row_scale
    first = basis.determinant_report(m, n, 0, normalization)
    first_constant = first.ratio / (
        extremal.omega_coefficient(m, n, 0, 0, "paper") ** 2 if normalization == "paper" else ONE
    )
    return {
        "xy_independent_ratio": not (ratio.variables() & {"x", "y"}),
        "xy_factorization": rep.xy_independent,
        "q_power": q_free == bar,
        "factorial_product": constant == first_constant,
        "inductive_step": basis.inductive_step_check(m, n, l, normalization),
        "_report": rep,
        "_constant": constant,
        "_parts": p,
    }


def check_determinant(m, n, l, normalization="unit"):
    sub = determinant_subchecks(m, n, l, normalization)
    rep = sub.pop("_report")
    constant = sub.pop("_constant")
    sub.pop("_parts")
    return _record(
        "determinant",
        {"m": m, "n": n, "l": l, "normalization": normalization},
        all(sub.values()),
        subchecks=sub,
        ratio=canonical_string(rep.ratio),
        constant=canonical_string(constant),
    )


def check_determinant_formula(m, n, l, normalization="unit"):
    det = basis.det_exact(basis.delta_matrix(m, n, l + 1, normalization))
    ok = det == basis.delta_det_formula(m, n, l, normalization)
    return _record("determinant_squared_factorials", {"m": m, "n": n, "l": l, "normalization": normalization}, ok)


def check_lambda_observed(m, n, q0, x0, normalization="unit"):
    """Lambda loses rank on the same hyperplanes y = x q^(-m-n+2j) as Delta."""
    vectors = basis.build_lambda_basis(m, n, normalization)
    full = (m + 1) * (n + 1)
    ok = all(
        basis.rank_certify(vectors, q0, x0, Fraction(x0) * Fraction(q0) ** (-m - n + 2 * j)) < full
        for j in range(n)
    )
    return _record("lambda_basis_delta_hyperplanes", {"m": m, "n": n}, ok)


def check_basis(m, n, q0, x0, y0, dual, normalization="unit"):
    vectors = basis.build_lambda_basis(m, n, normalization) if dual else basis.build_delta_basis(m, n, normalization)
    size_ok = len(vectors) == (m + 1) * (n + 1)
    generic = basis.rank_certify(vectors, q0, x0, y0) == (m + 1) * (n + 1)
    sign = 1 if dual else -1
    deficient = {}
    for j in range(n):
        y_bad = Fraction(x0) * Fraction(q0) ** (sign * (m + n) - sign * 2 * j)
        deficient[j] = basis.rank_certify(vectors, q0, x0, y_bad) < (m + 1) * (n + 1)
    return _record(
        "lambda_basis" if dual else "delta_basis",
        {"m": m, "n": n},
        size_ok and generic and all(deficient.values()),
        size=len(vectors),
        generic_full_rank=generic,
        deficient_on_hyperplanes={str(j): v for j, v in deficient.items()},
    )


def random_laurent(rng: random.Random, terms: int = 3, span: int = 3) -> LaurentPoly:
    return LaurentPoly(
        {
            (rng.randint(-span, span), rng.randint(-span // 2, span // 2), rng.randint(-span // 2, span // 2)):
            Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            for _ in range(rng.randint(1, terms))
        }
    )


def random_scalar(rng: random.Random) -> Scalar:
    den = random_laurent(rng, 2)
    while den.is_zero:
        den = random_laurent(rng, 2)
    return Scalar(random_laurent(rng), den)


def check_scalars(seed, cases):
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        a, b, c = random_scalar(rng), random_scalar(rng), random_scalar(rng)
        ok = (
            (a + b) + c == a + (b + c)
            and (a * b) * c == a * (b * c)
            and a * (b + c) == a * b + a * c
            and a + b == b + a
            and a * b == b * a
            and (a.is_zero or a * a.inverse() == ONE)
            and parse_scalar(canonical_string(a)) == a
        )
        bad += not ok
    return _record("scalars", {"seed": seed, "cases": cases}, bad == 0, failures=bad)


# -- task lists --------------------------------------------------------------


def _bound(cfg_value, default):
    return default if cfg_value is None else cfg_value


def tasks(scope: str, cfg: SweepConfig) -> Iterator[tuple]:
    """(function name, kwargs) pairs for one scope."""
    d = DEFAULTS[scope]
    if scope == "relations":
        mm, nn = _bound(cfg.max_m, d["max_m"]), _bound(cfg.max_n, d["max_n"])
        for m in range(mm + 1):
            yield "check_sl2_relations", {"m": m}
            for n in range(nn + 1):
                yield "check_relations", {"m": m, "n": n}
    elif scope == "identities":
        mm = _bound(cfg.max_m, d["max_m"])
        for m in range(1, mm + 1):
            for l in range(1, m + 1):
                yield "check_theorem21", {"m": m, "l": l}
        for m in range(1, _bound(cfg.max_m, d["corollary_max_m"]) + 1):
            for l in range(1, m + 1):
                yield "check_corollary", {"m": m, "l": l}
        for m in range(1, min(mm, d["limit_max_m"]) + 1):
            for l in range(1, m + 1):
                yield "check_classical_limit", {"m": m, "l": l}
        for l in range(1, min(mm, d["lemma31_max_l"]) + 1):
            yield "check_lemma31", {"l": l}
        smax = d["lemma32_max_s"]
        for l in range(1, min(mm, d["lemma32_max_l"]) + 1):
            for s in range(-smax, smax + 1):
                yield "check_lemma32", {"l": l, "s": s}
    elif scope in ("extremal", "alpha", "lemmas", "determinant", "basis"):
        mm = _bound(cfg.max_m, d["max_m"])
        nn = _bound(cfg.max_n, mm)
        pairs = [(m, n) for m in range(1, mm + 1) for n in range(1, min(m, nn) + 1)]
        for m, n in pairs:
            if scope == "extremal":
                for l in range(n):
                    yield "check_extremal", {"m": m, "n": n, "l": l}
                yield "check_degenerate", {"m": m, "n": n}
                if m <= d["coproduct_max"]:
                    yield "check_coproduct", {"m": m, "n": n}
            elif scope == "alpha":
                for l in range(n):
                    yield "check_alpha", {"m": m, "n": n, "l": l}
            elif scope == "lemmas":
                for l in range(1, n):
                    yield "check_lemma21", {"m": m, "n": n, "l": l}
                for l in range(1, n + 1):
                    if l < m:
                        yield "check_lemma22", {"m": m, "n": n, "l": l}
            elif scope == "determinant":
                for l in range(n):
                    yield "check_determinant", {"m": m, "n": n, "l": l, "normalization": cfg.normalization}
                    yield "check_determinant_formula", {"m": m, "n": n, "l": l, "normalization": cfg.normalization}
            else:
                q0, x0, y0 = cfg.point
                for dual in (False, True):
                    yield "check_basis", {
                        "m": m, "n": n, "q0": q0, "x0": x0, "y0": y0, "dual": dual,
                        "normalization": cfg.normalization,
                    }
                yield "check_lambda_observed", {"m": m, "n": n, "q0": q0, "x0": x0, "normalization": cfg.normalization}
        if scope == "extremal":
            for m in range(d["coproduct_max"] + 1):
                for n in range(m + 1, d["coproduct_max"] + 1):
                    yield "check_coproduct", {"m": m, "n": n}
    elif scope == "scalars":
        yield "check_scalars", {"seed": cfg.seed, "cases": d["cases"]}
    else:
        raise ValueError(f"unknown scope {scope!r}")


def run_task(task: tuple) -> dict:
    name, kwargs = task
    try:
        return globals()[name](**kwargs)
    except Exception as exc:  # report, don't abort the sweep
        return _record(name.removeprefix("check_"), kwargs, False, error=f"{type(exc).__name__}: {exc}")


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("QAFFINE_THREADS", "1")))
    except ValueError:
        return 1


def run(scopes, cfg: SweepConfig, workers: Optional[int] = None) -> Iterator[dict]:
    """Run scopes in order, yielding records in task order."""
    todo = [t for s in scopes for t in tasks(s, cfg)]
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        for t in todo:
            yield run_task(t)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(run_task, todo)
