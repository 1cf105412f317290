"""Independent sympy reference: explicit matrices for V_m(x) (x) V_n(y).

Shares no code with qaffine. Used to freeze derived values and to cross-check
the determinant and rank results.
"""

from functools import lru_cache

import sympy as sp

q, x, y = sp.symbols("q x y")


def qi(r):
    return sp.cancel((q**r - q**-r) / (q - 1 / q))


def qfact(r):
    out = sp.Integer(1)
    for s in range(1, r + 1):
        out *= qi(s)
    return out


@lru_cache(maxsize=None)
def sl2(m):
    E = sp.zeros(m + 1)
    F = sp.zeros(m + 1)
    K = sp.zeros(m + 1)
    for i in range(m + 1):
        K[i, i] = q ** (m - 2 * i)
        if i >= 1:
            E[i - 1, i] = qi(m - i + 1)
        if i < m:
            F[i + 1, i] = qi(i + 1)
    return E, F, K


@lru_cache(maxsize=None)
def tensor_ops(m, n):
    """Matrices of e, f, e0, f0 on V_m(x) (x) V_n(y); index i*(n+1)+j."""
    E1, F1, K1 = sl2(m)
    E2, F2, K2 = sl2(n)
    I1, I2 = sp.eye(m + 1), sp.eye(n + 1)
    kp = sp.kronecker_product
    e = kp(E1, K2) + kp(I1, E2)
    f = kp(F1, I2) + kp(K1.inv(), F2)
    # ev_x: e0 -> q^-1 x f, f0 -> q x^-1 e, K0 -> K^-1
    e0 = kp(F1 * x / q, K2.inv()) + kp(I1, F2 * y / q)
    f0 = kp(E1 * q / x, I2) + kp(K1, E2 * q / y)
    return {"e": e, "f": f, "e0": e0, "f0": f0}


def unit(m, n, i, j):
    v = sp.zeros((m + 1) * (n + 1), 1)
    v[i * (n + 1) + j] = 1
    return v


def delta_matrix(m, n, l):
    ops = tensor_ops(m, n)
    rows = []
    for j in range(l + 1):
        v = unit(m, n, 0, 0)
        for _ in range(j):
            v = ops["f"] * v
        for _ in range(l - j):
            v = ops["e0"] * v
        rows.append([sp.cancel(v[i * (n + 1) + l - i]) for i in range(l + 1)])
    return sp.Matrix(rows)


def _family(m, n, dual):
    ops = tensor_ops(m, n)
    raise_op = ops["e"] if dual else ops["f"]
    level_op, mixed_op = (ops["f0"], ops["e"]) if dual else (ops["e0"], ops["f"])
    start = unit(m, n, m, n) if dual else unit(m, n, 0, 0)

    def level(l):
        vs = []
        for j in range(l + 1):
            v = start
            for _ in range(j):
                v = mixed_op * v
            for _ in range(l - j):
                v = level_op * v
            vs.append(v)
        return vs

    def power(k, v):
        for _ in range(k):
            v = raise_op * v
        return v

    out = []
    for l in range(n):
        out.extend(level(l))
    for l in range(n):
        out.extend(power(m + n - 2 * l, v) for v in level(l))
    for i in range(m - n + 1):
        out.extend(power(i, v) for v in level(n))
    return out


def delta_vectors(m, n):
    return _family(m, n, dual=False)


def lambda_vectors(m, n):
    return _family(m, n, dual=True)


def rank_at(vectors, q0, x0, y0):
    M = sp.Matrix.hstack(*vectors).subs({q: q0, x: x0, y: y0})
    return M.rank()
