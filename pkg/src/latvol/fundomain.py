"""Nearest-to-identity reduction over unimodular column changes.

For an integer matrix A with det A = d > 0, the orbit {A @ g : det g = 1}
has a unique member minimizing the squared Frobenius distance
|M / d^(1/k) - I|^2 once ties are broken lexicographically on the matrix
entries (row-major).  The minimizer is found by exhaustive search over
an exact integer ball, so every comparison is rational: for candidates
M1, M2 the sign of the distance difference equals the sign of
(a1 - a2) * d^(-1/k) - 2 * (b1 - b2) with a = |M|_F^2 and b = tr M,
which is decided by comparing |a1 - a2|^k against 2^k |b1 - b2|^k d.

Guaranteed-exact for k = 2; k = 3 runs the same scheme behind an
explicit operation budget.  The set of fixed points ("the cone F") is
the chosen fundamental domain for the column action on positive
determinant matrices.
"""

from fractions import Fraction
from itertools import permutations, product
from math import gcd, isqrt, sqrt
from typing import NamedTuple

from .errors import BudgetExceededError, InvariantError, PreconditionError
from .lattice import LatticeBasis, greedy_basis, short_coefficient_vectors
from .linalg import det_int, ext_gcd, inverse_fraction, mat_mul, vec_gcd


class ReduceResult(NamedTuple):
    gamma: tuple
    rep: tuple


def _as_rows(matrix):
    entries = getattr(matrix, "entries", matrix)
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise PreconditionError("matrix must be square")
    return rows


def _sign(x):
    return (x > 0) - (x < 0)


def _floor_div(a, b):
    return a // b


def _ceil_div(a, b):
    return -((-a) // b)


def _frob_tr(rows):
    a = sum(e * e for row in rows for e in row)
    b = sum(rows[i][i] for i in range(len(rows)))
    return a, b


def _cmp_keys(a1, b1, a2, b2, d, k):
    """Sign of f(M1) - f(M2) where f(M) = |M d^(-1/k) - I|_F^2.

    The difference is (a1 - a2) x^2 - 2 (b1 - b2) x with x = d^(-1/k) > 0,
    so dividing by x leaves sign((a1 - a2) x - 2 (b1 - b2)).
    """
    da = a1 - a2
    db = b1 - b2
    if da == 0:
        return -_sign(db)
    if db == 0:
        return _sign(da)
    if da > 0 and db < 0:
        return 1
    if da < 0 and db > 0:
        return -1
    # same sign: da * d^(-1/k) vs 2 db reduces to |da|^k vs 2^k |db|^k d
    lhs = abs(da) ** k
    rhs = (2**k) * abs(db) ** k * d
    if lhs == rhs:
        return 0
    if da > 0:
        return 1 if lhs > rhs else -1
    return 1 if lhs < rhs else -1


def compare_distance(A, gamma1, gamma2):
    """Exact three-way comparison of |A g_i / d^(1/k) - I|_F^2 for i = 1, 2."""
    rows = _as_rows(A)
    g1 = _as_rows(gamma1)
    g2 = _as_rows(gamma2)
    d = det_int(rows)
    if d <= 0:
        raise PreconditionError("determinant must be positive")
    for g in (g1, g2):
        if det_int(g) != 1:
            raise PreconditionError("gamma must have determinant 1")
    a1, b1 = _frob_tr(mat_mul(rows, g1))
    a2, b2 = _frob_tr(mat_mul(rows, g2))
    return _cmp_keys(a1, b1, a2, b2, d, len(rows))


def _dot2(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _lagrange(b1, b2):
    """Gauss-reduce a rank-2 basis: |b1| <= |b2| and |2 <b1,b2>| <= |b1|^2."""
    while True:
        if _dot2(b1, b1) > _dot2(b2, b2):
            b1, b2 = b2, b1
        n1 = _dot2(b1, b1)
        q = (2 * _dot2(b1, b2) + n1) // (2 * n1)
        if q == 0:
            return b1, b2
        b2 = (b2[0] - q * b1[0], b2[1] - q * b1[1])


def _k2_candidates(b1, b2, d, R2):
    """Yield (a, tr, M, gamma') over all M = (b1 b2) gamma', det gamma' = 1,
    |M|_F^2 <= R2.  (b1, b2) must be Lagrange-reduced with det +d."""
    n1 = _dot2(b1, b1)
    n2 = _dot2(b2, b2)
    m = _dot2(b1, b2)
    D2 = n1 * n2 - m * m
    C1 = R2 - n1
    if C1 < 0:
        return
    Y = isqrt(C1 * n1 // D2)
    for y in range(-Y, Y + 1):
        disc = n1 * C1 - D2 * y * y
        if disc < 0:
            continue
        s = isqrt(disc)
        for x in range(_ceil_div(-m * y - s, n1), _floor_div(-m * y + s, n1) + 1):
            if gcd(x, y) != 1:
                continue
            q1 = n1 * x * x + 2 * m * x * y + n2 * y * y
            if q1 > C1:
                continue
            # second columns with det 1 form the line (a0 + t x, b0 + t y)
            _, uu, vv = ext_gcd(x, y)
            al0, be0 = -vv, uu
            qc = n1 * x * al0 + m * (x * be0 + y * al0) + n2 * y * be0
            q0 = n1 * al0 * al0 + 2 * m * al0 * be0 + n2 * be0 * be0
            rem = R2 - q1
            disc2 = qc * qc - q1 * (q0 - rem)
            if disc2 < 0:
                continue
            s2 = isqrt(disc2)
            for t in range(_ceil_div(-qc - s2, q1), _floor_div(-qc + s2, q1) + 1):
                al, be = al0 + t * x, be0 + t * y
                qw = q1 * t * t + 2 * qc * t + q0
                ucol = (x * b1[0] + y * b2[0], x * b1[1] + y * b2[1])
                wcol = (al * b1[0] + be * b2[0], al * b1[1] + be * b2[1])
                M = ((ucol[0], wcol[0]), (ucol[1], wcol[1]))
                yield q1 + qw, ucol[0] + wcol[1], M, ((x, al), (y, be))


def _columns(rows):
    k = len(rows)
    return [tuple(rows[i][j] for i in range(k)) for j in range(k)]


def _rows_from_columns(cols):
    k = len(cols)
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def _change_of_basis(rows, red_cols):
    """Integer U with A U = B_red; requires det B_red = det A."""
    inv = inverse_fraction(rows)
    if inv is None:
        raise PreconditionError("matrix is singular")
    brows = _rows_from_columns(red_cols)
    u_frac = mat_mul(inv, brows)
    U = []
    for row in u_frac:
        out = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise InvariantError("reduced basis left the column lattice")
            out.append(f.numerator)
        U.append(tuple(out))
    return tuple(U)


def _finish(rows, best, red_cols):
    a, b, M, gp = min(best, key=lambda c: c[2])
    U = _change_of_basis(rows, red_cols)
    gamma = mat_mul(U, gp)
    if det_int(gamma) != 1 or mat_mul(rows, gamma) != M:
        raise InvariantError("reduction produced an inconsistent witness")
    return ReduceResult(gamma=gamma, rep=M)


def _collect(best, cand, d, k):
    if not best:
        best.append(cand)
        return
    c = _cmp_keys(cand[0], cand[1], best[0][0], best[0][1], d, k)
    if c < 0:
        best.clear()
        best.append(cand)
    elif c == 0:
        best.append(cand)


def _reduce_k2(rows):
    d = det_int(rows)
    cols = _columns(rows)
    b1, b2 = _lagrange(cols[0], cols[1])
    if b1[0] * b2[1] - b1[1] * b2[0] < 0:
        b2 = (-b2[0], -b2[1])
    # feasible starting point: best arrangement of short vectors
    small = [b1, b2, (b1[0] + b2[0], b1[1] + b2[1]), (b1[0] - b2[0], b1[1] - b2[1])]
    small += [(-u[0], -u[1]) for u in small]
    a0 = None
    for u in small:
        for w in small:
            if u[0] * w[1] - u[1] * w[0] != d:
                continue
            a = _dot2(u, u) + _dot2(w, w)
            b = u[0] + w[1]
            if a0 is None or _cmp_keys(a, b, a0, b0, d, 2) < 0:
                a0, b0 = a, b
    # any minimizer M satisfies |M|_F <= sqrt(a0) + 2 sqrt(2) d^(1/2)
    R2 = a0 + 8 * d + 4 * (isqrt(2 * a0 * d) + 1)
    best = []
    for cand in _k2_candidates(b1, b2, d, R2):
        _collect(best, cand, d, 2)
    return _finish(rows, best, [b1, b2])


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _bilin(G, u, v):
    return sum(u[i] * G[i][j] * v[j] for i in range(3) for j in range(3))


def _reduce_k3(rows, budget):
    d = det_int(rows)
    g = greedy_basis(LatticeBasis(_columns(rows)))
    vecs = []
    for v in g.vectors:
        if any(Fraction(x).denominator != 1 for x in v):
            raise InvariantError("greedy basis left the integer lattice")
        vecs.append(tuple(int(x) for x in v))
    if det_int(_rows_from_columns(vecs)) == -d:
        vecs[2] = tuple(-x for x in vecs[2])
    if det_int(_rows_from_columns(vecs)) != d:
        raise InvariantError("greedy basis does not span the column lattice")
    norms = [sum(x * x for x in v) for v in vecs]
    a0 = sum(norms)
    b0 = None
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            cols3 = [tuple(s * x for x in vecs[p]) for s, p in zip(signs, perm)]
            if det_int(_rows_from_columns(cols3)) != d:
                continue
            tr = sum(cols3[i][i] for i in range(3))
            if b0 is None or _cmp_keys(a0, tr, a0, b0, d, 3) < 0:
                b0 = tr
    # any f-minimizer M has |M|_F <= sqrt(f(M0)) d^(1/3) + sqrt(3) d^(1/3);
    # with X = d^(1/3) and F = f(M0) X^2 = a0 - 2 b0 X + 3 X^2 that squares
    # to F + 3 X^2 + 2 sqrt(3 F) X, inflated generously against float error
    X = d ** (1.0 / 3.0)
    F = max(a0 - 2.0 * b0 * X + 3.0 * X * X, 0.0)
    R2 = int((F + 3.0 * X * X + 2.0 * sqrt(3.0 * F) * X) * (1.0 + 1e-6)) + 2
    lam1 = g.alphas_sq[0]
    if lam1.denominator != 1:
        raise InvariantError("integer lattice with fractional minimum")
    lam1 = lam1.numerator
    LB = LatticeBasis(vecs)
    G = LB.gram
    G = tuple(tuple(int(x) for x in row) for row in G)
    cap1 = R2 - 2 * lam1
    cands = [
        (tuple(c), int(n))
        for c, n in short_coefficient_vectors(LB, Fraction(cap1))
        if vec_gcd(c) == 1
    ]
    cands.sort(key=lambda cn: cn[1])
    ops = 0
    best = []
    for c1, n1c in cands:
        if n1c > cap1:
            break
        for c2, n2c in cands:
            if n1c + n2c + lam1 > R2:
                break
            ops += 1
            if ops > budget:
                raise BudgetExceededError(f"k = 3 reduction exceeded budget {budget}")
            m = _cross(c1, c2)
            if m == (0, 0, 0) or vec_gcd(m) != 1:
                continue
            g1, aa, bb = ext_gcd(m[0], m[1])
            g2, cc, dd = ext_gcd(g1, m[2])
            if g2 != 1:
                continue
            y0 = (cc * aa, cc * bb, dd)
            rem3 = R2 - n1c - n2c
            q12 = _bilin(G, c1, c2)
            p1 = _bilin(G, y0, c1)
            p2 = _bilin(G, y0, c2)
            p0 = _bilin(G, y0, y0)
            A2 = n1c * n2c - q12 * q12
            B2 = p1 * q12 - n1c * p2
            C2 = p1 * p1 - n1c * p0 + n1c * rem3
            disc22 = B2 * B2 + A2 * C2
            if disc22 < 0:
                continue
            s22 = isqrt(disc22)
            for t2 in range(_ceil_div(B2 - s22, A2), _floor_div(B2 + s22, A2) + 1):
                ops += 1
                if ops > budget:
                    raise BudgetExceededError(
                        f"k = 3 reduction exceeded budget {budget}"
                    )
                cen = p1 + q12 * t2
                disc1 = cen * cen - n1c * (p0 + 2 * p2 * t2 + n2c * t2 * t2 - rem3)
                if disc1 < 0:
                    continue
                s1 = isqrt(disc1)
                for t1 in range(_ceil_div(-cen - s1, n1c), _floor_div(-cen + s1, n1c) + 1):
                    w = tuple(y0[i] + t1 * c1[i] + t2 * c2[i] for i in range(3))
                    q3 = _bilin(G, w, w)
                    if q3 > rem3:
                        continue
                    cols3 = [
                        tuple(sum(c[j] * vecs[j][i] for j in range(3)) for i in range(3))
                        for c in (c1, c2, w)
                    ]
                    M = _rows_from_columns(cols3)
                    tr = sum(cols3[i][i] for i in range(3))
                    gp = _rows_from_columns([c1, c2, w])
                    _collect(best, (n1c + n2c + q3, tr, M, gp), d, 3)
    return _finish(rows, best, vecs)


def reduce_to_F(A, k3_budget=None):
    """Reduce A to the unique orbit representative nearest the identity.

    Returns ReduceResult(gamma, rep) with A @ gamma = rep, det gamma = 1.
    k = 2 is guaranteed exact; k = 3 requires an explicit operation
    budget and raises BudgetExceededError when the search outgrows it.
    """
    rows = _as_rows(A)
    k = len(rows)
    d = det_int(rows)
    if d <= 0:
        raise PreconditionError("determinant must be positive")
    if k == 1:
        return ReduceResult(gamma=((1,),), rep=rows)
    if k == 2:
        return _reduce_k2(rows)
    if k == 3:
        if k3_budget is None:
            raise PreconditionError("k = 3 reduction needs an explicit k3_budget")
        return _reduce_k3(rows, k3_budget)
    raise PreconditionError("reduction is implemented for k <= 3")


def in_cone_F(A, k3_budget=None):
    """True when A is the nearest-to-identity representative of its orbit."""
    rows = _as_rows(A)
    return reduce_to_F(rows, k3_budget=k3_budget).rep == rows


def size_sq(H, k3_budget=None):
    """Squared Frobenius norm of the orbit representative, as an exact rational.

    H may be any positive-determinant integer matrix; the value depends
    only on its column lattice.
    """
    rows = _as_rows(H)
    if len(rows) > 3:
        raise PreconditionError("size is computed via reduction, so k <= 3")
    rep = reduce_to_F(rows, k3_budget=k3_budget).rep
    return Fraction(sum(e * e for row in rep for e in row))


def _members_in_ball(A, cap):
    """All orbit members M with |M|_F^2 <= cap (k = 2 only, for tests)."""
    rows = _as_rows(A)
    if len(rows) != 2:
        raise PreconditionError("ball enumeration is k = 2 only")
    d = det_int(rows)
    if d <= 0:
        raise PreconditionError("determinant must be positive")
    cols = _columns(rows)
    b1, b2 = _lagrange(cols[0], cols[1])
    if b1[0] * b2[1] - b1[1] * b2[0] < 0:
        b2 = (-b2[0], -b2[1])
    return sorted({M for _, _, M, _ in _k2_candidates(b1, b2, d, cap)})
