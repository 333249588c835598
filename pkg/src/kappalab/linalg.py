"""Small exact linear algebra helpers over the series ring and over Q."""

from gmpy2 import mpq

from .poly import Poly

__all__ = ["mat_mul", "mat_identity", "mat_inverse_unipotent", "det_series", "solve_rational", "fit_combination"]


def mat_identity(L, order, n):
    one = Poly.one(L, order)
    zero = Poly.zero(L, order)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                if A[i][k].is_zero() or B[k][j].is_zero():
                    continue
                t = A[i][k] * B[k][j]
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else A[0][0] * 0)
        out.append(row)
    return out


def mat_inverse_unipotent(M):
    """Inverse of I + E with E = O(a), as the Neumann series."""
    n = len(M)
    L = M[0][0].layout
    order = min(p.order for row in M for p in row)
    I = mat_identity(L, order, n)
    E = [[M[i][j] - I[i][j] for j in range(n)] for i in range(n)]
    if any(not E[i][j].adeg_part(0).is_zero() for i in range(n) for j in range(n)):
        raise ValueError("matrix is not the identity at a = 0")
    out = I
    term = I
    for _ in range(order):
        term = mat_mul(term, E)
        term = [[-p for p in row] for row in term]
        if all(p.is_zero() for row in term for p in row):
            break
        out = [[out[i][j] + term[i][j] for j in range(n)] for i in range(n)]
    return out


def series_inverse(p):
    """1/p for a Poly whose a-degree-0 part is 1."""
    one = Poly.one(p.layout, p.order)
    u = p - one
    if not u.adeg_part(0).is_zero():
        raise ValueError("series inverse needs constant part 1")
    out = one
    term = one
    for _ in range(p.order):
        term = -(term * u)
        if term.is_zero():
            break
        out = out + term
    return out


def series_sqrt(p):
    """Principal square root of a Poly whose a-degree-0 part is 1."""
    one = Poly.one(p.layout, p.order)
    u = p - one
    if not u.adeg_part(0).is_zero():
        raise ValueError("series square root needs constant part 1")
    out = one
    term = one
    coeff = mpq(1)
    for j in range(1, p.order + 1):
        coeff = coeff * (mpq(1, 2) - (j - 1)) / j
        term = term * u
        if term.is_zero():
            break
        out = out + term.scale(coeff)
    return out


def det_series(M):
    """Determinant over the series ring by elimination with unit pivots.

    Every pivot is 1 + O(a) (the matrix reduces to the identity at a = 0), so
    pivots are inverted as truncated series and no other division occurs.
    """
    n = len(M)
    A = [list(row) for row in M]
    det = Poly.one(A[0][0].layout, min(p.order for row in A for p in row))
    for c in range(n):
        piv = A[c][c]
        if piv.adeg_part(0).is_zero():
            raise ValueError("pivot is not a unit")
        c0 = piv.adeg_part(0).constant_term()
        det = det * piv
        inv = series_inverse(piv.scale(1 / c0)).scale(1 / c0) if c0 != 1 else series_inverse(piv)
        for r in range(c + 1, n):
            if A[r][c].is_zero():
                continue
            f = A[r][c] * inv
            for j in range(c, n):
                A[r][j] = A[r][j] - f * A[c][j]
    return det


def solve_rational(rows, rhs):
    """Solve a consistent linear system over Q; returns one solution or None."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    A = [list(map(mpq, r)) + [mpq(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [vi - f * vr for vi, vr in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if A[i][ncols] != 0:
            return None
    sol = [mpq(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = A[i][ncols]
    return sol


def fit_combination(target, basis, complex_coeffs=True):
    """Coefficients c with sum c_i basis_i == target exactly, or None."""
    from .gaussrat import GaussRat

    cols = []
    for b in basis:
        cols.append(b)
        if complex_coeffs:
            cols.append(b.times_i())
    keys = set(target.terms)
    for b in cols:
        keys.update(b.terms)
    keys = sorted(keys)
    rows = [[b.terms.get(k, 0) for b in cols] for k in keys]
    rhs = [target.terms.get(k, 0) for k in keys]
    sol = solve_rational(rows, rhs)
    if sol is None:
        return None
    if complex_coeffs:
        return [GaussRat(sol[2 * i], sol[2 * i + 1]) for i in range(len(basis))]
    return [GaussRat(s) for s in sol]
