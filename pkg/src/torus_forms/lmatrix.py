"""Dense matrices over Z[t, t^-1]: products, dagger, exact determinants.

Matrices are plain lists of lists of LaurentPoly.  The dagger of M is
the entrywise-bar transpose.  Determinants use fraction-free Bareiss
elimination; Z[t, t^-1] is an integral domain, so every division
performed is exact.
"""

from __future__ import annotations

from .laurent import LaurentPoly, ZERO, ONE


def lzeros(rows: int, cols: int):
    return [[ZERO for _ in range(cols)] for _ in range(rows)]


def lidentity(nn: int):
    return [[ONE if i == j else ZERO for j in range(nn)] for i in range(nn)]


def lmat_from_int(m):
    return [[LaurentPoly.const(v) for v in row] for row in m]


def lmat_copy(m):
    return [row[:] for row in m]


def lmat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def lmat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def lmat_neg(a):
    return [[-x for x in row] for row in a]


def lmat_scale(p, a):
    p = LaurentPoly.coerce(p)
    return [[p * x for x in row] for row in a]


def lmat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = lzeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if not x:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] = oi[j] + x * bk[j]
    return out


def lmat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    return all(ra == rb for ra, rb in zip(a, b))


def lmat_is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def dagger(m):
    """Entrywise-bar transpose."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    return [[m[i][j].bar() for i in range(rows)] for j in range(cols)]


def transpose(m):
    rows = len(m)
    cols = len(m[0]) if m else 0
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def augment_to_int(m):
    """Apply t -> 1 entrywise, landing in an integer matrix."""
    return [[x.augment() for x in row] for row in m]


def divexact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact division in Z[t, t^-1]; raises if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return ZERO
    # Shift both into Z[t] and do long division from the top degree.
    sp, sq = p.valuation(), q.valuation()
    a = dict(p.shift(-sp).c)
    b = q.shift(-sq).c
    db = max(b)
    lb = b[db]
    quot = {}
    while a:
        da = max(a)
        if da < db:
            raise ArithmeticError(f"{q.to_text()} does not divide {p.to_text()}")
        la = a[da]
        if la % lb:
            raise ArithmeticError(f"{q.to_text()} does not divide {p.to_text()}")
        f = la // lb
        e = da - db
        quot[e] = f
        for k, v in b.items():
            w = a.get(k + e, 0) - f * v
            if w:
                a[k + e] = w
            else:
                a.pop(k + e, None)
    return LaurentPoly(quot).shift(sp - sq)


def ldet(m) -> LaurentPoly:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    nn = len(m)
    if nn == 0:
        return ONE
    if any(len(row) != nn for row in m):
        raise ValueError("determinant of a non-square matrix")
    a = lmat_copy(m)
    sign = 1
    prev = ONE
    for k in range(nn - 1):
        # Pivot: fewest terms among nonzero entries of column k (rows k..).
        piv = None
        best = None
        for i in range(k, nn):
            if a[i][k]:
                if best is None or a[i][k].num_terms() < best:
                    piv, best = i, a[i][k].num_terms()
        if piv is None:
            return ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, nn):
            aik = a[i][k]
            for j in range(k + 1, nn):
                a[i][j] = divexact(akk * a[i][j] - aik * a[k][j], prev)
            a[i][k] = ZERO
        prev = akk
    d = a[nn - 1][nn - 1]
    return -d if sign < 0 else d
