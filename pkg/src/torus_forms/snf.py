"""Exact integer matrix kernel: Smith normal form, cokernels, induced maps.

Conventions used throughout the package:

* matrices are lists of lists of Python ints;
* a *presentation* of an abelian group is a matrix whose ROWS index
  generators and whose COLUMNS are relations (the group is
  Z^rows / column-span);
* smith_normal_form(M) returns (U, D, V) with U*M*V = D, U and V
  unimodular, D diagonal with a divisibility chain.

Pivoting is by minimal nonzero absolute value; with arbitrary-precision
integers this is purely a performance choice.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotWellDefined


# ---------------------------------------------------------------------------
# basic integer-matrix helpers


def int_identity(nn):
    return [[1 if i == j else 0 for j in range(nn)] for i in range(nn)]


def int_mat_mul(a, b):
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai, oi = a[i], out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def int_mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v) if x and y) for row in a]


def int_det(m) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    nn = len(m)
    if nn == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(nn - 1):
        piv = None
        best = None
        for i in range(k, nn):
            v = abs(a[i][k])
            if v and (best is None or v < best):
                piv, best = i, v
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, nn):
            aik = a[i][k]
            for j in range(k + 1, nn):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]) // prev
            a[i][k] = 0
        prev = akk
    return sign * a[nn - 1][nn - 1]


def int_inverse_unimodular(u):
    """Inverse of a unimodular integer matrix (exact, via Gauss-Jordan)."""
    nn = len(u)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(nn)]
         for i, row in enumerate(u)]
    for col in range(nn):
        piv = next(i for i in range(col, nn) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        for i in range(nn):
            if i != col and a[i][col]:
                g = a[i][col]
                a[i] = [x - g * y for x, y in zip(a[i], a[col])]
    out = [[x for x in row[nn:]] for row in a]
    for row in out:
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor form.

    torsion is the chain d1 | d2 | ... with each di >= 2.
    """

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"broken divisibility chain {self.torsion}")

    @classmethod
    def trivial(cls):
        return cls(0, ())

    @classmethod
    def free(cls, r):
        return cls(r, ())

    @classmethod
    def cyclic(cls, m):
        if m == 0:
            return cls(1, ())
        return cls(0, (m,)) if m > 1 else cls(0, ())

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def invert(self, d: int) -> "AbelianGroup":
        """Tensor with Z[1/d]: strip the p-primary parts for primes p | d."""
        stripped = []
        for m in self.torsion:
            for p in _prime_factors(d):
                while m % p == 0:
                    m //= p
            if m > 1:
                stripped.append(m)
        return AbelianGroup(self.free_rank, tuple(stripped))

    def p_primary(self, p: int) -> "AbelianGroup":
        """The p-primary torsion part (free rank dropped)."""
        parts = []
        for m in self.torsion:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            if q > 1:
                parts.append(q)
        return AbelianGroup(0, tuple(parts))

    def localize_at(self, p: int) -> "AbelianGroup":
        """Localization at the prime p: free part kept, torsion -> p-parts."""
        out = self.p_primary(p)
        return AbelianGroup(self.free_rank, out.torsion)

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        factors = sorted(self.torsion + other.torsion)
        return from_elementary_divisors(self.free_rank + other.free_rank, factors)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _prime_factors(n: int):
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def from_elementary_divisors(free_rank: int, factors) -> AbelianGroup:
    """Regroup arbitrary cyclic orders into an invariant-factor chain."""
    primary = {}
    for m in factors:
        for p in _prime_factors(m):
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            primary.setdefault(p, []).append(q)
    depth = max((len(v) for v in primary.values()), default=0)
    chain = []
    for k in range(depth):
        d = 1
        for p, qs in primary.items():
            qs_sorted = sorted(qs, reverse=True)
            if k < len(qs_sorted):
                d *= qs_sorted[k]
        chain.append(d)
    return AbelianGroup(free_rank, tuple(sorted(chain)))


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m):
    """Return (U, D, V) with U*m*V = D, U, V unimodular, D a divisibility chain.

    The determinants of U and V are tracked through every elementary
    operation and asserted to be ±1 before returning.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [row[:] for row in m]
    u = int_identity(rows)
    v = int_identity(cols)
    det_u = 1
    det_v = 1

    def row_swap(i, j):
        nonlocal det_u
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            det_u = -det_u

    def col_swap(i, j):
        nonlocal det_v
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]
            det_v = -det_v

    def row_add(dst, src, q):
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def col_add(dst, src, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]

    def row_negate(i):
        nonlocal det_u
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        det_u = -det_u

    s = 0
    limit = min(rows, cols)
    while s < limit:
        piv = None
        best = None
        for i in range(s, rows):
            for j in range(s, cols):
                w = abs(a[i][j])
                if w and (best is None or w < best):
                    piv, best = (i, j), w
        if piv is None:
            break
        row_swap(s, piv[0])
        col_swap(s, piv[1])
        while True:
            # Clear the column, shrinking the pivot as needed.
            dirty = False
            for i in range(s + 1, rows):
                if a[i][s]:
                    q = a[i][s] // a[s][s]
                    row_add(i, s, -q)
                    if a[i][s]:
                        row_swap(s, i)
                        dirty = True
            for j in range(s + 1, cols):
                if a[s][j]:
                    q = a[s][j] // a[s][s]
                    col_add(j, s, -q)
                    if a[s][j]:
                        col_swap(s, j)
                        dirty = True
            if dirty:
                continue
            # Divisibility: fold in any entry the pivot does not divide.
            d = a[s][s]
            bad = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if a[i][j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(s, bad, 1)
        if a[s][s] < 0:
            row_negate(s)
        s += 1

    assert det_u in (1, -1) and det_v in (1, -1), "transforms must be unimodular"
    return u, a, v


def diagonal_of(d):
    lim = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(lim)]


# ---------------------------------------------------------------------------
# cokernels


@dataclass
class CokernelPresentation:
    """The quotient Z^rows / column-span(relations) in SNF-adapted coordinates.

    project(vec) maps an element of Z^rows to (torsion, free) coordinate
    tuples; two vectors are equal in the quotient iff they project equally.
    """

    rows: int
    group: AbelianGroup
    u: list
    diag: list

    def project(self, vec):
        if len(vec) != self.rows:
            raise DimensionMismatch(f"expected length {self.rows}, got {len(vec)}")
        z = int_mat_vec(self.u, vec)
        tors = []
        free = []
        for i, x in enumerate(z):
            d = self.diag[i] if i < len(self.diag) else 0
            if d == 0:
                free.append(x)
            elif d > 1:
                tors.append(x % d)
        return tuple(tors), tuple(free)

    def is_zero_class(self, vec) -> bool:
        tors, free = self.project(vec)
        return not any(tors) and not any(free)


def cokernel_presentation(m) -> CokernelPresentation:
    rows = len(m)
    u, d, _ = smith_normal_form(m)
    diag = diagonal_of(d)
    torsion = [x for x in diag if x > 1]
    free = rows - sum(1 for x in diag if x != 0)
    group = from_elementary_divisors(free, torsion)
    return CokernelPresentation(rows=rows, group=group, u=u, diag=diag)


def cokernel(m) -> AbelianGroup:
    """Invariant factors of Z^rows / column-span(m)."""
    return cokernel_presentation(m).group


# ---------------------------------------------------------------------------
# incremental column-lattice reduction

class IntLattice:
    """A sublattice of Z^n kept in row-echelon (Hermite-style) form.

    Used to compress a long stream of relation vectors to at most n
    independent ones before running Smith normal form.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows = []           # echelon rows, sorted by pivot position
        self.pivots = []         # pivot column of each row

    def _reduce(self, vec):
        """Reduce vec against the current rows, inserting gcd-combinations."""
        vec = list(vec)
        j = 0
        while True:
            lead = next((k for k in range(j, self.n) if vec[k]), None)
            if lead is None:
                return False
            pos = bisect_left(self.pivots, lead)
            if pos == len(self.pivots) or self.pivots[pos] != lead:
                if vec[lead] < 0:
                    vec = [-x for x in vec]
                self.rows.insert(pos, vec)
                self.pivots.insert(pos, lead)
                return True
            row = self.rows[pos]
            aa, bb = row[lead], vec[lead]
            if bb % aa == 0:
                q = bb // aa
                for k in range(lead, self.n):
                    vec[k] -= q * row[k]
            else:
                x, y, g = _xgcd(aa, bb)
                ag, mbg = aa // g, -(bb // g)
                for k in range(lead, self.n):
                    rk, vk = row[k], vec[k]
                    row[k] = x * rk + y * vk
                    vec[k] = mbg * rk + ag * vk
            j = lead

    def add(self, vec):
        """Insert a vector; returns True if the lattice grew."""
        if len(vec) != self.n:
            raise DimensionMismatch(f"expected length {self.n}")
        return self._reduce(vec)

    def add_sparse(self, items):
        vec = [0] * self.n
        for k, v in items:
            vec[k] = v
        return self.add(vec)

    def contains(self, vec) -> bool:
        vec = list(vec)
        for row, lead in zip(self.rows, self.pivots):
            if vec[lead]:
                q, r = divmod(vec[lead], row[lead])
                if r:
                    return False
                for k in range(lead, self.n):
                    vec[k] -= q * row[k]
        return not any(vec)

    def basis_columns(self):
        """The lattice basis as columns of an n x rank matrix."""
        return [[row[i] for row in self.rows] for i in range(self.n)]


def _xgcd(a, b):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def reduce_relation_columns(n_rows: int, columns) -> list:
    """Compress relation columns to an equivalent set of <= n_rows columns.

    Returns a matrix (n_rows x rank) spanning the same column lattice.
    """
    lat = IntLattice(n_rows)
    for col in columns:
        lat.add(col)
    return lat.basis_columns()


# ---------------------------------------------------------------------------
# induced maps on cokernels


@dataclass
class InducedMap:
    """A homomorphism between presented cokernels, induced by a matrix F.

    F maps generator space Z^{rows(relsA)} to Z^{rows(relsB)} and carries
    the column-span of relsA into that of relsB (checked on construction).
    """

    f: list
    rels_a: list
    rels_b: list
    source: CokernelPresentation
    target: CokernelPresentation

    def matrix_adapted(self):
        """The induced matrix in SNF-adapted bases of source and target."""
        ua_inv = int_inverse_unimodular(self.source.u)
        raw = int_mat_mul(self.target.u, int_mat_mul(self.f, ua_inv))
        for i in range(len(raw)):
            d = self.target.diag[i] if i < len(self.target.diag) else 0
            if d > 1:
                raw[i] = [x % d for x in raw[i]]
            elif d == 1:
                raw[i] = [0] * len(raw[i])
        return raw

    def image_of(self, vec):
        return int_mat_vec(self.f, vec)

    def equals(self, other: "InducedMap") -> bool:
        if self.source.rows != other.source.rows or self.target.rows != other.target.rows:
            return False
        diff = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self.f, other.f)]
        ncols = self.source.rows
        return all(
            self.target.is_zero_class([diff[i][j] for i in range(self.target.rows)])
            for j in range(ncols)
        )

    def compose(self, first: "InducedMap") -> "InducedMap":
        """self o first (apply first, then self)."""
        return map_on_cokernels(int_mat_mul(self.f, first.f), first.rels_a, self.rels_b)

    def is_epi_after_inverting(self, d: int) -> bool:
        stacked = [fr + rb for fr, rb in zip(self.f, self.rels_b)]
        return cokernel(stacked).invert(d).is_trivial()

    def is_iso_after_inverting(self, d: int) -> bool:
        """Whether the map becomes an isomorphism over Z[1/d]."""
        ga = self.source.group.invert(d)
        gb = self.target.group.invert(d)
        if ga != gb:
            return False
        return self.is_epi_after_inverting(d)


def map_on_cokernels(f, rels_a, rels_b) -> InducedMap:
    """Build the induced map coker(relsA) -> coker(relsB) of the matrix f.

    Raises NotWellDefined when f does not carry relations into relations.
    """
    rows_a = len(rels_a)
    rows_b = len(rels_b)
    if len(f) != rows_b or (f and len(f[0]) != rows_a):
        raise DimensionMismatch("f must be rows(relsB) x rows(relsA)")
    lat_b = IntLattice(rows_b)
    cols_b = len(rels_b[0]) if rels_b and rels_b[0] else 0
    for j in range(cols_b):
        lat_b.add([rels_b[i][j] for i in range(rows_b)])
    cols_a = len(rels_a[0]) if rels_a and rels_a[0] else 0
    for j in range(cols_a):
        col = [rels_a[i][j] for i in range(rows_a)]
        img = int_mat_vec(f, col)
        if not lat_b.contains(img):
            raise NotWellDefined(f"image of relation column {j} leaves the target span")
    return InducedMap(
        f=f,
        rels_a=rels_a,
        rels_b=rels_b,
        source=cokernel_presentation(rels_a),
        target=cokernel_presentation(rels_b),
    )
