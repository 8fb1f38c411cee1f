"""The isometry group of the genus-g hyperbolic form over Z[t, t^-1].

A BlockMatrix stores an element of GL_2g(Z[t,t^-1]) in (A, B; C, D)
block form relative to the hyperbolic basis (a_1..a_g, b_1..b_g);
columns are images of basis vectors.  Membership in the unitary group
is decided two independent ways:

* membership_by_conditions: the closed-form block identities
      A D' + eps B C' = I,
      A B' + eps (A B')' = 0,   C D' + eps (C D')' = 0,
      diagonals of A B' and C D' lie in the form parameter,
  where X' denotes the entrywise-bar transpose (dagger);
* membership_by_form: invertibility plus preservation of lambda and q
  on an explicit hyperbolic quadratic module.

The two predicates are kept separate on purpose and cross-checked in
the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, DimensionMismatch
from .laurent import LaurentPoly, FormParameter, ZERO, ONE, unit_decompose
from .lmatrix import (
    dagger,
    ldet,
    lidentity,
    lmat_eq,
    lmat_is_zero,
    lmat_mul,
    lmat_sub,
    lzeros,
)
from .quadratic import QuadraticModule


class BlockMatrix:
    """A 2g x 2g matrix over Z[t,t^-1] in (A, B; C, D) block form."""

    __slots__ = ("g", "a", "b", "c", "d")

    def __init__(self, g, a, b, c, d):
        self.g = g
        for name, blk in (("A", a), ("B", b), ("C", c), ("D", d)):
            if len(blk) != g or any(len(row) != g for row in blk):
                raise DimensionMismatch(f"block {name} must be {g}x{g}")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, g: int) -> "BlockMatrix":
        return cls(g, lidentity(g), lzeros(g, g), lzeros(g, g), lidentity(g))

    @classmethod
    def from_full(cls, full) -> "BlockMatrix":
        n2 = len(full)
        if n2 % 2 or any(len(row) != n2 for row in full):
            raise DimensionMismatch("full matrix must be square of even size")
        g = n2 // 2
        coerced = [[LaurentPoly.coerce(x) for x in row] for row in full]
        a = [row[:g] for row in coerced[:g]]
        b = [row[g:] for row in coerced[:g]]
        c = [row[:g] for row in coerced[g:]]
        d = [row[g:] for row in coerced[g:]]
        return cls(g, a, b, c, d)

    def full(self):
        return [ra + rb for ra, rb in zip(self.a, self.b)] + [
            rc + rd for rc, rd in zip(self.c, self.d)
        ]

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.g != other.g:
            raise DimensionMismatch("genus mismatch in product")
        return BlockMatrix.from_full(lmat_mul(self.full(), other.full()))

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.g == other.g and lmat_eq(self.full(), other.full())

    def __hash__(self):
        return hash(tuple(tuple(x.to_text() for x in row) for row in self.full()))

    def dagger_full(self):
        return dagger(self.full())

    def det(self) -> LaurentPoly:
        return ldet(self.full())

    def __repr__(self):
        return f"BlockMatrix(g={self.g})"


def phi_block(g: int, eps: int) -> BlockMatrix:
    """The matrix of the hyperbolic form itself: (0, I; eps I, 0)."""
    eps_i = [[LaurentPoly.const(eps) if i == j else ZERO for j in range(g)]
             for i in range(g)]
    return BlockMatrix(g, lzeros(g, g), lidentity(g), eps_i, lzeros(g, g))


# ---------------------------------------------------------------------------
# membership predicates


def membership_report(m: BlockMatrix, n: int, param: FormParameter) -> dict:
    """Evaluate each defining condition separately (for diagnostics)."""
    eps = (-1) ** n
    a, b, c, d = m.a, m.b, m.c, m.d
    ad = lmat_mul(a, dagger(d))
    bc = lmat_mul(b, dagger(c))
    ab = lmat_mul(a, dagger(b))
    cd = lmat_mul(c, dagger(d))
    ident = lidentity(m.g)
    cond_i = lmat_eq([[ad[i][j] + eps * bc[i][j] for j in range(m.g)]
                      for i in range(m.g)], ident)
    skew_ab = [[ab[i][j] + eps * ab[j][i].bar() for j in range(m.g)]
               for i in range(m.g)]
    skew_cd = [[cd[i][j] + eps * cd[j][i].bar() for j in range(m.g)]
               for i in range(m.g)]
    cond_ii = lmat_is_zero(skew_ab) and lmat_is_zero(skew_cd)
    cond_iii = all(param.contains(ab[i][i]) for i in range(m.g)) and all(
        param.contains(cd[i][i]) for i in range(m.g)
    )
    return {"form_identity": cond_i, "skew_vanishing": cond_ii,
            "diagonal_parameter": cond_iii}


def membership_by_conditions(m: BlockMatrix, n: int, param: FormParameter) -> bool:
    """Unitary-group membership via the closed-form block conditions.

    The first two conditions together say M Phi M' = Phi, which forces
    det(M) * bar(det(M)) = 1 and hence invertibility over Z[t,t^-1].
    """
    if param.eps != (-1) ** n:
        raise BadParameters("parameter sign does not match (-1)^n")
    rep = membership_report(m, n, param)
    return all(rep.values())


def membership_by_form(m: BlockMatrix, q: QuadraticModule) -> bool:
    """Unitary-group membership as invertibility + isometry of q.

    Independent of membership_by_conditions: uses the exact determinant
    and the quadratic module's own lambda/q evaluation.
    """
    if q.rank != 2 * m.g:
        raise DimensionMismatch("module rank must be twice the genus")
    try:
        unit_decompose(m.det())
    except Exception:
        return False
    return q.is_isometry(m.full())


def member_inverse(m: BlockMatrix, n: int) -> BlockMatrix:
    """Inverse of a unitary member: M^-1 = eps * Phi M' Phi.

    Valid only when M Phi M' = Phi; cheap compared to general inversion.
    """
    eps = (-1) ** n
    phi = phi_block(m.g, eps).full()
    inv = lmat_mul(phi, lmat_mul(m.dagger_full(), phi))
    return BlockMatrix.from_full([[eps * x for x in row] for row in inv])


# ---------------------------------------------------------------------------
# elementary generators

FAMILIES = (1, 2, 3, 4, 5, 6)
SIGMA = "SIGMA"


@dataclass(frozen=True)
class GeneratorSpec:
    """One instantiated elementary generator.

    family 1..4 take a ring element r at an ordered index pair (i, j);
    families 5 and 6 take l in the minimal form parameter at index i;
    SIGMA is the hyperbolic-pair swap at (i, j).
    """

    family: object
    i: int
    j: int = -1
    r: LaurentPoly = None

    def matrix(self, g: int, n: int) -> BlockMatrix:
        eps = (-1) ** n
        i, j, r = self.i, self.j, self.r
        a = lidentity(g)
        b = lzeros(g, g)
        c = lzeros(g, g)
        d = lidentity(g)
        if self.family in (1, 2):
            blk = c if self.family == 1 else b
            blk[i][j] = r
            blk[j][i] = -eps * r.bar()
        elif self.family == 3:
            a[i][j] = r
            d[j][i] = -r.bar()
        elif self.family == 4:
            a[j][i] = r
            d[i][j] = -r.bar()
        elif self.family == 5:
            b[i][i] = r
        elif self.family == 6:
            c[i][i] = r
        elif self.family == SIGMA:
            a[i][i] = ZERO
            a[j][j] = ZERO
            d[i][i] = ZERO
            d[j][j] = ZERO
            b[j][i] = LaurentPoly.const(eps)
            b[i][j] = LaurentPoly.const(-1)
            c[j][i] = ONE
            c[i][j] = LaurentPoly.const(-eps)
        else:
            raise BadParameters(f"unknown family {self.family!r}")
        return BlockMatrix(g, a, b, c, d)

    def inverse_spec(self) -> "GeneratorSpec":
        if self.family == SIGMA:
            raise BadParameters("sigma inverse is not in the same family")
        return GeneratorSpec(self.family, self.i, self.j, -self.r)


def elementary_generator_specs(g: int, n: int, exponent_window: int,
                               include_sigma: bool = True):
    """All truncated elementary generators for genus g.

    r runs over ±t^e with |e| <= exponent_window; l runs over the
    truncated Z-basis of the minimal form parameter.  Index pairs run
    over all ordered pairs, which subsumes conjugation by simultaneous
    (a, b)-permutations.
    """
    if g < 2:
        raise BadParameters("elementary generators need genus >= 2")
    if exponent_window < 0:
        raise BadParameters("exponent window must be >= 0")
    eps = (-1) ** n
    param_min = FormParameter(eps=eps, variant="MIN", special=n in (3, 7))
    rs = []
    for e in range(-exponent_window, exponent_window + 1):
        rs.append(LaurentPoly.t(e, 1))
        rs.append(LaurentPoly.t(e, -1))
    ls = param_min.min_basis(exponent_window)
    specs = []
    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            for fam in (1, 2, 3, 4):
                for r in rs:
                    specs.append(GeneratorSpec(fam, i, j, r))
    for i in range(g):
        for fam in (5, 6):
            for l in ls:
                specs.append(GeneratorSpec(fam, i, -1, l))
    if include_sigma:
        for i in range(g):
            for j in range(g):
                if i != j:
                    specs.append(GeneratorSpec(SIGMA, i, j))
    return specs


def elementary_generators(g: int, n: int, exponent_window: int,
                          include_sigma: bool = True):
    """The truncated generators as matrices."""
    return [s.matrix(g, n) for s in
            elementary_generator_specs(g, n, exponent_window, include_sigma)]


def sigma_block(n: int) -> BlockMatrix:
    """The 4x4 hyperbolic-pair swap (genus 2)."""
    return GeneratorSpec(SIGMA, 0, 1).matrix(2, n)


def sigma_factorization_check(n: int) -> bool:
    """Verify sigma = F2(-1) * F1(-eps) * F2(-1) exactly (genus 2)."""
    eps = (-1) ** n
    f2 = GeneratorSpec(2, 0, 1, LaurentPoly.const(-1)).matrix(2, n)
    f1 = GeneratorSpec(1, 0, 1, LaurentPoly.const(-eps)).matrix(2, n)
    prod = f2 @ f1 @ f2
    return prod == sigma_block(n)


def det_splitting(m: BlockMatrix) -> Fraction:
    """Half the exponent of t in det(M); det must be a unit."""
    _, e = unit_decompose(m.det())
    return Fraction(e, 2)


def random_word(g: int, n: int, length: int, seed: int,
                exponent_window: int = 1) -> BlockMatrix:
    """Deterministic product of uniformly chosen elementary generators."""
    if length < 0:
        raise BadParameters("length must be >= 0")
    rng = random.Random(seed)
    gens = elementary_generators(g, n, exponent_window)
    word = BlockMatrix.identity(g)
    for _ in range(length):
        word = word @ gens[rng.randrange(len(gens))]
    return word


def random_sparse_matrix(g: int, seed_rng: random.Random, exponent_window: int = 2,
                         density: float = 0.35) -> BlockMatrix:
    """A random sparse 2g x 2g matrix over Z[t,t^-1] (not usually unitary)."""
    size = 2 * g
    full = [[ZERO for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if seed_rng.random() < density:
                e = seed_rng.randint(-exponent_window, exponent_window)
                coeff = seed_rng.choice([-2, -1, 1, 2])
                full[i][j] = LaurentPoly.t(e, coeff)
    return BlockMatrix.from_full(full)
