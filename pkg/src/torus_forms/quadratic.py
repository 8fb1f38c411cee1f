"""Quadratic modules over Z and Z[t, t^-1].

A quadratic module here is a based free module with an eps-hermitian
form lambda (eps = (-1)^n) given by its gram matrix, together with a
quadratic refinement q valued in the quotient of the ring by a form
parameter.  q is stored only on basis vectors; everywhere else it is
derived from the axioms

    q(x + y) = q(x) + q(y) + lambda(x, y)
    q(a * x) = a * q(x) * bar(a)
    lambda(x, x) = q(x) + eps * bar(q(x))

the last of which is checked exactly on construction (it is independent
of the choice of representatives).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import BadParameters, DimensionMismatch, SearchExhausted, SingularForm
from .laurent import LaurentPoly, FormParameter, ZERO, ONE
from .lmatrix import (
    dagger,
    ldet,
    lidentity,
    lmat_from_int,
    lmat_mul,
    lzeros,
)
from .snf import _xgcd


@dataclass
class QuotientClass:
    """An element of Z[t,t^-1] / (form parameter)."""

    representative: LaurentPoly
    param: FormParameter

    def canonical(self) -> LaurentPoly:
        return self.param.reduce(self.representative)

    def is_zero(self) -> bool:
        return self.param.contains(self.representative)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = QuotientClass(LaurentPoly.coerce(other), self.param)
        if not isinstance(other, QuotientClass):
            return NotImplemented
        if self.param != other.param:
            return False
        return self.param.contains(self.representative - other.representative)

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = QuotientClass(LaurentPoly.coerce(other), self.param)
        return QuotientClass(self.representative + other.representative, self.param)

    def __repr__(self):
        return f"QuotientClass({self.canonical().to_text()!r} mod {self.param.variant})"


def phi_gram(g: int, eps: int):
    """Gram matrix of the genus-g hyperbolic form: blocks (0, I; eps*I, 0)."""
    out = lzeros(2 * g, 2 * g)
    for i in range(g):
        out[i][g + i] = ONE
        out[g + i][i] = LaurentPoly.const(eps)
    return out


class QuadraticModule:
    """A based quadratic module over Z[t, t^-1] (or Z, as constants)."""

    def __init__(self, n: int, param: FormParameter, gram, q_values, check: bool = True):
        self.n = n
        self.eps = (-1) ** n
        self.param = param
        self.gram = [[LaurentPoly.coerce(x) for x in row] for row in gram]
        self.q_values = [LaurentPoly.coerce(x) for x in q_values]
        if param.eps != self.eps:
            raise BadParameters("form parameter sign does not match (-1)^n")
        rank = len(self.gram)
        if any(len(row) != rank for row in self.gram) or len(self.q_values) != rank:
            raise BadParameters("gram must be square with one q value per basis vector")
        if check:
            self._validate()

    def _validate(self):
        eps = self.eps
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j].bar() != eps * self.gram[j][i]:
                    raise BadParameters(f"gram is not {eps}-hermitian at ({i},{j})")
            lhs = self.gram[i][i]
            q = self.q_values[i]
            if lhs != q + eps * q.bar():
                raise BadParameters(
                    f"diagonal gram entry {i} incompatible with q: "
                    f"{lhs.to_text()} != q + eps*bar(q)"
                )

    @property
    def rank(self) -> int:
        return len(self.gram)

    def is_over_z(self) -> bool:
        return all(x.is_constant() for row in self.gram for x in row) and all(
            q.is_constant() for q in self.q_values
        )

    # -- evaluation ----------------------------------------------------

    def _coerce_vector(self, x):
        if len(x) != self.rank:
            raise DimensionMismatch(f"vector length {len(x)} != rank {self.rank}")
        return [LaurentPoly.coerce(v) for v in x]

    def eval_lambda(self, x, y) -> LaurentPoly:
        """lambda(x, y) = sum_i,j x_i * gram[i][j] * bar(y_j)."""
        x = self._coerce_vector(x)
        y = self._coerce_vector(y)
        out = ZERO
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gram[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    out = out + xi * row[j] * yj.bar()
        return out

    def eval_q(self, x) -> QuotientClass:
        """q(x), expanded from basis values via the quadratic axioms."""
        x = self._coerce_vector(x)
        out = ZERO
        for i, xi in enumerate(x):
            if not xi:
                continue
            out = out + xi * self.q_values[i] * xi.bar()
            row = self.gram[i]
            for j in range(i + 1, self.rank):
                if x[j] and row[j]:
                    out = out + xi * row[j] * x[j].bar()
        return QuotientClass(out, self.param)

    def q_class(self, i: int) -> QuotientClass:
        return QuotientClass(self.q_values[i], self.param)

    def is_isometry(self, m) -> bool:
        """Whether the matrix m preserves both lambda and q on the basis.

        Columns of m are the images of basis vectors.  By sesquilinearity
        and the quadratic axiom this suffices for all vectors.
        """
        if len(m) != self.rank or any(len(row) != self.rank for row in m):
            raise DimensionMismatch("isometry candidate must be rank x rank")
        m = [[LaurentPoly.coerce(x) for x in row] for row in m]
        cols = [[m[i][j] for i in range(self.rank)] for j in range(self.rank)]
        for i in range(self.rank):
            for j in range(i, self.rank):
                if self.eval_lambda(cols[i], cols[j]) != self.gram[i][j]:
                    return False
        for j in range(self.rank):
            if self.eval_q(cols[j]) != self.q_class(j):
                return False
        return True

    # -- constructions ---------------------------------------------------

    @classmethod
    def hyperbolic(cls, g: int, n: int, variant: str = "FULL") -> "QuadraticModule":
        if g < 0:
            raise BadParameters("genus must be >= 0")
        param = FormParameter.for_n(n, variant)
        return cls(n, param, phi_gram(g, (-1) ** n), [ZERO] * (2 * g))

    @classmethod
    def e8(cls, n: int, variant: str = "FULL") -> "QuadraticModule":
        """The rank-8 even positive-definite unimodular form, over Z.

        Gram has 2s on the diagonal and 1s on the edges of the E8 Coxeter
        graph (nodes 0-2-3-4-5-6-7 in a chain, node 1 attached to node 3).
        """
        if n % 2:
            raise BadParameters("this form is (+1)-quadratic: n must be even")
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
        g = [[0] * 8 for _ in range(8)]
        for i in range(8):
            g[i][i] = 2
        for i, j in edges:
            g[i][j] = g[j][i] = 1
        param = FormParameter.for_n(n, variant)
        return cls(n, param, lmat_from_int(g), [ONE] * 8)

    @classmethod
    def kervaire(cls, n: int, variant: str = "FULL") -> "QuadraticModule":
        """The rank-2 (-1)-quadratic form with lambda(e,f)=1, q(e)=q(f)=1."""
        if n % 2 == 0:
            raise BadParameters("this form is (-1)-quadratic: n must be odd")
        g = [[0, 1], [-1, 0]]
        param = FormParameter.for_n(n, variant)
        return cls(n, param, lmat_from_int(g), [ONE, ONE])

    def negate(self) -> "QuadraticModule":
        return QuadraticModule(
            self.n,
            self.param,
            [[-x for x in row] for row in self.gram],
            [-q for q in self.q_values],
        )

    def ortho_sum(self, other: "QuadraticModule") -> "QuadraticModule":
        if (self.n - other.n) % 2 or self.param != other.param:
            raise BadParameters("orthogonal sum requires matching parity and parameter")
        r1, r2 = self.rank, other.rank
        gram = lzeros(r1 + r2, r1 + r2)
        for i in range(r1):
            for j in range(r1):
                gram[i][j] = self.gram[i][j]
        for i in range(r2):
            for j in range(r2):
                gram[r1 + i][r1 + j] = other.gram[i][j]
        return QuadraticModule(self.n, self.param, gram, self.q_values + other.q_values)

    def base_change_to_z(self) -> "QuadraticModule":
        """Apply the augmentation t -> 1 entrywise."""
        gram = [[LaurentPoly.const(x.augment()) for x in row] for row in self.gram]
        qs = [LaurentPoly.const(q.augment()) for q in self.q_values]
        return QuadraticModule(self.n, self.param, gram, qs)


def named_form(name: str, *, n: int, g: int = None, parts=None, base=None,
               variant: str = "FULL") -> QuadraticModule:
    """Construct one of the catalogued forms by name."""
    name = name.upper()
    if name == "E8":
        return QuadraticModule.e8(n, variant)
    if name == "KERVAIRE_K":
        return QuadraticModule.kervaire(n, variant)
    if name == "HYPERBOLIC":
        if g is None:
            raise BadParameters("HYPERBOLIC requires a genus g")
        return QuadraticModule.hyperbolic(g, n, variant)
    if name == "ORTHO_SUM":
        if not parts or len(parts) < 2:
            raise BadParameters("ORTHO_SUM requires at least two parts")
        out = parts[0]
        for p in parts[1:]:
            out = out.ortho_sum(p)
        return out
    if name == "NEGATE":
        if base is None:
            raise BadParameters("NEGATE requires a base form")
        return base.negate()
    if name == "BASE_CHANGE_TO_Z":
        if base is None:
            raise BadParameters("BASE_CHANGE_TO_Z requires a base form")
        return base.base_change_to_z()
    raise BadParameters(f"unknown form name {name!r}")


def shaneson_image(m: QuadraticModule):
    """The automorphism Id + t*Id of (M + -M) over Z[t, t^-1].

    Input must be a nonsingular form over Z.  Returns the quadratic
    module Q = (M + -M) tensored up to the Laurent ring together with
    the isometry U = Id_M + t*Id_(-M); U is certified by is_isometry.
    """
    if not m.is_over_z():
        raise BadParameters("input form must be defined over Z")
    if m.rank:
        d = ldet(m.gram).constant_value()
        if d == 0:
            raise SingularForm("gram determinant is zero")
        if abs(d) != 1:
            raise SingularForm(f"gram determinant {d} is not a unit of Z")
    q = m.ortho_sum(m.negate())
    r = m.rank
    u = lidentity(2 * r)
    for i in range(r, 2 * r):
        u[i][i] = LaurentPoly.t(1)
    assert q.is_isometry(u), "Id + t must preserve the doubled form"
    return q, u


# ---------------------------------------------------------------------------
# hyperbolization over Z (best-effort witness search)


def _int_gram(q: QuadraticModule):
    gram = [[x.constant_value() for x in row] for row in q.gram]
    qs = [v.constant_value() for v in q.q_values]
    return gram, qs


def _lambda_int(gram, x, y):
    out = 0
    for i, xi in enumerate(x):
        if xi:
            row = gram[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    out += xi * row[j] * yj
    return out


def _q_int(gram, qs, x, eps):
    out = 0
    for i, xi in enumerate(x):
        if not xi:
            continue
        out += xi * xi * qs[i]
        row = gram[i]
        for j in range(i + 1, len(x)):
            if x[j] and row[j]:
                out += xi * row[j] * x[j]
    return out % 2 if eps == -1 else out


def _isotropic_candidates(rank, bound, max_support):
    """Sparse vectors ordered by amplitude, then support size."""
    for amp in range(1, bound + 1):
        vals = [v for v in range(-amp, amp + 1) if v]
        for s in range(1, min(max_support, rank) + 1):
            for supp in combinations(range(rank), s):
                for coeffs in product(vals, repeat=s):
                    if max(abs(c) for c in coeffs) != amp:
                        continue
                    vec = [0] * rank
                    for k, c in zip(supp, coeffs):
                        vec[k] = c
                    yield vec


def _gcd_vec(v):
    g = 0
    for x in v:
        g = _xgcd(g, x)[2]
    return g


def _solve_unit_pairing(r):
    """Find integer w with sum_j r[j] * w[j] = 1, or None."""
    n = len(r)
    w = [0] * n
    g = 0
    # Accumulate gcd left to right, tracking the combination.
    comb = [0] * n
    for j in range(n):
        if r[j] == 0:
            continue
        if g == 0:
            g = abs(r[j])
            comb = [0] * n
            comb[j] = 1 if r[j] > 0 else -1
        else:
            x, y, g2 = _xgcd(g, r[j])
            comb = [x * c for c in comb]
            comb[j] += y
            g = g2
        if g == 1:
            break
    if g != 1:
        return None
    return comb


def hyperbolize(q: QuadraticModule, search_bound: int, max_support: int = 4,
                candidate_cap: int = 400000):
    """Search for a change of basis exhibiting q as hyperbolic, over Z.

    Returns an integer matrix P whose columns (v_1..v_g, w_1..w_g) form a
    hyperbolic basis: P^T * gram * P equals the hyperbolic gram and q
    vanishes on every column.  Greedy strategy: find a primitive
    isotropic vector with coordinates in [-search_bound, search_bound],
    complete it to a hyperbolic pair, split off the pair's orthogonal
    complement and recurse.  Raises SearchExhausted on failure, which is
    not a disproof of hyperbolicity.
    """
    if not q.is_over_z():
        raise BadParameters("hyperbolize works over Z only")
    if q.rank % 2:
        raise BadParameters("odd rank cannot be hyperbolic")
    gram0, qs0 = _int_gram(q)
    if q.rank and abs(int_det_via_fraction(gram0)) != 1:
        raise SingularForm("form must be unimodular")
    eps = q.eps
    genus = q.rank // 2

    # Fast path: already the standard hyperbolic basis.
    hyper = [[x.constant_value() for x in row] for row in phi_gram(genus, eps)]
    q_all_zero = all((v % 2 == 0) if eps == -1 else (v == 0) for v in qs0)
    if gram0 == hyper and q_all_zero:
        return int_identity_matrix(q.rank)

    basis = int_identity_matrix(q.rank)  # rows: current lattice basis, original coords
    v_list, w_list = [], []
    budget = candidate_cap

    while len(v_list) < genus:
        rank = len(basis)
        gram = [[_lambda_int(gram0, basis[i], basis[j]) for j in range(rank)]
                for i in range(rank)]
        qs = [_q_int(gram0, qs0, basis[i], eps) for i in range(rank)]

        found = None
        for vec in _isotropic_candidates(rank, search_bound, max_support):
            budget -= 1
            if budget < 0:
                raise SearchExhausted("candidate budget exhausted")
            if _gcd_vec(vec) != 1:
                continue
            if _q_int(gram, qs, vec, eps) != 0:
                continue
            if eps == 1 and _lambda_int(gram, vec, vec) != 0:
                continue
            found = vec
            break
        if found is None:
            raise SearchExhausted(
                f"no primitive isotropic vector within bound {search_bound}"
            )
        v = found
        pairing = [_lambda_int(gram, v, [int(j == k) for k in range(rank)])
                   for j in range(rank)]
        w = _solve_unit_pairing(pairing)
        if w is None:
            raise SearchExhausted("isotropic vector does not pair to a unit")
        # Correct q(w) without disturbing lambda(v, w) = 1:
        # q(w + m*v) = q(w) + m*eps.
        m = _q_int(gram, qs, w, eps)
        if eps == -1:
            m %= 2
        w = [wi + (-eps * m) * vi for wi, vi in zip(w, v)]
        assert _q_int(gram, qs, w, eps) == 0
        if eps == 1:
            assert _lambda_int(gram, w, w) == 0

        to_orig = lambda coords: [
            sum(c * basis[i][k] for i, c in enumerate(coords)) for k in range(q.rank)
        ]
        v_list.append(to_orig(v))
        w_list.append(to_orig(w))

        # Project the basis onto the orthogonal complement of (v, w).
        from .snf import IntLattice

        lat = IntLattice(q.rank)
        for i in range(rank):
            e = [int(i == k) for k in range(rank)]
            alpha = _lambda_int(gram, e, w)
            beta = eps * _lambda_int(gram, e, v)
            proj = [e[k] - alpha * v[k] - beta * w[k] for k in range(rank)]
            lat.add(to_orig(proj))
        basis = [row[:] for row in lat.rows]
        if len(basis) != rank - 2:
            raise SearchExhausted("complement projection degenerated")

    p = [[0] * q.rank for _ in range(q.rank)]
    for j, col in enumerate(v_list + w_list):
        for i in range(q.rank):
            p[i][j] = col[i]
    # Certify by exact recomputation of the transformed gram and q values.
    cols = [[p[i][j] for i in range(q.rank)] for j in range(q.rank)]
    for i in range(q.rank):
        for j in range(q.rank):
            if _lambda_int(gram0, cols[i], cols[j]) != hyper[i][j]:
                raise SearchExhausted("certification failed: gram mismatch")
    for col in cols:
        if _q_int(gram0, qs0, col, eps) != 0:
            raise SearchExhausted("certification failed: q nonzero on new basis")
    return p


def int_identity_matrix(nn):
    return [[int(i == j) for j in range(nn)] for i in range(nn)]


def int_det_via_fraction(m) -> int:
    """Independent exact determinant (fraction LU), for certification."""
    from fractions import Fraction

    nn = len(m)
    if nn == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(nn):
        piv = next((i for i in range(k, nn) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, nn):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    assert det.denominator == 1
    return int(det)
