"""Formal metastable Whitehead-bracket calculus on a circle wedge spheres.

Elements of the pi-coinvariants of the degree-(2n+k-1) homotopy of
S^1 v (v^2g S^n) are written in the basic-product basis: classes
[t^a x_i, x_j] with the label convention (a, i) < (0, j) lexicographic,
plus bracket-square classes on the diagonal.  The rewriting rules are

    [x, t*y] ~ [t^-1 x, y]                  (pi-coinvariance)
    [u, v]   = (-1)^(|u||v|) [v, u]          (graded symmetry)
    [u, v o gamma] = [u, v] o (suspension of gamma)

and on the diagonal the bracket square [x_i, x_i] has order 1 when n is
1, 3 or 7, order 2 for other odd n, and infinite order for even n.
Coefficients live in the k-th stable stem (cyclic for k <= 7), stored as
integer multiples of its standard generator.

All brackets here are formal: the module implements the coinvariant
groups and the maps between them, not sphere homotopy itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import OutOfRange, DimensionMismatch, UnknownGroup
from .laurent import LaurentPoly, FormParameter
from .snf import AbelianGroup
from .tables import stable_stem_order, bracket_square_order, stable_stem, ehp_case


@dataclass(frozen=True)
class RawBracket:
    """One unnormalised term c * [t^a x_i (o s*gamma?), t^b x_j (o s*gamma?)].

    stem is the integer multiple s of the standard degree-k stem
    generator composed onto one slot (stem_slot 0 or 1); for k = 0 use
    stem 1 and stem_slot None.
    """

    coeff: int
    left: tuple
    right: tuple
    stem: int = 1
    stem_slot: object = None


class WhiteheadElement:
    """Normal form of a coinvariant class in the basic-product basis.

    Three coefficient pots, all keyed over 0-based sphere indices
    x_0..x_{2g-1} (x_i = a_{i+1} for i < g, x_{g+i} = b_{i+1}):

    * offdiag[(a, i, j)] with i != j and (a, i) < (0, j): the class
      [t^a x_i, x_j] (composed with the stem generator when k > 0);
    * diag[(i, a)] with a > 0: the class [t^a x_i, x_i];
    * sphere[i]: the bracket-square class [x_i, x_i], whose coefficient
      additionally obeys the order rule for the square.
    """

    def __init__(self, n: int, g: int, k: int):
        if k < 0 or k >= n - 1:
            raise OutOfRange(f"metastable range needs 0 <= k < n-1; got k={k}, n={n}")
        self.n = n
        self.g = g
        self.k = k
        self.eps = (-1) ** n
        self.stem_order = stable_stem_order(k)
        sq = bracket_square_order(n)
        if sq == 1:
            self.square_order = 1
        elif sq == 2:
            self.square_order = 2 if self.stem_order == 0 else gcd(2, self.stem_order)
        else:
            self.square_order = self.stem_order
        self.offdiag = {}
        self.diag = {}
        self.sphere = {}

    # -- coefficient bookkeeping ---------------------------------------

    def _stem_reduce(self, c: int) -> int:
        return c % self.stem_order if self.stem_order else c

    def _square_reduce(self, c: int) -> int:
        return c % self.square_order if self.square_order else c

    def _bump(self, pot: dict, key, c: int, reduce):
        c = reduce(pot.get(key, 0) + c)
        if c:
            pot[key] = c
        else:
            pot.pop(key, None)

    def add_bracket(self, a: int, i: int, j: int, c: int):
        """Accumulate c * [t^a x_i, x_j], rewriting into the normal form."""
        if not 0 <= i < 2 * self.g or not 0 <= j < 2 * self.g:
            raise DimensionMismatch(f"sphere index out of range for genus {self.g}")
        if c == 0:
            return
        if i == j:
            if a == 0:
                self._bump(self.sphere, i, c, self._square_reduce)
            elif a > 0:
                self._bump(self.diag, (i, a), c, self._stem_reduce)
            else:
                self._bump(self.diag, (i, -a), self.eps * c, self._stem_reduce)
        elif a < 0 or (a == 0 and i < j):
            self._bump(self.offdiag, (a, i, j), c, self._stem_reduce)
        else:
            self._bump(self.offdiag, (-a, j, i), self.eps * c, self._stem_reduce)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.offdiag or self.diag or self.sphere)

    def __eq__(self, other):
        if not isinstance(other, WhiteheadElement):
            return NotImplemented
        return (
            (self.n, self.g, self.k) == (other.n, other.g, other.k)
            and self.offdiag == other.offdiag
            and self.diag == other.diag
            and self.sphere == other.sphere
        )

    def __hash__(self):
        return hash((
            self.n, self.g, self.k,
            tuple(sorted(self.offdiag.items())),
            tuple(sorted(self.diag.items())),
            tuple(sorted(self.sphere.items())),
        ))

    def copy(self) -> "WhiteheadElement":
        out = WhiteheadElement(self.n, self.g, self.k)
        out.offdiag = dict(self.offdiag)
        out.diag = dict(self.diag)
        out.sphere = dict(self.sphere)
        return out

    def __add__(self, other: "WhiteheadElement") -> "WhiteheadElement":
        if (self.n, self.g, self.k) != (other.n, other.g, other.k):
            raise DimensionMismatch("cannot add classes with different (n, g, k)")
        out = self.copy()
        for (a, i, j), c in other.offdiag.items():
            out.add_bracket(a, i, j, c)
        for (i, a), c in other.diag.items():
            out.add_bracket(a, i, i, c)
        for i, c in other.sphere.items():
            out.add_bracket(0, i, i, c)
        return out

    def __neg__(self):
        out = WhiteheadElement(self.n, self.g, self.k)
        for (a, i, j), c in self.offdiag.items():
            out.add_bracket(a, i, j, -c)
        for (i, a), c in self.diag.items():
            out.add_bracket(a, i, i, -c)
        for i, c in self.sphere.items():
            out.add_bracket(0, i, i, -c)
        return out

    def __sub__(self, other):
        return self + (-other)

    def to_raw_terms(self):
        """Re-express the normal form as raw bracket terms (for re-normalising)."""
        slot = None if self.k == 0 else 1
        terms = []
        for (a, i, j), c in self.offdiag.items():
            terms.append(RawBracket(1 if slot else c, (a, i), (0, j),
                                    stem=c if slot else 1, stem_slot=slot))
        for (i, a), c in self.diag.items():
            terms.append(RawBracket(1 if slot else c, (a, i), (0, i),
                                    stem=c if slot else 1, stem_slot=slot))
        for i, c in self.sphere.items():
            terms.append(RawBracket(1 if slot else c, (0, i), (0, i),
                                    stem=c if slot else 1, stem_slot=slot))
        return terms

    def describe(self) -> dict:
        return {
            "offdiag": {f"t^{a} x{i} (x) x{j}": c
                        for (a, i, j), c in sorted(self.offdiag.items())},
            "diag": {f"[t^{a} x{i}, x{i}]": c
                     for (i, a), c in sorted(self.diag.items())},
            "sphere": {f"[x{i}, x{i}]": c for i, c in sorted(self.sphere.items())},
        }

    def __repr__(self):
        if self.is_zero():
            return f"WhiteheadElement(n={self.n}, g={self.g}, k={self.k}, 0)"
        return (f"WhiteheadElement(n={self.n}, g={self.g}, k={self.k}, "
                f"{self.describe()})")


def normalize(terms, n: int, g: int, k: int = 0) -> WhiteheadElement:
    """Rewrite a sum of raw bracket terms into the unique normal form.

    Each term is a RawBracket (or a bare (coeff, (a,i), (b,j)) triple for
    k = 0).  Compositions with a stem class are pushed out of the
    bracket through the suspension formula; a stem sitting in the first
    slot additionally swaps the slots with the graded-symmetry sign
    (-1)^((n+k)*n).
    """
    out = WhiteheadElement(n, g, k)
    for term in terms:
        if not isinstance(term, RawBracket):
            coeff, left, right = term
            term = RawBracket(coeff, tuple(left), tuple(right))
        c = term.coeff * term.stem
        (a, i) = term.left
        (b, j) = term.right
        if term.stem_slot == 0:
            if ((n + k) * n) % 2:
                c = -c
            (a, i), (b, j) = (b, j), (a, i)
        out.add_bracket(a - b, i, j, c)
    return out


def boundary_class(n: int, g: int) -> WhiteheadElement:
    """The boundary sum of hyperbolic bracket pairs sum_i [a_i, b_i]."""
    return normalize(
        [RawBracket(1, (0, i), (0, g + i)) for i in range(g)], n, g, 0
    )


# ---------------------------------------------------------------------------
# the boundary-preservation defect of a matrix


def phi_omega_defect(m, n: int) -> WhiteheadElement:
    """normalize(phi(omega) - omega) for the block matrix m.

    Expands sum_i [phi(a_i), phi(b_i)] - [a_i, b_i] fully bilinearly,
    monomial by monomial, through the rewriting rules.  Zero iff m
    preserves the boundary class.  This code path is independent of the
    dagger-algebra membership conditions.
    """
    g = m.g
    terms = []
    for i in range(g):
        left = []  # images phi(a_i): (sphere index, Laurent coefficient)
        right = []
        for r in range(g):
            if m.a[r][i]:
                left.append((r, m.a[r][i]))
            if m.c[r][i]:
                left.append((g + r, m.c[r][i]))
            if m.b[r][i]:
                right.append((r, m.b[r][i]))
            if m.d[r][i]:
                right.append((g + r, m.d[r][i]))
        for (u, p) in left:
            for (v, q) in right:
                for e1, c1 in p.c.items():
                    for e2, c2 in q.c.items():
                        terms.append(RawBracket(c1 * c2, (e1, u), (e2, v)))
        terms.append(RawBracket(-1, (0, i), (0, g + i)))
    return normalize(terms, n, g, 0)


def lemma_equivalence_check(m, n: int) -> bool:
    """The executable form of the boundary-preservation criterion.

    The symbolic predicate (defect = 0) must agree with the block-matrix
    conditions (with the parity-appropriate full form parameter) on
    every input; the two are computed along independent code paths.
    """
    from .unitary import membership_by_conditions

    defect_zero = phi_omega_defect(m, n).is_zero()
    conds = membership_by_conditions(m, n, FormParameter.for_n(n, "FULL"))
    return defect_zero == conds


# ---------------------------------------------------------------------------
# module homomorphisms and the restriction map on higher homotopy


class HomotopyHom:
    """A hom from pi_n to pi_{n+k} of the wedge, in the hyperbolic basis.

    entries[r][i] is a Laurent polynomial p meaning: x_i maps to
    sum_a p_a * t^a x_r o (p_a copies of the standard degree-k stem
    generator).  For k = 0 this is an ordinary matrix over the group
    ring.
    """

    def __init__(self, n: int, k: int, g: int, entries):
        if k < 0 or k >= n - 1:
            raise OutOfRange(f"metastable range needs 0 <= k < n-1; got k={k}")
        size = 2 * g
        if len(entries) != size or any(len(row) != size for row in entries):
            raise DimensionMismatch("entries must be 2g x 2g")
        self.n = n
        self.k = k
        self.g = g
        self.entries = [[LaurentPoly.coerce(x) for x in row] for row in entries]

    @classmethod
    def zero(cls, n: int, k: int, g: int) -> "HomotopyHom":
        size = 2 * g
        return cls(n, k, g, [[0] * size for _ in range(size)])

    @classmethod
    def from_tensor(cls, n: int, k: int, g: int, x_exp: int, x_idx: int,
                    y_exp: int, y_idx: int, stem: int = 1) -> "HomotopyHom":
        """The hom lambda(-, t^a x_{x_idx}) * (t^b x_{y_idx} o stem).

        Realises the identification of the tensor square with the hom
        module on a decomposable tensor x (x) y.
        """
        eps = (-1) ** n
        size = 2 * g
        entries = [[LaurentPoly.coerce(0) for _ in range(size)] for _ in range(size)]
        # lambda(x_r, t^a x_xi) is nonzero only for the hyperbolic partner.
        partner = x_idx + g if x_idx < g else x_idx - g
        pairing = 1 if x_idx >= g else eps  # lambda(a, b) = 1, lambda(b, a) = eps
        entries[y_idx][partner] = LaurentPoly.t(y_exp - x_exp, pairing * stem)
        return cls(n, k, g, entries)


def rho_k(phi: HomotopyHom, n: int, k: int) -> WhiteheadElement:
    """The restriction map on degree-k homotopy of the mapping spaces.

    phi maps to  sum_i [phi(a_i), b_i] + (-1)^(nk) [a_i, phi(b_i)],
    normalised.
    """
    if not 0 < k < n - 1:
        raise OutOfRange(f"need 0 < k < n-1, got k={k}, n={n}")
    if (phi.n, phi.k) != (n, k):
        raise DimensionMismatch("hom degrees do not match the requested map")
    g = phi.g
    sign = (-1) ** ((n * k) % 2)
    terms = []
    for i in range(g):
        for r in range(2 * g):
            p = phi.entries[r][i]
            for e, c in p.c.items():
                terms.append(RawBracket(1, (e, r), (0, g + i), stem=c, stem_slot=0))
            q = phi.entries[r][g + i]
            for e, c in q.c.items():
                terms.append(RawBracket(sign, (0, i), (e, r), stem=c, stem_slot=1))
    return normalize(terms, n, g, k)


def tensor_bracket(n: int, k: int, g: int, x_exp: int, x_idx: int,
                   y_exp: int, y_idx: int, stem: int = 1) -> WhiteheadElement:
    """The normal form of [y, x] for x = t^a x_i, y = t^b x_j o stem."""
    return normalize(
        [RawBracket(1, (y_exp, y_idx), (x_exp, x_idx), stem=stem, stem_slot=0)],
        n, g, k,
    )


# ---------------------------------------------------------------------------
# kernel/cokernel bookkeeping for the restriction map


@dataclass
class RhoStructureReport:
    """Graded pieces of the kernel and cokernel of the restriction map.

    Coefficient groups are resolved through the lookup tables where they
    reach; tensor factors record the module the coefficients are
    tensored with (H of rank 2g, or the two symmetric-tensor modules).
    """

    n: int
    k: int
    g: int
    p: object
    cokernel_coeff: object
    cokernel_tensor: str
    kernel_sym_coeff: object
    kernel_sym_tensor: str
    kernel_alt_coeff: object
    kernel_alt_tensor: str
    notes: dict = field(default_factory=dict)


def rho_kernel_cokernel(n: int, k: int, g: int, p: int = None) -> RhoStructureReport:
    """Structured description of ker/coker of the degree-k restriction map.

    With an odd prime p the answer is fully resolved through the stable
    stems (p-locally the relevant unstable groups are stable).  Without
    a prime only k = 2 is covered by the curated case analyses.
    """
    if not 2 <= k < n - 1:
        raise OutOfRange(f"need 2 <= k < n-1, got k={k}, n={n}")
    notes = {}
    if p is not None:
        if p == 2 or not _odd_prime(p):
            raise OutOfRange("p-local resolution requires an odd prime")
        coker = stable_stem(n + k - 1).localize_at(p)
        stem = stable_stem(k - 1).localize_at(p)
        if n % 2:
            k_grp, quot = stem, AbelianGroup.trivial()
            notes["kernel"] = "whole stem in the symmetric part (n odd)"
        else:
            k_grp, quot = AbelianGroup.trivial(), stem
            notes["kernel"] = "whole stem in the alternating part (n even)"
        return RhoStructureReport(
            n=n, k=k, g=g, p=p,
            cokernel_coeff=coker, cokernel_tensor="H (rank 2g)",
            kernel_sym_coeff=k_grp, kernel_sym_tensor="S+ (x(x)x classes)",
            kernel_alt_coeff=quot, kernel_alt_tensor="S- (x(x)y - y(x)x classes)",
            notes=notes,
        )
    if k != 2:
        raise UnknownGroup(
            "integral kernel/cokernel data is curated only for k = 2; "
            "pass an odd prime for the localised answer"
        )
    k_grp = ehp_case(n, "KER_ETA")
    two = AbelianGroup.cyclic(2)  # pi_{n+1}(S^n) for n >= 3
    quot = AbelianGroup.trivial() if k_grp == two else two
    level2 = ehp_case(n, "COKER_LEVEL2")
    coker = level2.get("image")
    notes["cokernel"] = "suspension image one degree above the bracket square"
    return RhoStructureReport(
        n=n, k=k, g=g, p=None,
        cokernel_coeff=coker, cokernel_tensor="H (rank 2g)",
        kernel_sym_coeff=k_grp, kernel_sym_tensor="S+ (x(x)x classes)",
        kernel_alt_coeff=quot, kernel_alt_tensor="S- (x(x)y - y(x)x classes)",
        notes=notes,
    )


def _odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True
