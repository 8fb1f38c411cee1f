"""Curated exact lookup tables and closed-form graded computations.

Every table entry carries a provenance note naming the classical result
it comes from.  Operations that would need a group beyond the tables
fail loudly with UnknownGroup instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OutOfRange, UnknownGroup, BadParameters
from .snf import AbelianGroup


@dataclass(frozen=True)
class TableEntry:
    value: object
    provenance: str


# ---------------------------------------------------------------------------
# stable stems, pi_*(SO) rationally, L- and K-groups, bP orders

# k-th stable homotopy group of spheres, as the order of the (cyclic for
# k <= 7) group: 0 encodes Z, 1 encodes the trivial group.
STABLE_STEMS = {
    0: TableEntry(0, "pi_0^s = Z; degree (Hurewicz)"),
    1: TableEntry(2, "pi_1^s = Z/2 generated by eta (Freudenthal/Hopf)"),
    2: TableEntry(2, "pi_2^s = Z/2 generated by eta^2 (Toda)"),
    3: TableEntry(24, "pi_3^s = Z/24 generated by nu (Serre, Toda)"),
    4: TableEntry(1, "pi_4^s = 0 (Toda)"),
    5: TableEntry(1, "pi_5^s = 0 (Toda)"),
    6: TableEntry(2, "pi_6^s = Z/2 generated by nu^2 (Toda)"),
    7: TableEntry(240, "pi_7^s = Z/240 generated by sigma (Toda, image of J)"),
}

L_EVEN_Z = {
    0: TableEntry(AbelianGroup.free(1),
                  "L_4k(Z) = Z generated by the rank-8 form of signature 8 "
                  "(Milnor; signature/8)"),
    1: TableEntry(AbelianGroup.cyclic(2),
                  "L_4k+2(Z) = Z/2 generated by the rank-2 Arf form "
                  "(Kervaire invariant)"),
}

BP_ORDERS = {
    3: TableEntry(1, "bP_6 = 0 (Kervaire-Milnor)"),
    7: TableEntry(1, "bP_14 = 0 (Kervaire-Milnor)"),
}


def stable_stem_order(k: int) -> int:
    """Order of the k-th stable stem: 0 means Z, 1 means trivial."""
    if k < 0:
        return 1
    if k not in STABLE_STEMS:
        raise UnknownGroup(f"stable stem {k} is beyond the curated table (k <= 7)")
    return STABLE_STEMS[k].value


def stable_stem(k: int) -> AbelianGroup:
    return AbelianGroup.cyclic(stable_stem_order(k))


def pi_so_rational(j: int) -> int:
    """dim_Q pi_j(SO) x Q: 1 iff j = 3 mod 4 (Bott periodicity)."""
    return 1 if j >= 0 and j % 4 == 3 else 0


def l_even(n: int) -> AbelianGroup:
    """L_2n(Z): Z for n even, Z/2 for n odd."""
    return L_EVEN_Z[n % 2].value


def l_symmetric(d: int) -> AbelianGroup:
    """The symmetric L-groups L^d(Z) (nonperiodic; Ranicki's tables)."""
    r = d % 4
    if r == 0:
        return AbelianGroup.free(1)
    if r == 1 and d > 0:
        return AbelianGroup.cyclic(2)
    if r == 2 and d < -4:
        return AbelianGroup.cyclic(2)
    return AbelianGroup.trivial()


def l_symmetric_laurent(d: int) -> AbelianGroup:
    """L^d of the Laurent ring: L^d(Z) + L^{d-1}(Z) (Shaneson splitting)."""
    return l_symmetric(d).direct_sum(l_symmetric(d - 1))


def l_symmetric_table(d: int, shaneson: bool = False) -> AbelianGroup:
    return l_symmetric_laurent(d) if shaneson else l_symmetric(d)


def bp_order(n: int, external: int = None) -> int:
    """|bP_2n|; stored only for n = 3, 7, otherwise supplied by the caller."""
    if n in BP_ORDERS:
        return BP_ORDERS[n].value
    if external is None:
        raise UnknownGroup(
            f"|bP_{2*n}| is not stored for n={n}; pass it as an external parameter"
        )
    return external


def k_theory_orbit_rational(d: int) -> int:
    """dim_Q of degree d of the C2-orbit K-theory part: 1 for d = 0, 1.

    Via Bass-Heller-Swan the Laurent ring contributes one shifted copy;
    Borel's computation of K_*(Z) x Q and the Farrell-Hsiang involution
    leave exactly degrees 0 and 1.
    """
    return 1 if d in (0, 1) else 0


def gw_rational(n: int, d: int) -> int:
    """dim_Q pi_d(GW) of the Laurent ring: K-part plus L-part.

    The L-part contributes in degrees d with d + 2n = 0, 1 mod 4.
    """
    l_part = 1 if (d + 2 * n) % 4 in (0, 1) else 0
    return k_theory_orbit_rational(d) + l_part


# ---------------------------------------------------------------------------
# rational homotopy of the stable diffeomorphism side


@dataclass
class GradedQVector:
    """Finitely supported map degree -> rational dimension."""

    dims: dict = field(default_factory=dict)

    def dim(self, k: int) -> Fraction:
        return self.dims.get(k, Fraction(0))

    def support(self):
        return sorted(k for k, v in self.dims.items() if v)


def mttheta_rational_homotopy(n: int, k_max: int) -> GradedQVector:
    """Rational homotopy dimensions in degrees 0 < k <= k_max.

    Degree-k dimension equals dim H_{k+2n}(S^1 x SO/SO(2n); Q), where
    the cohomology of SO/SO(2n) is the free graded-commutative algebra
    Lambda[x_{4n+3}, x_{4n+7}, ...] x Q[e]/(e^2) with |e| = 2n.
    Valid for k_max < 4n + 3.
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    if k_max >= 4 * n + 3:
        raise OutOfRange(f"validity range is k < {4 * n + 3}")
    top = k_max + 2 * n
    # Poincare series of the factors, truncated at degree `top`.
    series = [0] * (top + 1)
    series[0] = 1
    def mult_by(factor_degrees):
        nonlocal series
        out = series[:]
        for deg in factor_degrees:
            for i in range(top + 1 - deg):
                if series[i]:
                    out[i + deg] += series[i]
        return out

    series = mult_by([2 * n])          # e with e^2 = 0
    series = mult_by([1])              # H_*(S^1)
    i = 4 * n + 3
    while i <= top:
        series = mult_by([i])          # exterior generator x_i
        i += 4
    dims = {k: Fraction(series[k + 2 * n]) for k in range(1, k_max + 1)
            if series[k + 2 * n]}
    return GradedQVector(dims)


def mttheta_expected_support(n: int) -> list:
    """Closed-form support in the validity range: {1, 2n+3, 2n+4, 2n+7, 2n+8}."""
    return [1, 2 * n + 3, 2 * n + 4, 2 * n + 7, 2 * n + 8]


# ---------------------------------------------------------------------------
# metastable case analyses


def bracket_square_order(n: int) -> int:
    """Order of the bracket-square class [x, x]: 1, 2, or 0 (= infinite).

    Trivial when n is 1, 3 or 7 (Hopf invariant one); order 2 for other
    odd n; infinite order for even n.
    """
    if n in (1, 3, 7):
        return 1
    return 2 if n % 2 else 0


def ehp_case(n: int, kind: str):
    """Curated metastable case analyses.

    KER_ETA: kernel of bracketing eta against the fundamental class;
    ORDER_RULE: the order of the bracket square (1, 2, or infinite=0);
    STAB_SURJ: surjectivity of stabilisation one degree above the square;
    COKER_LEVEL2: identification of the corresponding cokernel with the
    suspension image, with the known image order where the table covers it.
    """
    if n < 3:
        raise OutOfRange("case analysis requires n >= 3")
    kind = kind.upper()
    if kind == "KER_ETA":
        nontrivial = (n % 4 == 3) or n in (2, 6)
        return AbelianGroup.cyclic(2) if nontrivial else AbelianGroup.trivial()
    if kind == "ORDER_RULE":
        return bracket_square_order(n)
    if kind == "STAB_SURJ":
        if n == 6:
            return {
                "surjective": False,
                "cokernel": AbelianGroup.cyclic(4),
                "source_order": 60,
                "target": stable_stem(7),
            }
        return {"surjective": True, "cokernel": AbelianGroup.trivial()}
    if kind == "COKER_LEVEL2":
        out = {"identified_with_suspension_image": True}
        if n + 1 in STABLE_STEMS:
            target = stable_stem(n + 1)
            if n == 6:
                out["image"] = AbelianGroup.cyclic(60)
            else:
                out["image"] = target
            out["target"] = target
        return out
    raise BadParameters(f"unknown case kind {kind!r}")


# ---------------------------------------------------------------------------
# bookkeeping reports for the two headline computations


@dataclass
class RationalComparisonReport:
    n: int
    k: int
    mapping_space_dim: int
    fibration_dim: int

    @property
    def difference(self) -> int:
        return self.mapping_space_dim - self.fibration_dim


def theorem_a_report(n: int, k: int) -> RationalComparisonReport:
    """Compare two computations of the same rational dimension.

    Side one: pi_k of maps from the solid torus into SO, rationally,
    straight from Bott periodicity: dimension [2n+k = 0 or 3 mod 4].

    Side two: the long exact sequence of the stabilised fibration whose
    base has the Grothendieck-Witt dimensions of gw_rational and whose
    total space has the suspension-spectrum dimensions of
    mttheta_rational_homotopy, using that the degree-1 map between them
    is rationally injective (detected by the determinant).  The two must
    agree degreewise; their difference is the vanishing certificate.
    """
    if not (0 < k < n - 2):
        raise OutOfRange(f"need 0 < k < n-2, got k={k}, n={n}")
    bott = 1 if (2 * n + k) % 4 in (0, 3) else 0

    def total_dim(j):  # rational dim of the total space in degree j
        return 1 if j == 1 else 0  # degrees 2n+3.. are beyond k < n-2

    def base_dim(j):  # rational dim of the base in degree j
        return (1 if j == 1 else 0) + (1 if (2 * n + j) % 4 in (0, 1) else 0)

    if k >= 2:
        # ... -> pi_{k+1}(total)=0 -> pi_{k+1}(base) -> pi_k(fibre)
        #     -> pi_k(total)=0, exactly.
        fib = base_dim(k + 1)
    else:
        # k = 1: pi_1(total) -> pi_1(base) is injective (determinant
        # splitting), so pi_1(fibre) = dim pi_2(base).
        fib = base_dim(2)
    return RationalComparisonReport(n=n, k=k, mapping_space_dim=bott,
                                    fibration_dim=fib)


def theorem_a_sweep(n_range=range(3, 9)):
    """All valid (n, k) comparisons; every difference should be zero."""
    out = []
    for n in n_range:
        for k in range(1, n - 2):
            out.append(theorem_a_report(n, k))
    return out


@dataclass
class TorsionPipelineReport:
    """Certificate bundle for the lowest p-local torsion computation."""

    n: int
    p: int
    g: int
    window: int
    sign: int
    coinvariants_match: bool
    computed_group: AbelianGroup
    predicted_group: AbelianGroup
    p_localized_summand_rank: int
    extra_two_torsion: bool
    frobenius_formula_agrees: bool
    frobenius_multiplicative: bool
    no_tame_submodule_witness: int

    def passed(self) -> bool:
        return (self.coinvariants_match and self.frobenius_formula_agrees
                and self.frobenius_multiplicative)


def theorem_b_report(n: int, p: int, g: int, window: int,
                     frobenius_support=(2, 3, 4)) -> TorsionPipelineReport:
    """Assemble the desk-scale certificate chain for the torsion classes.

    Chains together: the coinvariant computation for the sign picked out
    by the parity of n, the Frobenius-operator formula checked against
    its covering-map oracle, multiplicativity of the operator family,
    and the no-tame-submodule witness for the truncated p-torsion module.
    """
    from . import coinvariants as coinv_mod
    from . import frobenius as frob_mod

    if not _is_prime(p):
        raise BadParameters(f"p = {p} is not prime")
    if not 2 * p - 3 < n - 2:
        raise OutOfRange(f"need 2p-3 < n-2: p={p}, n={n}")
    sign = (-1) ** (n + 1)
    res = coinv_mod.coinvariants_S(sign, n, g, window)
    formula_ok = True
    for d in frobenius_support:
        _, agrees = frob_mod.frobenius_on_coinvariants(d, n, g, sign, window)
        formula_ok = formula_ok and agrees
    mult_ok = frob_mod.frobenius_multiplicative(n, g, sign, window,
                                                support=frobenius_support)
    witness = frob_mod.no_tame_submodule(p, window)
    # After tensoring with Z/p the free summands give rank `window` of
    # p-torsion; the Z/2 shows up additionally exactly when p = 2.
    extra = (p == 2)
    return TorsionPipelineReport(
        n=n, p=p, g=g, window=window, sign=sign,
        coinvariants_match=res.match,
        computed_group=res.computed,
        predicted_group=res.predicted,
        p_localized_summand_rank=window,
        extra_two_torsion=extra,
        frobenius_formula_agrees=formula_ok,
        frobenius_multiplicative=mult_ok,
        no_tame_submodule_witness=witness.witness_prime,
    )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def all_entries_have_provenance() -> bool:
    tables = [STABLE_STEMS, L_EVEN_Z, BP_ORDERS]
    return all(
        isinstance(entry, TableEntry) and bool(entry.provenance.strip())
        for table in tables
        for entry in table.values()
    )
