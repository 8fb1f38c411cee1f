"""Exact arithmetic in the Laurent group ring Z[t, t^-1].

Elements are stored sparsely as {exponent: coefficient} with no zero
coefficients, so two polynomials are equal iff their dicts are equal.
Coefficients are arbitrary-precision Python ints.

The ring carries the involution bar : t -> t^-1, and for each parity
sign eps = (-1)^n three nested "form parameter" subgroups used as the
indeterminacy of quadratic refinements:

    MIN  = {a - eps*bar(a)}          (always)
    FULL = MIN, enlarged by the constant 1 when n is 3 or 7
    MAX  = {a : a + eps*bar(a) = 0}
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParameters, NotAUnit


class LaurentPoly:
    """A sparse Laurent polynomial with integer coefficients.

    Treat instances as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        else:
            self.c = {e: v for e, v in dict(coeffs).items() if v != 0}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, k: int) -> "LaurentPoly":
        return cls({0: k})

    @classmethod
    def t(cls, e: int = 1, coeff: int = 1) -> "LaurentPoly":
        """The monomial coeff * t^e."""
        return cls({e: coeff})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {x!r} to LaurentPoly")

    # -- ring structure ----------------------------------------------

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        p = LaurentPoly.__new__(LaurentPoly)
        p.c = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = LaurentPoly.__new__(LaurentPoly)
        p.c = {e: -v for e, v in self.c.items()}
        return p

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    del out[e]
        p = LaurentPoly.__new__(LaurentPoly)
        p.c = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers only for units; use unit arithmetic")
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __bool__(self):
        return bool(self.c)

    # -- involution and structure queries ------------------------------

    def bar(self) -> "LaurentPoly":
        """The involution t -> t^-1 (exponent negation)."""
        p = LaurentPoly.__new__(LaurentPoly)
        p.c = {-e: v for e, v in self.c.items()}
        return p

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by the monomial t^e."""
        p = LaurentPoly.__new__(LaurentPoly)
        p.c = {k + e: v for k, v in self.c.items()}
        return p

    def coeff(self, e: int) -> int:
        return self.c.get(e, 0)

    def is_zero(self) -> bool:
        return not self.c

    def support(self):
        return sorted(self.c)

    def degree(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return max(self.c)

    def valuation(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no valuation")
        return min(self.c)

    def num_terms(self) -> int:
        return len(self.c)

    def constant_value(self) -> int:
        """The integer value, when the polynomial is constant."""
        if not self.c:
            return 0
        if set(self.c) == {0}:
            return self.c[0]
        raise ValueError(f"{self} is not constant")

    def is_constant(self) -> bool:
        return not self.c or set(self.c) == {0}

    def augment(self) -> int:
        """Evaluate at t = 1 (the augmentation to Z)."""
        return sum(self.c.values())

    # -- serialization --------------------------------------------------

    def to_pairs(self):
        """JSON form: list of [exponent, coefficient], ascending exponent."""
        return [[e, self.c[e]] for e in sorted(self.c)]

    @classmethod
    def from_pairs(cls, pairs) -> "LaurentPoly":
        out = {}
        for e, v in pairs:
            if e in out:
                raise ValueError(f"duplicate exponent {e} in pair list")
            out[int(e)] = int(v)
        return cls(out)

    def to_text(self) -> str:
        """Canonical text form "c0*t^e0 + c1*t^e1 + ..." (ascending e)."""
        if not self.c:
            return "0"
        return " + ".join(f"{self.c[e]}*t^{e}" for e in sorted(self.c))

    @classmethod
    def from_text(cls, s: str) -> "LaurentPoly":
        s = s.strip()
        if s == "0":
            return cls.zero()
        out = {}
        for term in s.split("+"):
            term = term.strip()
            if "*t^" not in term:
                raise ValueError(f"malformed term {term!r}")
            cs, es = term.split("*t^")
            e = int(es)
            if e in out:
                raise ValueError(f"duplicate exponent {e}")
            out[e] = int(cs)
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()


def bar(p: LaurentPoly) -> LaurentPoly:
    """The ring involution sending t^i to t^-i."""
    return p.bar()


def unit_decompose(p: LaurentPoly):
    """Write a unit of Z[t, t^-1] as (sign, exponent) with p = sign * t^exponent.

    The unit group is exactly {±t^i}; anything else raises NotAUnit.
    """
    if len(p.c) != 1:
        raise NotAUnit(f"{p.to_text()} has {len(p.c)} terms, units have exactly 1")
    (e, v), = p.c.items()
    if v not in (1, -1):
        raise NotAUnit(f"leading coefficient {v} is not ±1")
    return v, e


VARIANTS = ("MIN", "FULL", "MAX")


@dataclass(frozen=True)
class FormParameter:
    """One of the subgroups MIN ⊆ FULL ⊆ MAX of Z[t, t^-1] (see module docstring).

    eps is (-1)^n for the relevant half-dimension n; special records
    whether n is 3 or 7, which enlarges FULL by the constant 1.
    """

    eps: int
    variant: str
    special: bool = False

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise BadParameters(f"eps must be ±1, got {self.eps}")
        if self.variant not in VARIANTS:
            raise BadParameters(f"variant must be one of {VARIANTS}")

    @classmethod
    def for_n(cls, n: int, variant: str = "FULL") -> "FormParameter":
        return cls(eps=(-1) ** n, variant=variant, special=n in (3, 7))

    def contains(self, p: LaurentPoly) -> bool:
        """Membership of p in the subgroup."""
        u = p.c
        if self.eps == 1:
            # MIN = FULL = MAX: antisymmetric coefficients, zero constant term.
            if u.get(0, 0) != 0:
                return False
            return all(u.get(-e, 0) == -v for e, v in u.items() if e > 0) and all(
                u.get(e, 0) == -v for e, v in u.items() if e < 0
            )
        # eps == -1: symmetric coefficients; the constant term is constrained
        # only for MIN (even) and unconstrained for MAX and for FULL when n=3,7.
        if not all(u.get(-e, 0) == v for e, v in u.items() if e != 0):
            return False
        if self.variant == "MAX" or (self.variant == "FULL" and self.special):
            return True
        return u.get(0, 0) % 2 == 0

    def reduce(self, p: LaurentPoly) -> LaurentPoly:
        """Canonical representative of p modulo the subgroup.

        Supported on exponents >= 0; subtracting it from p lands in the
        subgroup.
        """
        u = p.c
        out = {}
        if self.eps == 1:
            if u.get(0, 0):
                out[0] = u[0]
            for e, v in u.items():
                if e > 0:
                    w = v + u.get(-e, 0)
                    if w:
                        out[e] = w
        else:
            for e, v in u.items():
                if e > 0:
                    w = v - u.get(-e, 0)
                    if w:
                        out[e] = w
            if self.variant == "MIN" or (self.variant == "FULL" and not self.special):
                c0 = u.get(0, 0) % 2
                if c0:
                    out[0] = c0
        return LaurentPoly(out)

    def min_basis(self, window: int):
        """Z-module generators of MIN truncated to exponents <= window.

        For eps=+1 these are t^a - t^-a; for eps=-1 they are t^a + t^-a
        together with the constant 2.
        """
        gens = []
        if self.eps == -1:
            gens.append(LaurentPoly.const(2))
        for a in range(1, window + 1):
            gens.append(LaurentPoly({a: 1, -a: -self.eps}))
        return gens


def param_membership(p: LaurentPoly, param: FormParameter) -> bool:
    """Whether p lies in the form-parameter subgroup."""
    return param.contains(p)


def min_witness(p: LaurentPoly, eps: int) -> LaurentPoly:
    """Solve p = a - eps*bar(a) for a, when p lies in MIN.

    The system is triangular: positive exponents of a are read off
    directly, and the constant term is u0/2 for eps=-1 (u0 must then be
    even) or forced to 0 for eps=+1.
    """
    u = p.c
    a = {e: v for e, v in u.items() if e > 0}
    c0 = u.get(0, 0)
    if eps == 1:
        if c0 != 0:
            raise ValueError("constant term must vanish when eps=+1")
    else:
        if c0 % 2:
            raise ValueError("constant term must be even when eps=-1")
        if c0:
            a[0] = c0 // 2
    cand = LaurentPoly(a)
    if cand - eps * cand.bar() != p:
        raise ValueError(f"{p.to_text()} is not of the form a - eps*bar(a)")
    return cand
