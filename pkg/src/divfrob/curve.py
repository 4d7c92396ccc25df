"""Curve data for y^n = f(t): validation, invariants, bases and index bookkeeping.

Two affine charts cover the curve. U carries (t, y). V carries (s, z) with
s = 1/t and z = s^r y. The only chart-change rule used anywhere in the package
is ``s^e ds / z^c = -t^(rc-2-e) dt / y^c``, implemented by :func:`to_chart`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BadDegreeResidue,
    DegreeDivisibleByP,
    InvalidExponent,
    LeadingCoeffNotUnit,
    ModulusTooLarge,
    NNotCoprimeToP,
    NoShiftExists,
    NotPrime,
    NotSeparable,
    RootAtZero,
)
from .modring import FpPoly, GradedForm, Laurent, W1Poly, fp_bezout

# p^2 times a coefficient count must stay comfortably inside int64
MAX_PRIME = 3_000_000_000


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class CurveParams:
    """Raw curve data; f is read modulo p^2."""

    p: int
    n: int
    f: W1Poly

    @classmethod
    def from_ints(cls, p: int, n: int, coeffs: Sequence[int]) -> "CurveParams":
        return cls(p, n, W1Poly(p, tuple(coeffs)))


@dataclass(frozen=True)
class DerivedParams:
    """A validated curve together with its invariants."""

    p: int
    n: int
    f: W1Poly
    l: int
    r: int
    g: int
    f2: W1Poly
    f_modp: FpPoly
    f2_modp: FpPoly

    @property
    def ninv(self) -> int:
        """Inverse of n in F_p."""
        return pow(self.n, -1, self.p)


class Block(str, enum.Enum):
    H0 = "H0"
    H1 = "H1"


@dataclass(frozen=True, order=True)
class BasisElement:
    """``t^i dt / y^j`` for H0, ``t^(-i) y^j`` for H1."""

    block: Block
    j: int
    i: int

    @property
    def label(self) -> str:
        if self.block is Block.H0:
            t = {0: "", 1: "t*"}.get(self.i, f"t^{self.i}*")
            return f"{t}y^-{self.j}*dt"
        y = "y" if self.j == 1 else f"y^{self.j}"
        return f"t^-{self.i}*{y}"

    def __str__(self) -> str:
        return self.label


def omega(i: int, j: int) -> BasisElement:
    return BasisElement(Block.H0, j, i)


def hclass(i: int, j: int) -> BasisElement:
    return BasisElement(Block.H1, j, i)


# --- validation -------------------------------------------------------------


def validate(params: CurveParams) -> DerivedParams:
    p, n = params.p, params.n
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if p > MAX_PRIME:
        raise ModulusTooLarge(f"p = {p} exceeds the supported bound {MAX_PRIME}")
    if n < 2:
        raise InvalidExponent(f"n = {n} must be at least 2")
    if math.gcd(n, p) != 1:
        raise NNotCoprimeToP(f"gcd(n, p) = gcd({n}, {p}) != 1")
    f = params.f
    fp = f.reduce()
    if fp.degree != f.degree:
        raise LeadingCoeffNotUnit(
            f"leading coefficient {f.leading()} of f is divisible by p = {p}",
            hint="drop the top coefficient or make it a unit mod p",
        )
    l = fp.degree
    if l < 2 or (l + 1) % n:
        raise BadDegreeResidue(
            f"deg f = {l} must be at least 2 and congruent to -1 mod n = {n}"
        )
    if l % p == 0:
        raise DegreeDivisibleByP(f"deg f = {l} is divisible by p = {p}")
    gcd, _, _ = fp_bezout(fp, fp.derivative())
    if gcd.degree > 0:
        raise NotSeparable(f"f has a repeated factor mod p: gcd(f, f') = {list(gcd.coeffs)}")
    if fp[0] == 0:
        raise RootAtZero(
            "f(0) = 0 mod p",
            hint="substitute t -> t + u with f(u) != 0 mod p (see shift_to_unit)",
        )
    r = (l + 1) // n
    g = (l - 1) * (n - 1) // 2
    f2 = W1Poly(p, (0,) + tuple(reversed(f.coeffs)))
    return DerivedParams(p, n, f, l, r, g, f2, fp, f2.reduce())


def shift_to_unit(p: int, f: W1Poly) -> tuple[int, W1Poly]:
    """Smallest u in [0, p) with f(u) != 0 mod p, and f(t + u) mod p^2."""
    fp = f.reduce()
    for u in range(p):
        if fp(u):
            break
    else:
        raise NoShiftExists(f"f vanishes at every point of F_{p}")
    # Horner in W1[t] with the linear polynomial t + u
    tu = W1Poly(p, (u, 1))
    acc = W1Poly.zero(p)
    for c in reversed(f.coeffs):
        acc = acc * tu + W1Poly(p, (c,))
    return u, acc


def euclid_pj(p: int, j: int, n: int) -> tuple[int, int]:
    """``pj = a n + b`` with ``1 <= b <= n-1``."""
    a, b = divmod(p * j, n)
    assert 1 <= b <= n - 1, "euclid_pj needs 1 <= j < n and gcd(p, n) = 1"
    return a, b


# --- bases ------------------------------------------------------------------


def h0_indices(d: DerivedParams, j: int) -> range:
    return range(0, d.r * j - 1)


def h1_indices(d: DerivedParams, j: int) -> range:
    return range(1, d.r * j)


def enumerate_basis(d: DerivedParams) -> list[BasisElement]:
    h0 = [omega(i, j) for j in range(1, d.n) for i in h0_indices(d, j)]
    h1 = [hclass(i, j) for j in range(1, d.n) for i in h1_indices(d, j)]
    return h0 + h1


def isotypic_groups(d: DerivedParams) -> list[list[BasisElement]]:
    """Group j holds the H0 elements of class j and the H1 elements of class n-j."""
    return [
        [omega(i, j) for i in h0_indices(d, j)] + [hclass(i, d.n - j) for i in h1_indices(d, d.n - j)]
        for j in range(1, d.n)
    ]


def isotypic_permutation(d: DerivedParams) -> list[int]:
    """``perm[k]`` is the filtration index placed at isotypic position k."""
    index = {e: k for k, e in enumerate(enumerate_basis(d))}
    return [index[e] for group in isotypic_groups(d) for e in group]


# --- charts -----------------------------------------------------------------


def to_chart(d: DerivedParams, form: GradedForm, chart: str) -> GradedForm:
    """Rewrite a form on the other chart using ``s^e ds/z^c = -t^(rc-2-e) dt/y^c``.

    The rule reads the same in both directions, so one function serves both.
    """
    if form.chart == chart:
        return form
    p, r = d.p, d.r

    def flip(c: int, lt: Laurent) -> Laurent:
        if lt.is_zero():
            return lt
        # e -> rc - 2 - e reverses the coefficient order
        poly = FpPoly(p, lt.poly.array[::-1])
        return -Laurent(r * c - 2 - lt.top, poly)

    return GradedForm(p, d.n, {c: flip(c, lt) for c, lt in form.terms.items()}, chart)
