"""Dense polynomials over F_p and Z/p^2, Laurent-graded elements, small linear algebra.

Polynomials are immutable and store their coefficients in ascending degree with
no trailing zeros. Indexing outside ``[0, deg]`` returns 0; the column formulas
in :mod:`divfrob.blocks` rely on this.

Multiplication is numpy convolution. When the worst-case accumulated product
could overflow int64, the convolution runs on Python integers instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    BothZero,
    ConstantTermZero,
    InexactDivision,
    ModulusMismatch,
    NotDivisibleByP,
)

_INT64_LIMIT = 2**63 - 1


def _normalize(values, m: int) -> np.ndarray:
    """Reduce mod m and strip trailing zeros."""
    arr = np.asarray(values)
    if arr.dtype.kind in "iu" and arr.dtype.itemsize <= 8:
        arr = np.mod(arr.astype(np.int64), m)
    else:
        arr = np.array([int(x) % m for x in arr.tolist()], dtype=np.int64)
    nz = np.flatnonzero(arr)
    return arr[: nz[-1] + 1] if nz.size else arr[:0]


def _convolve(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return a[:0]
    if (m - 1) ** 2 * min(a.size, b.size) <= _INT64_LIMIT:
        return np.mod(np.convolve(a, b), m)
    out = np.convolve(a.astype(object), b.astype(object))
    return np.array([x % m for x in out], dtype=np.int64)


@dataclass(frozen=True)
class _ModPoly:
    p: int
    coeffs: tuple[int, ...]
    _arr: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        arr = _normalize(self.coeffs, self.modulus)
        arr.setflags(write=False)
        object.__setattr__(self, "_arr", arr)
        object.__setattr__(self, "coeffs", tuple(arr.tolist()))

    # construction helpers -------------------------------------------------

    @property
    def modulus(self) -> int:
        raise NotImplementedError

    def _new(self, values) -> "_ModPoly":
        return type(self)(self.p, values)

    @classmethod
    def zero(cls, p: int):
        return cls(p, ())

    @classmethod
    def one(cls, p: int):
        return cls(p, (1,))

    @classmethod
    def monomial(cls, p: int, k: int, c: int = 1):
        return cls(p, (0,) * k + (c,))

    # access ---------------------------------------------------------------

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 coefficient array."""
        return self._arr

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def window(self, start: int, length: int) -> np.ndarray:
        """Coefficients ``self[start], ..., self[start+length-1]`` with zero padding."""
        out = np.zeros(max(length, 0), dtype=np.int64)
        lo, hi = max(start, 0), min(start + length, len(self.coeffs))
        if lo < hi:
            out[lo - start : hi - start] = self._arr[lo:hi]
        return out

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    # ring operations ------------------------------------------------------

    def _check(self, other: "_ModPoly"):
        if type(other) is not type(self) or other.p != self.p:
            raise ModulusMismatch(f"cannot combine {self!r} and {other!r}")

    def _padded(self, other: "_ModPoly"):
        size = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(size, dtype=np.int64)
        b = np.zeros(size, dtype=np.int64)
        a[: self._arr.size] = self._arr
        b[: other._arr.size] = other._arr
        return a, b

    def __add__(self, other):
        self._check(other)
        a, b = self._padded(other)
        return self._new(a + b)

    def __sub__(self, other):
        self._check(other)
        a, b = self._padded(other)
        return self._new(a - b)

    def __neg__(self):
        return self._new(-self._arr)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        self._check(other)
        return self._new(_convolve(self._arr, other._arr, self.modulus))

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return NotImplemented

    def scale(self, c: int):
        c %= self.modulus
        if c == 0 or not self.coeffs:
            return self._new(())
        if (self.modulus - 1) * c <= _INT64_LIMIT:
            return self._new(self._arr * c)
        return self._new([x * c for x in self.coeffs])

    def derivative(self):
        if len(self.coeffs) <= 1:
            return self._new(())
        k = np.arange(1, len(self.coeffs), dtype=np.int64) % self.modulus
        return self._new(_mulmod(self._arr[1:], k, self.modulus))

    def compose_power(self, k: int):
        """Return ``a(t^k)``."""
        if not self.coeffs:
            return self
        out = np.zeros((len(self.coeffs) - 1) * k + 1, dtype=np.int64)
        out[::k] = self._arr
        return self._new(out)

    def truncate(self, order: int):
        """Reduce modulo ``t^order``."""
        return self._new(self._arr[: max(order, 0)])

    def shift(self, k: int):
        """Multiply by ``t^k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return self._new(np.concatenate([np.zeros(k, dtype=np.int64), self._arr]))

    def reverse(self, width: int | None = None):
        """Return ``t^width * a(1/t)``; width defaults to the degree."""
        width = self.degree if width is None else width
        return self._new(self.window(0, width + 1)[::-1])

    def __pow__(self, e: int):
        return _pow(self, e)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(p={self.p}, coeffs={list(self.coeffs)})"


def _mulmod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    if (m - 1) ** 2 <= _INT64_LIMIT:
        return np.mod(a * b, m)
    return np.array([int(x) * int(y) % m for x, y in zip(a, b)], dtype=np.int64)


def _pow(a, e: int, order: int | None = None):
    if e < 0:
        raise ValueError("negative exponent")
    result = type(a).one(a.p)
    base = a if order is None else a.truncate(order)
    while e:
        if e & 1:
            result = result * base
            if order is not None:
                result = result.truncate(order)
        e >>= 1
        if e:
            base = base * base
            if order is not None:
                base = base.truncate(order)
    return result


class FpPoly(_ModPoly):
    """Polynomial over F_p."""

    @property
    def modulus(self) -> int:
        return self.p

    def lift(self) -> "W1Poly":
        """Same integer coefficients, read mod p^2."""
        return W1Poly(self.p, self._arr)

    def monic(self) -> "FpPoly":
        if not self.coeffs:
            return self
        return self.scale(pow(self.leading(), -1, self.p))

    def divmod(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = self._arr.copy()
        db = other.degree
        if rem.size - 1 < db:
            return self._new(()), self
        inv = pow(other.leading(), -1, p)
        b = other._arr
        q = np.zeros(rem.size - db, dtype=np.int64)
        for k in range(rem.size - 1 - db, -1, -1):
            c = int(rem[k + db]) * inv % p
            if c:
                q[k] = c
                rem[k : k + db + 1] = np.mod(rem[k : k + db + 1] - _mulmod(b, np.full_like(b, c), p), p)
        return self._new(q), self._new(rem[:db] if db > 0 else rem[:0])


class W1Poly(_ModPoly):
    """Polynomial over Z/p^2 (Witt vectors of length two over F_p)."""

    @property
    def modulus(self) -> int:
        return self.p * self.p

    def reduce(self) -> FpPoly:
        return FpPoly(self.p, self._arr % self.p)


# --- named operations -------------------------------------------------------


def fp_pow(a: _ModPoly, e: int, order: int | None = None):
    """``a**e`` by binary exponentiation, optionally modulo ``t^order``."""
    return _pow(a, e, order)


def fp_bezout(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly, FpPoly]:
    """Extended Euclid: ``(g, u, w)`` with ``u*a + w*b = g`` and g the monic gcd."""
    if a.p != b.p or type(a) is not FpPoly or type(b) is not FpPoly:
        raise ModulusMismatch(f"cannot run Bezout on {a!r} and {b!r}")
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials is undefined")
    p = a.p
    r0, r1 = a, b
    s0, s1 = FpPoly.one(p), FpPoly.zero(p)
    t0, t1 = FpPoly.zero(p), FpPoly.one(p)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    c = pow(r0.leading(), -1, p)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def trunc_inverse(f: FpPoly, order: int) -> FpPoly:
    """Inverse of f modulo ``t^order`` by Newton doubling from ``1/f[0]``."""
    if order < 1:
        raise ValueError("order must be positive")
    if f[0] == 0:
        raise ConstantTermZero("f(0) = 0 has no power series inverse")
    p = f.p
    inv = FpPoly(p, (pow(f[0], -1, p),))
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        err = (f.truncate(prec) * inv).truncate(prec)
        # inv <- inv * (2 - f * inv)
        inv = (inv * (FpPoly(p, (2,)) - err)).truncate(prec)
    return inv


def p_times(h: FpPoly) -> W1Poly:
    """Image of h under F_p[t] -> pZ/p^2[t], the inverse of :func:`w1_divp`."""
    return W1Poly(h.p, h.array * h.p)


def w1_divp(g: W1Poly) -> FpPoly:
    """The unique h over F_p with ``g = p*h`` in Z/p^2[t]."""
    arr = g.array
    if np.any(arr % g.p):
        raise NotDivisibleByP(f"coefficients of {g!r} are not all divisible by p")
    return FpPoly(g.p, arr // g.p)


def exact_divide(a: FpPoly, b: FpPoly) -> FpPoly:
    q, r = a.divmod(b)
    if not r.is_zero():
        raise InexactDivision(f"remainder {list(r.coeffs)} is nonzero")
    return q


# --- Laurent polynomials ----------------------------------------------------


@dataclass(frozen=True)
class Laurent:
    """``sum_k poly[k] * t^(val + k)`` over F_p, canonical with ``poly[0] != 0``."""

    val: int
    poly: FpPoly

    def __post_init__(self):
        arr = self.poly.array
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            object.__setattr__(self, "val", 0)
        elif nz[0] > 0:
            object.__setattr__(self, "val", self.val + int(nz[0]))
            object.__setattr__(self, "poly", FpPoly(self.poly.p, arr[nz[0] :]))

    @classmethod
    def from_dict(cls, p: int, coeffs: Mapping[int, int]) -> "Laurent":
        items = {e: c % p for e, c in coeffs.items() if c % p}
        if not items:
            return cls(0, FpPoly.zero(p))
        lo = min(items)
        arr = np.zeros(max(items) - lo + 1, dtype=np.int64)
        for e, c in items.items():
            arr[e - lo] = c
        return cls(lo, FpPoly(p, arr))

    @classmethod
    def monomial(cls, p: int, e: int, c: int = 1) -> "Laurent":
        return cls(e, FpPoly(p, (c,)))

    @property
    def p(self) -> int:
        return self.poly.p

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    @property
    def top(self) -> int:
        """Largest exponent present (meaningless when zero)."""
        return self.val + self.poly.degree

    def coeff(self, e: int) -> int:
        return self.poly[e - self.val]

    def items(self) -> Iterator[tuple[int, int]]:
        for k, c in enumerate(self.poly.coeffs):
            if c:
                yield self.val + k, c

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def _aligned(self, other: "Laurent"):
        lo = min(self.val, other.val)
        return lo, self.poly.shift(self.val - lo), other.poly.shift(other.val - lo)

    def __add__(self, other: "Laurent") -> "Laurent":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo, a, b = self._aligned(other)
        return Laurent(lo, a + b)

    def __neg__(self) -> "Laurent":
        return Laurent(self.val, -self.poly)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, Laurent):
            return Laurent(self.val + other.val, self.poly * other.poly)
        if isinstance(other, FpPoly):
            return Laurent(self.val, self.poly * other)
        return Laurent(self.val, self.poly.scale(int(other)))

    __rmul__ = __mul__

    def shift(self, k: int) -> "Laurent":
        return Laurent(self.val + k, self.poly)

    def restrict(self, lo: int | None = None, hi: int | None = None) -> "Laurent":
        """Keep exponents e with ``lo <= e <= hi`` (either bound optional)."""
        if self.is_zero():
            return self
        a = 0 if lo is None else max(lo - self.val, 0)
        b = self.poly.degree if hi is None else min(hi - self.val, self.poly.degree)
        if a > b:
            return Laurent(0, FpPoly.zero(self.p))
        return Laurent(self.val + a, FpPoly(self.p, self.poly.array[a : b + 1]))

    def derivative(self) -> "Laurent":
        if self.is_zero():
            return self
        p = self.p
        k = (np.arange(self.val, self.val + len(self.poly.coeffs), dtype=np.int64)) % p
        return Laurent(self.val - 1, FpPoly(p, _mulmod(self.poly.array, k, p)))

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*t^{e}" for e, c in self.items()) or "0"
        return f"Laurent(p={self.p}: {terms})"


@dataclass(frozen=True)
class LaurentGraded:
    """Finite sum ``sum_j L_j(t) * y^j`` with ``0 <= j < n`` and each L_j Laurent in t."""

    p: int
    n: int
    terms: Mapping[int, Laurent] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for j, lt in self.terms.items():
            if not 0 <= j < self.n:
                raise ValueError(f"grade {j} outside [0, {self.n})")
            if lt.p != self.p:
                raise ModulusMismatch("Laurent coefficient over a different field")
            if not lt.is_zero():
                clean[j] = lt
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def build(cls, p: int, n: int, terms: Mapping[int, Laurent], f: FpPoly | None = None):
        """Like the constructor but reduces grades >= n with ``y^n = f``."""
        acc: dict[int, Laurent] = {}
        for j, lt in terms.items():
            if j < 0:
                raise ValueError("negative grades are not representable")
            while j >= n:
                if f is None:
                    raise ValueError("grade >= n needs f for reduction")
                lt, j = lt * f, j - n
            acc[j] = acc[j] + lt if j in acc else lt
        return cls(p, n, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def grade(self, j: int) -> Laurent:
        return self.terms.get(j, Laurent(0, FpPoly.zero(self.p)))

    def coeff(self, j: int, e: int) -> int:
        return self.grade(j).coeff(e)

    def items(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(j, e, c)`` for nonzero coefficients."""
        for j, lt in self.terms.items():
            for e, c in lt.items():
                yield j, e, c

    def _same(self, other: "LaurentGraded"):
        if (self.p, self.n) != (other.p, other.n) or type(self) is not type(other):
            raise ModulusMismatch("incompatible graded elements")

    def _replace(self, terms) -> "LaurentGraded":
        return type(self)(self.p, self.n, terms)

    def __add__(self, other: "LaurentGraded") -> "LaurentGraded":
        self._same(other)
        out = dict(self.terms)
        for j, lt in other.terms.items():
            out[j] = out[j] + lt if j in out else lt
        return self._replace(out)

    def __neg__(self) -> "LaurentGraded":
        return self._replace({j: -lt for j, lt in self.terms.items()})

    def __sub__(self, other: "LaurentGraded") -> "LaurentGraded":
        return self + (-other)

    def scale(self, c: int) -> "LaurentGraded":
        return self._replace({j: lt * c for j, lt in self.terms.items()})

    def restrict(self, lo: int | None = None, hi: int | None = None) -> "LaurentGraded":
        return self._replace({j: lt.restrict(lo, hi) for j, lt in self.terms.items()})

    def map_grades(self, fn) -> "LaurentGraded":
        """Apply ``fn(j, L) -> L`` gradewise."""
        return self._replace({j: fn(j, lt) for j, lt in self.terms.items()})


@dataclass(frozen=True)
class GradedForm(LaurentGraded):
    """Differential ``sum_c L_c * dx / w^c`` on one chart.

    On chart ``"U"`` the variable is t and w = y; on chart ``"V"`` the
    variable is s = 1/t and w = z. Grades here index the denominator power.
    """

    chart: str = "U"

    def __post_init__(self):
        if self.chart not in ("U", "V"):
            raise ValueError(f"unknown chart {self.chart!r}")
        super().__post_init__()

    def _replace(self, terms) -> "GradedForm":
        return GradedForm(self.p, self.n, terms, self.chart)

    def _same(self, other):
        super()._same(other)
        if other.chart != self.chart:
            raise ModulusMismatch("forms on different charts")


# --- linear algebra over F_p -----------------------------------------------


def _echelon(rows: Sequence[Sequence[int]], p: int) -> tuple[int, int]:
    """Return ``(rank, det)`` of a matrix over F_p; det only meaningful if square."""
    a = [[x % p for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    det, rank = 1, 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            det = 0
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
            det = -det
        inv = pow(a[rank][col], -1, p)
        det = det * a[rank][col] % p
        for r in range(rank + 1, nrows):
            c = a[r][col] * inv % p
            if c:
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    if nrows != ncols:
        det = 0
    return rank, det % p


def det_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 1
    return _echelon(rows, p)[1]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    return _echelon(rows, p)[0]
