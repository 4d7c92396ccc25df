"""Closed-form columns of the divided Frobenius and assembly of the full matrix.

Source basis element -> column:

* ``h_{i,j}`` (H1): Hasse-Witt part on ``h_{.,b}`` and upper-right part on
  ``omega_{.,n-b}``.
* ``omega_{i,j}`` (H0): lower-left part on ``h_{.,n-b}`` and Cartier part on
  ``omega_{.,b}``.

Here ``pj = a n + b``. Per-class data (``f^a``, the truncated inverse power and
the Cartier quotient) does not depend on i and is computed once per j.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .curve import (
    Block,
    BasisElement,
    DerivedParams,
    enumerate_basis,
    euclid_pj,
    h0_indices,
    h1_indices,
    hclass,
    isotypic_permutation,
    omega,
)
from .errors import SingularMatrix
from .froblift import FrobeniusLift, qcart
from .modring import FpPoly, GradedForm, Laurent, det_mod_p, fp_pow, trunc_inverse


class Order(str, enum.Enum):
    FILTRATION = "filtration"
    ISOTYPIC = "isotypic"


QUADRANTS = {
    "cartier": (Block.H0, Block.H0),
    "upper-right": (Block.H0, Block.H1),
    "lower-left": (Block.H1, Block.H0),
    "hw": (Block.H1, Block.H1),
}


@dataclass(frozen=True)
class ColumnVector:
    source: BasisElement | None
    entries: Mapping[BasisElement, int]

    def __post_init__(self):
        object.__setattr__(self, "entries", {e: c for e, c in self.entries.items() if c})

    def __getitem__(self, e: BasisElement) -> int:
        return self.entries.get(e, 0)

    def classes(self) -> set[tuple[Block, int]]:
        """The (block, y-exponent) classes carrying nonzero entries."""
        return {(e.block, e.j) for e in self.entries}


@dataclass(frozen=True)
class DividedFrobeniusMatrix:
    curve: DerivedParams
    order: Order
    entries: tuple[tuple[int, ...], ...]
    labels: tuple[BasisElement, ...]

    @property
    def row_labels(self) -> tuple[BasisElement, ...]:
        return self.labels

    @property
    def col_labels(self) -> tuple[BasisElement, ...]:
        return self.labels

    @property
    def size(self) -> int:
        return len(self.labels)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.size, self.size)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def det(self) -> int:
        return det_mod_p(self.entries, self.curve.p)

    def submatrix(self, rows: Sequence[BasisElement], cols: Sequence[BasisElement]) -> list[list[int]]:
        index = {e: k for k, e in enumerate(self.labels)}
        return [[self.entries[index[r]][index[c]] for c in cols] for r in rows]

    def quadrant(self, name: str) -> list[list[int]]:
        """One of ``cartier``, ``upper-right``, ``lower-left``, ``hw`` (g x g)."""
        row_block, col_block = QUADRANTS[name]
        basis = enumerate_basis(self.curve)
        rows = [e for e in basis if e.block is row_block]
        cols = [e for e in basis if e.block is col_block]
        return self.submatrix(rows, cols)

    def reordered(self, order: Order) -> "DividedFrobeniusMatrix":
        basis = enumerate_basis(self.curve)
        if order is Order.ISOTYPIC:
            target = [basis[k] for k in isotypic_permutation(self.curve)]
        else:
            target = basis
        return DividedFrobeniusMatrix(
            self.curve, order, tuple(map(tuple, self.submatrix(target, target))), tuple(target)
        )


def matrix_from_columns(
    curve: DerivedParams, columns: Mapping[BasisElement, ColumnVector], order: Order
) -> DividedFrobeniusMatrix:
    basis = enumerate_basis(curve)
    rows = tuple(tuple(columns[c][r] for c in basis) for r in basis)
    m = DividedFrobeniusMatrix(curve, Order.FILTRATION, rows, tuple(basis))
    return m if order is Order.FILTRATION else m.reordered(order)


# --- splitting ---------------------------------------------------------------


def tau_split(
    curve: DerivedParams, lift: FrobeniusLift | None, i: int, j: int
) -> tuple[GradedForm, GradedForm]:
    """``d(t^-i y^j) = alpha_U + alpha_V``, both as forms in the (t, y) chart.

    The coefficient of ``t^(k-i-1) dt / y^(n-j)`` is ``(jk - in)/n * f[k]``;
    terms with ``k > i`` go to alpha_U and the rest to alpha_V.
    """
    p, n, f = curve.p, curve.n, curve.f_modp
    ninv = curve.ninv
    coef = {k - i - 1: (j * k - i * n) * ninv * f[k] for k in range(curve.l + 1)}
    upper = Laurent.from_dict(p, {e: c for e, c in coef.items() if e >= 0})
    lower = Laurent.from_dict(p, {e: c for e, c in coef.items() if e < 0})
    return (
        GradedForm(p, n, {n - j: upper}, "U"),
        GradedForm(p, n, {n - j: lower}, "U"),
    )


# --- columns -----------------------------------------------------------------


class ColumnEngine:
    """Column formulas for one curve, memoizing the per-class data."""

    def __init__(
        self,
        curve: DerivedParams,
        lift: FrobeniusLift | None = None,
        series_order: int | None = None,
    ):
        self.curve = curve
        self.lift = lift
        self.series_order = series_order
        self._fa: dict[int, FpPoly] = {}
        self._ip: dict[int, FpPoly] = {}
        self._qc: dict[int, FpPoly] = {}
        self._inverse: FpPoly | None = None

    def _need_lift(self) -> FrobeniusLift:
        if self.lift is None:
            raise ValueError("this column needs the Frobenius lift")
        return self.lift

    def power_f(self, j: int) -> FpPoly:
        """``f^a`` over F_p."""
        if j not in self._fa:
            a, _ = euclid_pj(self.curve.p, j, self.curve.n)
            self._fa[j] = fp_pow(self.curve.f_modp, a)
        return self._fa[j]

    @property
    def order(self) -> int:
        lift = self._need_lift()
        return self.series_order if self.series_order is not None else lift.dv + 1

    def inverse_power(self, j: int) -> FpPoly:
        """``f^-(a+1)`` modulo ``t^order``."""
        if j not in self._ip:
            if self._inverse is None:
                self._inverse = trunc_inverse(self.curve.f_modp, self.order)
            a, _ = euclid_pj(self.curve.p, j, self.curve.n)
            self._ip[j] = fp_pow(self._inverse, a + 1, order=self.order)
        return self._ip[j]

    def cartier_quotient(self, j: int) -> FpPoly:
        if j not in self._qc:
            self._qc[j] = qcart(self.curve, j, self._need_lift())
        return self._qc[j]

    # H1 sources ---------------------------------------------------------------

    def hw(self, i: int, j: int) -> ColumnVector:
        c = self.curve
        _, b = euclid_pj(c.p, j, c.n)
        F = self.power_f(j)
        entries = {hclass(k, b): F[c.p * i - k] for k in h1_indices(c, b)}
        return ColumnVector(hclass(i, j), entries)

    def upper_right(self, i: int, j: int) -> ColumnVector:
        c = self.curve
        p, n, f = c.p, c.n, c.f_modp
        _, b = euclid_pj(p, j, n)
        F = self.power_f(j)
        ninv = c.ninv
        entries = {}
        for m in h0_indices(c, n - b):
            # literal range k = pi - deg F .. rb - 1, cut to where f[m+k+1] can be nonzero
            lo = max(p * i - F.degree, -m - 1)
            hi = min(c.r * b - 1, c.l - m - 1)
            total = sum(
                (k * n - b * (m + k + 1)) * F[p * i - k] * f[m + k + 1] for k in range(lo, hi + 1)
            )
            entries[omega(m, n - b)] = total * ninv % p
        return ColumnVector(hclass(i, j), entries)

    # H0 sources ---------------------------------------------------------------

    def _correlation(self, i: int, j: int, ms: range) -> dict[int, int]:
        """``w[m] = sum_k IP[k] v[p(i+2)+k+m]`` for m in ms."""
        p = self.curve.p
        v = self._need_lift().v
        ip = self.inverse_power(j).array
        small = (p - 1) ** 2 * max(ip.size, 1) < 2**63
        out = {}
        for m in ms:
            window = v.window(p * (i + 2) + m, ip.size)
            if small:
                out[m] = int(np.dot(ip, window)) % p
            else:
                out[m] = sum(int(x) * int(y) for x, y in zip(ip, window)) % p
        return out

    def lower_left(self, i: int, j: int) -> ColumnVector:
        c = self.curve
        _, b = euclid_pj(c.p, j, c.n)
        w = self._correlation(i, j, h1_indices(c, c.n - b))
        return ColumnVector(omega(i, j), {hclass(m, c.n - b): w[m] for m in w})

    def cartier(self, i: int, j: int) -> ColumnVector:
        c = self.curve
        p, n, r, f = c.p, c.n, c.r, c.f_modp
        _, b = euclid_pj(p, j, n)
        qc = self.cartier_quotient(j)
        # The double sum over (k, m) factors through w[m]: its upper bound
        # m <= dv - (pi + k) only removes terms where v vanishes anyway.
        w = self._correlation(i, j, range(r * (n - b), c.l + 1))
        entries = {}
        for mu in h0_indices(c, b):
            total = sum(
                (n * (mu + 1) - b * (mu + m + 1)) * f[mu + m + 1] * wm for m, wm in w.items()
            )
            total = total * c.ninv + qc[r * b - 2 + p * (i + 2 - r * j) - mu]
            entries[omega(mu, b)] = total % p
        return ColumnVector(omega(i, j), entries)

    def column(self, e: BasisElement) -> ColumnVector:
        if e.block is Block.H0:
            parts = (self.cartier(e.i, e.j), self.lower_left(e.i, e.j))
        else:
            parts = (self.upper_right(e.i, e.j), self.hw(e.i, e.j))
        return ColumnVector(e, {**parts[0].entries, **parts[1].entries})


def hw_column(curve: DerivedParams, i: int, j: int) -> ColumnVector:
    return ColumnEngine(curve).hw(i, j)


def upper_right_column(curve: DerivedParams, i: int, j: int) -> ColumnVector:
    return ColumnEngine(curve).upper_right(i, j)


def lower_left_column(curve: DerivedParams, lift: FrobeniusLift, i: int, j: int) -> ColumnVector:
    return ColumnEngine(curve, lift).lower_left(i, j)


def cartier_column(curve: DerivedParams, lift: FrobeniusLift, i: int, j: int) -> ColumnVector:
    return ColumnEngine(curve, lift).cartier(i, j)


def hw_block(curve: DerivedParams) -> list[list[int]]:
    """The Hasse-Witt quadrant alone (no lift needed)."""
    eng = ColumnEngine(curve)
    cols = [e for e in enumerate_basis(curve) if e.block is Block.H1]
    columns = [eng.hw(e.i, e.j) for e in cols]
    return [[col[r] for col in columns] for r in cols]


def assemble(
    curve: DerivedParams,
    lift: FrobeniusLift,
    order: Order = Order.FILTRATION,
    series_order: int | None = None,
    check: bool = True,
) -> DividedFrobeniusMatrix:
    eng = ColumnEngine(curve, lift, series_order)
    columns = {e: eng.column(e) for e in enumerate_basis(curve)}
    m = matrix_from_columns(curve, columns, order)
    if check and m.det() == 0:
        raise SingularMatrix(f"divided Frobenius matrix is singular mod {curve.p}")
    return m


def expected_classes(curve: DerivedParams, e: BasisElement) -> set[tuple[Block, int]]:
    """The (block, y-exponent) classes a column may touch."""
    _, b = euclid_pj(curve.p, e.j, curve.n)
    if e.block is Block.H0:
        return {(Block.H0, b), (Block.H1, curve.n - b)}
    return {(Block.H0, curve.n - b), (Block.H1, b)}


def support_pattern_ok(m: DividedFrobeniusMatrix) -> bool:
    """Every column is supported in its prescribed classes, one per block."""
    for col, src in enumerate(m.labels):
        allowed = expected_classes(m.curve, src)
        for row, target in enumerate(m.labels):
            if m.entries[row][col] and (target.block, target.j) not in allowed:
                return False
    return True
