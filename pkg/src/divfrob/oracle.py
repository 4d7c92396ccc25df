"""Independent evaluation of the divided Frobenius from the Cech description.

Nothing here uses the closed-form column sums of :mod:`divfrob.blocks`. Each
column is obtained by expanding the Deligne-Illusie data as Laurent series,
splitting the function part into its two chart-regular pieces and its class,
and adding the derivative of the regular pieces to the forms. The result must
be a global differential; with ``strict=True`` anything left outside the H0
range raises :class:`OracleInconsistency`.

Sign convention: the cocycle is ``(f_U, f_V, h)`` with ``dh = f_U - f_V``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .blocks import ColumnVector, DividedFrobeniusMatrix, Order, matrix_from_columns, tau_split
from .curve import (
    Block,
    BasisElement,
    CurveParams,
    DerivedParams,
    enumerate_basis,
    euclid_pj,
    hclass,
    omega,
    to_chart,
)
from .errors import ChartMismatch, NotHyperelliptic, OracleInconsistency, TruncationInsufficient
from .froblift import FrobeniusLift, qcart
from .modring import FpPoly, GradedForm, Laurent, LaurentGraded, fp_pow, trunc_inverse

log = logging.getLogger(__name__)


# --- calculus on the (t, y) chart ------------------------------------------------


def differential(curve: DerivedParams, x: LaurentGraded) -> GradedForm:
    """d of ``sum_c H_c y^c``, using ``n y^(n-1) dy = f' dt``.

    ``d(H y^c) = (H' f + (c/n) H f') dt / y^(n-c)`` and ``d(H) = H' dt``.
    """
    f, df = curve.f_modp, curve.f_modp.derivative()
    out: dict[int, Laurent] = {}
    for c, H in x.terms.items():
        if c == 0:
            out[0] = H.derivative()
        else:
            out[curve.n - c] = H.derivative() * f + (H * df) * (c * curve.ninv)
    return GradedForm(curve.p, curve.n, out, "U")


def regular_parts(curve: DerivedParams, x: LaurentGraded) -> tuple[LaurentGraded, LaurentGraded]:
    """``(x_U, x_V)``: the part regular on U and the part regular on V.

    Nonnegative powers of t are regular on U. ``t^-a y^c`` with ``a >= rc``
    equals ``s^(a-rc) z^c`` and is regular on V. What remains is the class.
    """
    xu = x.restrict(lo=0)
    xv = x.map_grades(lambda c, lt: lt.restrict(hi=-curve.r * c if c else -1))
    return xu, xv


def cech_h1_class(curve: DerivedParams, x: LaurentGraded, source: BasisElement | None = None) -> ColumnVector:
    entries = {}
    for j in range(1, curve.n):
        lt = x.grade(j)
        for a in range(1, curve.r * j):
            entries[hclass(a, j)] = lt.coeff(-a)
    return ColumnVector(source, entries)


def _h0_range(curve: DerivedParams, form: GradedForm) -> tuple[GradedForm, GradedForm]:
    """Split a form into its part inside ``0 <= e <= rc-2`` and the rest."""
    inside = form.map_grades(lambda c, lt: lt.restrict(0, curve.r * c - 2) if c else lt.restrict(1, 0))
    return inside, form - inside


def project_h0(
    curve: DerivedParams, form: GradedForm, chart: str, source: BasisElement | None = None
) -> ColumnVector:
    if form.chart != chart:
        raise ChartMismatch(f"form lives on chart {form.chart}, projection asked on {chart}")
    inside, _ = _h0_range(curve, form)
    inside = to_chart(curve, inside, "U")
    entries = {omega(e, c): v for c, e, v in inside.items() if 1 <= c < curve.n}
    return ColumnVector(source, entries)


def _global_part(curve: DerivedParams, form: GradedForm, where: str) -> GradedForm:
    inside, rest = _h0_range(curve, form)
    if not rest.is_zero():
        raise OracleInconsistency(f"{where}: form is not global, residual {dict(rest.terms)}")
    return inside


# --- Deligne-Illusie data ------------------------------------------------------------


@dataclass(frozen=True)
class DI1Components:
    """Images of ``omega_{i,j}`` on each chart and the correcting function.

    ``fu`` and ``h`` come from truncated series; they are exact for t-exponents
    strictly below ``fu_exact_below`` and ``h_exact_below``.
    """

    fu: GradedForm
    fv: GradedForm
    h: LaurentGraded
    fu_exact_below: int
    h_exact_below: int


def _inverse_powers(curve: DerivedParams, order: int, a: int) -> tuple[FpPoly, FpPoly]:
    inv = trunc_inverse(curve.f_modp, order)
    return fp_pow(inv, a, order=order), fp_pow(inv, a + 1, order=order)


def di1_components(
    curve: DerivedParams, lift: FrobeniusLift, i: int, j: int, order: int | None = None
) -> DI1Components:
    p, n, r = curve.p, curve.n, curve.r
    order = lift.dv + 1 if order is None else order
    a, b = euclid_pj(p, j, n)
    inv_a, inv_a1 = _inverse_powers(curve, order, a)
    # f_U = t^(p(i+1)-1) f^-a dt / y^b
    fu = GradedForm(p, n, {b: Laurent(p * (i + 1) - 1, inv_a)}, "U")
    # f_V = -s^(p(rj-i-2)) Q(s) ds / z^b
    fv = GradedForm(p, n, {b: -Laurent(p * (r * j - i - 2), qcart(curve, j, lift))}, "V")
    # h = t^(p(i+2)) v(1/t) f^-(a+1) y^(n-b); t^deg(v) v(1/t) is an exact polynomial
    v = lift.v
    if v.is_zero():
        return DI1Components(fu, fv, LaurentGraded(p, n), p * (i + 1) - 1 + order, 10**18)
    start = p * (i + 2) - v.degree
    exact = start + order
    series = Laurent(start, v.reverse() * inv_a1).restrict(hi=exact - 1)
    h = LaurentGraded(p, n, {n - b: series})
    return DI1Components(fu, fv, h, p * (i + 1) - 1 + order, exact)


# --- the matrix ------------------------------------------------------------------------


def _beta(curve: DerivedParams, cls: ColumnVector) -> tuple[GradedForm, GradedForm]:
    zero = GradedForm(curve.p, curve.n, {}, "U")
    bu, bv = zero, zero
    for e, c in cls.entries.items():
        au, av = tau_split(curve, None, e.i, e.j)
        bu, bv = bu + au.scale(c), bv + av.scale(c)
    return bu, bv


def _h0_source_column(
    curve: DerivedParams, lift: FrobeniusLift, i: int, j: int, order: int, strict: bool
) -> ColumnVector:
    src = omega(i, j)
    comp = di1_components(curve, lift, i, j, order)
    if comp.h_exact_below < 0:
        raise TruncationInsufficient(
            f"series order {order} leaves negative powers of t in h(omega_{i},{j}) inexact"
        )
    h = comp.h.restrict(hi=-1)
    cls = cech_h1_class(curve, h, src)
    _, hv = regular_parts(curve, h)
    _, beta_v = _beta(curve, cls)
    total = comp.fv + to_chart(curve, beta_v + differential(curve, hv), "V")
    if strict:
        total = _global_part(curve, total, f"column {src}")
    h0 = project_h0(curve, total, "V", src)
    return ColumnVector(src, {**h0.entries, **cls.entries})


def _h1_source_column(curve: DerivedParams, i: int, j: int, strict: bool) -> ColumnVector:
    p, n = curve.p, curve.n
    src = hclass(i, j)
    a, b = euclid_pj(p, j, n)
    # h_{i,j}^p = t^(-pi) f^a y^b, an exact Laurent polynomial
    x = LaurentGraded(p, n, {b: Laurent(-p * i, fp_pow(curve.f_modp, a))})
    cls = cech_h1_class(curve, x, src)
    xu, xv = regular_parts(curve, x)
    beta_u, beta_v = _beta(curve, cls)
    total_u = -beta_u - differential(curve, xu)
    if strict:
        total_u = _global_part(curve, total_u, f"column {src}")
        total_v = beta_v + differential(curve, xv)
        if total_v != total_u:
            raise OracleInconsistency(f"column {src}: chart U and chart V forms disagree")
    h0 = project_h0(curve, total_u, "U", src)
    return ColumnVector(src, {**h0.entries, **cls.entries})


def structural_phi(
    curve: DerivedParams,
    lift: FrobeniusLift,
    series_order: int | None = None,
    strict: bool = True,
    order: Order = Order.FILTRATION,
) -> DividedFrobeniusMatrix:
    """The full matrix by the structural route. Retries at double order if truncation bites."""
    n_series = lift.dv + 1 if series_order is None else series_order
    while True:
        try:
            columns = {}
            for e in enumerate_basis(curve):
                if e.block is Block.H0:
                    columns[e] = _h0_source_column(curve, lift, e.i, e.j, n_series, strict)
                else:
                    columns[e] = _h1_source_column(curve, e.i, e.j, strict)
            return matrix_from_columns(curve, columns, order)
        except TruncationInsufficient as exc:
            log.warning("%s; retrying at order %d", exc, 2 * n_series)
            n_series *= 2


# --- classical hyperelliptic formula -------------------------------------------------------


def hyperelliptic_hw(curve: CurveParams | DerivedParams) -> list[list[int]]:
    """Entry (k, i) is ``f^((p-1)/2)[pi - k]`` for ``1 <= i, k <= g``."""
    p, n = curve.p, curve.n
    if n != 2 or p == 2:
        raise NotHyperelliptic(f"needs n = 2 and p odd, got n = {n}, p = {p}")
    f = curve.f.reduce()
    g = (f.degree - 1) // 2
    power = fp_pow(f, (p - 1) // 2)
    return [[power[p * i - k] for i in range(1, g + 1)] for k in range(1, g + 1)]
