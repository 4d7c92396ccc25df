import logging
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import FILTRATION

from divfrob.blocks import assemble, cartier_column
from divfrob.corpus import poly_from_roots, random_curve
from divfrob.curve import CurveParams, enumerate_basis, hclass, omega, to_chart, validate
from divfrob.errors import ChartMismatch, NotHyperelliptic
from divfrob.froblift import frobenius_lift
from divfrob.modring import FpPoly, GradedForm, Laurent, LaurentGraded
from divfrob.oracle import (
    cech_h1_class,
    di1_components,
    differential,
    hyperelliptic_hw,
    project_h0,
    regular_parts,
    structural_phi,
)


def series_inverse_power(p, f, e, order):
    """f^-e mod t^order by the naive triangular recurrence, e >= 0."""
    inv = [pow(f[0], -1, p)]
    for k in range(1, order):
        s = sum(f[i] * inv[k - i] for i in range(1, min(k, len(f) - 1) + 1))
        inv.append(-s * inv[0] % p)
    out = [1] + [0] * (order - 1)
    for _ in range(e):
        out = [sum(out[i] * inv[k - i] for i in range(k + 1)) % p for k in range(order)]
    return out


def cocycle_defect(d, lift, i, j, order=None):
    """``f_U - f_V - dh`` in the t-chart, restricted to where all three are exact."""
    comp = di1_components(d, lift, i, j, order)
    defect = comp.fu - to_chart(d, comp.fv, "U") - differential(d, comp.h)
    bound = min(comp.fu_exact_below, comp.h_exact_below - 1)
    return defect.restrict(hi=bound - 1)


# --- Deligne-Illusie components ------------------------------------------------------------


@pytest.mark.parametrize("p", [17, 13])
def test_cocycle_condition_on_examples(curves, p):
    d, lift = curves[p]
    for e in enumerate_basis(d):
        if e.block == "H0":
            assert cocycle_defect(d, lift, e.i, e.j).is_zero()


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10**6))
def test_cocycle_condition_on_random_curves(seed):
    d = random_curve(np.random.default_rng(seed), p_max=30, l_max=9)
    lift = frobenius_lift(d)
    for e in enumerate_basis(d):
        if e.block == "H0":
            assert cocycle_defect(d, lift, e.i, e.j).is_zero()


def test_components_small_hyperelliptic_case():
    p = 5
    f = poly_from_roots([1, 2, 3])
    d = validate(CurveParams.from_ints(p, 2, f))
    lift = frobenius_lift(d)
    comp = di1_components(d, lift, 0, 1)
    order = lift.dv + 1
    fmod = [c % p for c in f]
    # pj = 5 = 2*2 + 1: a = 2, b = 1
    fu = comp.fu.grade(1)
    expected_fu = series_inverse_power(p, fmod, 2, order)
    assert [fu.coeff(4 + k) for k in range(order)] == expected_fu
    # h = t^10 v(1/t) f^-3 y
    inv3 = series_inverse_power(p, fmod, 3, order)
    v = lift.v
    h = comp.h.grade(1)
    for e in range(10 - v.degree, comp.h_exact_below):
        want = sum(v[10 + k - e] * inv3[k] for k in range(order)) % p
        assert h.coeff(e) == want
    assert comp.fv.chart == "V"


def test_components_with_zero_v():
    # p = 2, j = 1 gives a = 0, so the Cartier quotient is s + v' and v = 0 is allowed
    d = validate(CurveParams.from_ints(2, 3, [1, 2, 3, 2, 1, 1]))
    lift = replace(frobenius_lift(d), v=FpPoly.zero(2))
    comp = di1_components(d, lift, 0, 1)
    assert comp.h.is_zero()
    assert comp.fu == GradedForm(2, 3, {2: Laurent.monomial(2, 1)}, "U")
    # f_V = -s^(p(rj - 2)) s ds / z^b with r = 2, b = 2
    assert comp.fv == GradedForm(2, 3, {2: Laurent.monomial(2, 1, -1)}, "V")


# --- class reduction and projections ---------------------------------------------------------


def test_cech_class_examples(curves):
    d, _ = curves[17]  # r = 2
    one = lambda e: LaurentGraded(17, 3, {1: Laurent.monomial(17, e)})
    assert cech_h1_class(d, one(-1)).entries == {hclass(1, 1): 1}
    assert cech_h1_class(d, one(2)).entries == {}
    assert cech_h1_class(d, one(-2)).entries == {}  # t^-rj y^j is regular on V


@settings(deadline=None)
@given(
    st.dictionaries(st.integers(0, 12), st.integers(1, 16), max_size=5),
    st.dictionaries(st.integers(-20, -1), st.integers(1, 16), max_size=5),
    st.integers(0, 2),
)
def test_cech_class_kills_regular_parts(pos, neg, c):
    d = validate(CurveParams.from_ints(17, 3, poly_from_roots(range(1, 6))))
    xu = LaurentGraded(17, 3, {c: Laurent.from_dict(17, pos)})
    # keep only the V-regular exponents of the negative part
    lim = -d.r * c if c else -1
    xv = LaurentGraded(17, 3, {c: Laurent.from_dict(17, {e: v for e, v in neg.items() if e <= lim})})
    assert cech_h1_class(d, xu - xv).entries == {}
    u, v = regular_parts(d, xu + xv)
    assert u == xu and v == xv


def test_project_h0_examples(curves):
    d, _ = curves[13]  # r = 2, n = 4
    for e in enumerate_basis(d):
        if e.block != "H0":
            continue
        form = GradedForm(13, 4, {e.j: Laurent.monomial(13, e.i)}, "U")
        assert project_h0(d, form, "U").entries == {e: 1}
        assert project_h0(d, to_chart(d, form, "V"), "V").entries == {e: 1}
    outside = GradedForm(13, 4, {1: Laurent.monomial(13, d.r - 1)}, "U")
    assert project_h0(d, outside, "U").entries == {}
    with pytest.raises(ChartMismatch):
        project_h0(d, outside, "V")


def test_v_chart_projection_reproduces_cartier_column(curves):
    d, lift = curves[31]
    m = structural_phi(d, lift)
    col = cartier_column(d, lift, 0, 1)
    h0 = [e for e in enumerate_basis(d) if e.block == "H0"]
    assert [m.entries[k][0] for k in range(len(h0))] == [col[e] for e in h0]
    assert col.entries == {omega(0, 1): 21}


# --- full matrix ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", [17, 31, 41, 13])
def test_structural_phi_reproduces_published(curves, p):
    d, lift = curves[p]
    assert structural_phi(d, lift).tolist() == FILTRATION[p]


def test_hasse_witt_quadrant_zero_for_p41(curves):
    d, lift = curves[41]
    assert all(x == 0 for row in structural_phi(d, lift).quadrant("hw") for x in row)


def test_short_series_triggers_retry(curves, caplog):
    d, lift = curves[17]
    with caplog.at_level(logging.WARNING, logger="divfrob.oracle"):
        m = structural_phi(d, lift, series_order=1)
    assert any("retrying" in r.message for r in caplog.records)
    assert m == assemble(d, lift)


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 10**6))
def test_longer_series_changes_nothing(seed):
    d = random_curve(np.random.default_rng(seed), p_max=40, l_max=11)
    lift = frobenius_lift(d)
    base = structural_phi(d, lift)
    assert structural_phi(d, lift, series_order=lift.dv + 1 + 32) == base
    assert base == assemble(d, lift)


# --- hyperelliptic Hasse-Witt ------------------------------------------------------------------


def test_hyperelliptic_hw_small():
    assert hyperelliptic_hw(CurveParams.from_ints(3, 2, [1, 2, 0, 1])) == [[0]]


def test_hyperelliptic_hw_supersingular():
    # y^2 = t^3 + 1 over F_5: f^2 = t^6 + 2t^3 + 1 has no t^4 term
    assert hyperelliptic_hw(CurveParams.from_ints(5, 2, [1, 0, 0, 1])) == [[0]]


def test_hyperelliptic_hw_rejects_other_exponents(curves):
    d, _ = curves[17]
    with pytest.raises(NotHyperelliptic):
        hyperelliptic_hw(d)
    with pytest.raises(NotHyperelliptic):
        hyperelliptic_hw(CurveParams.from_ints(2, 2, [1, 1, 0, 1]))


def test_hyperelliptic_hw_matches_direct_expansion():
    p, f = 7, poly_from_roots([1, 2, 3, 4, 5])
    d = validate(CurveParams.from_ints(p, 2, f))
    power = FpPoly(p, f) ** 3
    g = d.g
    expected = [[power[p * i - k] for i in range(1, g + 1)] for k in range(1, g + 1)]
    assert hyperelliptic_hw(d) == expected
