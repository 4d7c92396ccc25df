from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divfrob.blocks import assemble
from divfrob.corpus import QUINTIC, random_curve
from divfrob.curve import CurveParams, DerivedParams
from divfrob.froblift import check_lift, frobenius_lift, pcal, qcart, qcart_numerator, vb_pair
from divfrob.modring import FpPoly, W1Poly, fp_bezout, fp_pow


def unchecked_monomial_curve(p, n, l):
    """y^n = t^l, not a valid curve but f2 = s makes the V-chart lift trivial."""
    f = W1Poly(p, [0] * l + [1])
    f2 = W1Poly(p, [0, 1])
    return DerivedParams(p, n, f, l, (l + 1) // n, (l - 1) * (n - 1) // 2, f2, f.reduce(), f2.reduce())


def big_integer_pcal(p, coeffs):
    """Independent expansion of (f(t^p) - f(t)^p)/p over the integers."""
    power = [1]
    for _ in range(p):
        nxt = [0] * (len(power) + len(coeffs) - 1)
        for i, x in enumerate(power):
            for j, y in enumerate(coeffs):
                nxt[i + j] += x * y
        power = nxt
    frob = [0] * len(power)
    for k, c in enumerate(coeffs):
        frob[k * p] += c
    diff = [a - b for a, b in zip(frob, power)]
    assert all(x % p == 0 for x in diff)
    return FpPoly(p, [x // p for x in diff])


def test_pcal_of_t_vanishes():
    for p in (3, 7, 17):
        assert pcal(CurveParams.from_ints(p, 2, [0, 1])).is_zero()


def test_pcal_linear():
    assert pcal(CurveParams.from_ints(3, 2, [1, 1])).coeffs == (0, 2, 2)


def test_pcal_quintic_matches_integer_expansion(curves):
    d, _ = curves[17]
    P = pcal(d)
    assert P == big_integer_pcal(17, QUINTIC)
    assert P.degree <= 17 * 5


def test_trivial_lift_when_f2_is_monomial():
    d = unchecked_monomial_curve(5, 2, 3)
    v, b = vb_pair(d)
    assert v.is_zero() and b.is_zero()


@pytest.mark.parametrize("p", [17, 31, 41, 13])
def test_example_lifts_pass_all_checks(curves, p):
    d, lift = curves[p]
    report = check_lift(d, lift)
    assert report.ok, report.failures()
    assert lift.dv == max(0, lift.v.degree - 2 * p)


def test_septic_lift_degree_bound(curves):
    d, lift = curves[13]
    assert lift.v.degree <= lift.qlift.degree + 13 * d.f2.degree


def test_tampered_v_breaks_relation(curves):
    d, lift = curves[17]
    bad = replace(lift, v=lift.v + FpPoly.one(17))
    assert not check_lift(d, bad).results["lift_relation"]


def test_tampered_pcal_breaks_chart_u_check(curves):
    d, lift = curves[17]
    assert not lift.pcal.is_zero()
    bad = replace(lift, pcal=FpPoly.zero(17))
    report = check_lift(d, bad)
    assert not report.results["chart_u_lift"]
    assert report.failures() == ["chart_u_lift"]


def test_qcart_small_quotient():
    # a = 0 happens when pj < n; the quotient is the numerator itself
    d = unchecked_monomial_curve(2, 3, 5)
    lift = frobenius_lift(d)
    assert qcart(d, 1, lift) == qcart_numerator(d, lift)


@pytest.mark.parametrize("p, j", [(17, 1), (17, 2), (31, 2), (31, 1)])
def test_qcart_is_exact(curves, p, j):
    d, lift = curves[p]
    a = p * j // 3
    q = qcart(d, j, lift)
    assert q * fp_pow(d.f2_modp, a) == qcart_numerator(d, lift)
    assert q.degree == qcart_numerator(d, lift).degree - a * (d.l + 1)
    if p == 17:
        # deg v = 187 = 11 * 17, so v' loses its top term
        assert lift.v.degree % 17 == 0 and qcart_numerator(d, lift).degree == lift.v.degree - 2


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10**6))
def test_lift_invariants_on_random_curves(seed):
    d = random_curve(np.random.default_rng(seed), p_max=30, l_max=9)
    lift = frobenius_lift(d)
    assert check_lift(d, lift).ok
    # Frobenius applied to the Bezout identity
    p, f2 = d.p, d.f2_modp
    _, u, w = fp_bezout(f2.derivative(), f2)
    v0, b0 = u.compose_power(p), w.compose_power(p)
    assert v0 * fp_pow(f2.derivative(), p) + b0 * fp_pow(f2, p) == FpPoly.one(p)
    for j in range(1, d.n):
        a = p * j // d.n
        assert qcart(d, j, lift) * fp_pow(f2, a) == qcart_numerator(d, lift)


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 100), min_size=1, max_size=4))
def test_matrix_independent_of_lift_choice(seed, h):
    """v -> v + f2^p h, b -> b + h f2'^p / n preserves the relation and the matrix."""
    d = random_curve(np.random.default_rng(seed), p_max=30, l_max=9)
    lift = frobenius_lift(d)
    p, f2 = d.p, d.f2_modp
    hp = FpPoly(p, h)
    v = lift.v + fp_pow(f2, p) * hp
    b = lift.b + (hp * fp_pow(f2.derivative(), p)).scale(d.ninv)
    other = replace(lift, v=v, b=b, dv=max(0, v.degree - 2 * p))
    assert check_lift(d, other).ok
    assert assemble(d, other) == assemble(d, lift)
