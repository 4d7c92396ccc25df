"""Frobenius lifts modulo p^2 on the two affine charts.

On U the lift is t -> t^p and y -> y^p (1 + p P(t) / (n y^(np)))^(1/n) with
``P = (f(t^p) - f(t)^p) / p``. On V it is s -> s^p + p v(s) and
z -> z^p (1 + p b(s)) for a pair (v, b) satisfying

    f2(s)^p - f2(s^p) = p (v f2'(s)^p - n b f2(s)^p)    in Z/p^2[s].

The pair is built from one Bezout identity ``u f2' + w f2 = 1`` over F_p,
raised to the p-th power coefficientwise (u(s^p) = u(s)^p over F_p).
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import CurveParams, DerivedParams, euclid_pj
from .errors import LiftIdentityFailed
from .modring import FpPoly, exact_divide, fp_bezout, fp_pow, p_times, w1_divp


@dataclass(frozen=True)
class FrobeniusLift:
    pcal: FpPoly
    qlift: FpPoly
    v: FpPoly
    b: FpPoly
    dv: int


def pcal(curve: DerivedParams | CurveParams) -> FpPoly:
    """``(f(t^p) - f(t)^p) / p`` over F_p. Needs only p and f."""
    f = curve.f
    return w1_divp(f.compose_power(curve.p) - fp_pow(f, curve.p))


def _qlift(curve: DerivedParams) -> FpPoly:
    f2 = curve.f2
    return w1_divp(fp_pow(f2, curve.p) - f2.compose_power(curve.p))


def _relation_holds(curve: DerivedParams, v: FpPoly, b: FpPoly) -> bool:
    p, f2 = curve.p, curve.f2
    lhs = fp_pow(f2, p) - f2.compose_power(p)
    f2p = curve.f2_modp
    rhs = v * fp_pow(f2p.derivative(), p) - (b * fp_pow(f2p, p)).scale(curve.n)
    return lhs == p_times(rhs)


def vb_pair(curve: DerivedParams) -> tuple[FpPoly, FpPoly]:
    return _vb(curve)[1:]


def _vb(curve: DerivedParams) -> tuple[FpPoly, FpPoly, FpPoly]:
    p = curve.p
    q = _qlift(curve)
    f2 = curve.f2_modp
    g, u, w = fp_bezout(f2.derivative(), f2)
    if g.degree != 0:
        raise LiftIdentityFailed("f2 and f2' are not coprime; the curve was not validated")
    v0, b0 = u.compose_power(p), w.compose_power(p)
    v = q * v0
    b = (q * b0).scale(-curve.ninv)
    if not _relation_holds(curve, v, b):
        raise LiftIdentityFailed("lift relation fails in Z/p^2[s]")
    return q, v, b


def frobenius_lift(curve: DerivedParams) -> FrobeniusLift:
    q, v, b = _vb(curve)
    return FrobeniusLift(
        pcal=pcal(curve),
        qlift=q,
        v=v,
        b=b,
        dv=max(0, v.degree - 2 * curve.p),
    )


def qcart_numerator(curve: DerivedParams, lift: FrobeniusLift) -> FpPoly:
    """``s^(p-1) + v'(s)``."""
    return FpPoly.monomial(curve.p, curve.p - 1) + lift.v.derivative()


def qcart(curve: DerivedParams, j: int, lift: FrobeniusLift | None = None) -> FpPoly:
    """Exact quotient ``(s^(p-1) + v'(s)) / f2(s)^a`` for the class j."""
    lift = lift or frobenius_lift(curve)
    a, _ = euclid_pj(curve.p, j, curve.n)
    return exact_divide(qcart_numerator(curve, lift), fp_pow(curve.f2_modp, a))


@dataclass(frozen=True)
class LiftReport:
    results: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.results.items() if not ok]


def check_lift(curve: DerivedParams, lift: FrobeniusLift) -> LiftReport:
    p = curve.p
    num = qcart_numerator(curve, lift)
    divisible = num.divmod(fp_pow(curve.f2_modp, p - 1))[1].is_zero()
    f = curve.f
    fu = f.compose_power(p) == fp_pow(f, p) + p_times(lift.pcal)
    return LiftReport(
        {
            "lift_relation": _relation_holds(curve, lift.v, lift.b),
            "cartier_divisibility": divisible,
            "chart_u_lift": fu,
        }
    )

