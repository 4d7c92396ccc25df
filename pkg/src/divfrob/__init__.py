"""Divided crystalline Frobenius mod p for superelliptic curves y^n = f(t)."""

from .blocks import DividedFrobeniusMatrix, Order, assemble
from .curve import BasisElement, CurveParams, DerivedParams, validate
from .froblift import FrobeniusLift, check_lift, frobenius_lift
from .oracle import structural_phi

__all__ = [
    "BasisElement",
    "CurveParams",
    "DerivedParams",
    "DividedFrobeniusMatrix",
    "FrobeniusLift",
    "Order",
    "assemble",
    "check_lift",
    "frobenius_lift",
    "structural_phi",
    "validate",
]
