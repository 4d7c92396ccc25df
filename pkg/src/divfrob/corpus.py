"""Reproducible random valid curves and the example curves used throughout."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .curve import CurveParams, DerivedParams, is_prime, validate
from .errors import CurveError


def poly_from_roots(roots) -> list[int]:
    """Integer coefficients (ascending) of ``prod (t - r)``."""
    f = [1]
    for rt in roots:
        nxt = [0] * (len(f) + 1)
        for k, c in enumerate(f):
            nxt[k + 1] += c
            nxt[k] -= rt * c
        f = nxt
    return f


QUINTIC = poly_from_roots(range(1, 6))
SEPTIC = poly_from_roots(range(1, 8))


def example_curve(p: int, n: int = 3) -> DerivedParams:
    """``y^3 = prod_{i<=5}(t - i)`` or, for n = 4, ``y^4 = prod_{i<=7}(t - i)``."""
    f = {3: QUINTIC, 4: SEPTIC}[n]
    return validate(CurveParams.from_ints(p, n, f))


def random_curve(
    rng: np.random.Generator,
    p_max: int = 50,
    n_max: int = 5,
    l_max: int = 13,
    n: int | None = None,
    p_min: int = 2,
) -> DerivedParams:
    """Draw (n, p, l) uniformly among admissible triples, then f until valid."""
    while True:
        nn = int(rng.integers(2, n_max + 1)) if n is None else n
        primes = [q for q in range(max(p_min, 2), p_max + 1) if is_prime(q) and q % nn and nn % q]
        degrees = [l for l in range(2, l_max + 1) if (l + 1) % nn == 0]
        if not primes or not degrees:
            continue
        p = int(rng.choice(primes))
        degrees = [l for l in degrees if l % p]
        if not degrees:
            continue
        l = int(rng.choice(degrees))
        for _ in range(100):
            coeffs = [int(c) for c in rng.integers(0, p * p, size=l + 1)]
            coeffs[-1] = int(rng.integers(1, p)) + p * int(rng.integers(0, p))
            try:
                return validate(CurveParams.from_ints(p, nn, coeffs))
            except CurveError:
                continue


def random_corpus(seed: int, count: int, **kwargs) -> Iterator[DerivedParams]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_curve(rng, **kwargs)
