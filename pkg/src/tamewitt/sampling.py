"""Random elements and vectors for property tests and sample-based checks."""
from __future__ import annotations

import random
from fractions import Fraction

from .valued_fields import DyadicRationals, Field, InertialExtension, RationalFunctionField


def random_element(F: Field, rng: random.Random, spread: int = 2, height: int = 4, terms: int = 3,
                   nonzero: bool = False):
    while True:
        x = _draw(F, rng, spread, height, terms)
        if not nonzero or not F.is_zero(x):
            return x


def _draw(F, rng, spread, height, terms):
    if F.is_finite:
        return rng.choice(list(F.elements()))
    if isinstance(F, DyadicRationals):
        num = rng.randint(-height, height)
        return Fraction(num, 2 ** rng.randint(0, 2)) * 2 ** rng.randint(0, 1)
    if isinstance(F, RationalFunctionField):
        out = {}
        lo = rng.randint(-spread, spread)
        for _ in range(rng.randint(0, terms)):
            e = lo + rng.randint(0, spread + 1)
            out[e] = F.base.add(out.get(e, F.base.zero), _draw(F.base, rng, spread, height, terms))
        return F.from_laurent(out)
    if isinstance(F, InertialExtension):
        return tuple(_draw(F.base, rng, spread, height, terms) for _ in range(F.degree_over_base))
    raise TypeError(f"no sampler for {F}")


def random_vector(F: Field, n: int, rng: random.Random, nonzero: bool = True, **kw):
    while True:
        v = [random_element(F, rng, **kw) for _ in range(n)]
        if not nonzero or any(not F.is_zero(a) for a in v):
            return v
