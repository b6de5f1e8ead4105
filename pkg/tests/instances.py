"""Generators of forms over k((t)) that come with a tame norm by construction.

Blocks (each with its own norm on the identity basis):
  hyp    c t^e x y                          values (e/2, e/2)
  norm   c t^e (x^2 + x y + u y^2)          values (e/2, e/2), X^2 + X + u irreducible over k
  shift  a t^i x^2 + x y + b t^-i y^2       values (i/2, -i/2)
The orthogonal sum is conjugated by a random unimodular matrix over k[t]
and the norm is transported along.
"""
from __future__ import annotations

import random
from fractions import Fraction

from tamewitt import linalg
from tamewitt.norms import Norm, direct_sum_norms, transport_norm
from tamewitt.quadratic_forms import QuadraticForm
from tamewitt.valuegroup import ValueGroupElement


def _v(x):
    return ValueGroupElement((Fraction(x),))


def tame_block(F, rng: random.Random, kind: str | None = None):
    k = F.base
    units = [c for c in k.elements() if not k.is_zero(c)]
    irred = [u for u in k.elements() if k.artin_schreier_root(u) is None]
    kind = kind or rng.choice(["hyp", "norm", "shift"])
    if kind == "hyp":
        e = rng.randint(-2, 2)
        c = F.monomial(rng.choice(units), e)
        return kind, QuadraticForm.binary(F, F.zero, c, F.zero), [_v(Fraction(e, 2))] * 2
    if kind == "norm":
        e = rng.randint(-2, 2)
        c = F.monomial(rng.choice(units), e)
        u = F.from_base(rng.choice(irred))
        return kind, QuadraticForm.binary(F, c, c, F.mul(c, u)), [_v(Fraction(e, 2))] * 2
    i = rng.randint(-2, 2)
    a = F.monomial(rng.choice(list(k.elements())), i)
    b = F.monomial(rng.choice(list(k.elements())), -i)
    return kind, QuadraticForm.binary(F, a, F.one, b), [_v(Fraction(i, 2)), _v(Fraction(-i, 2))]


def unimodular(F, n: int, rng: random.Random, steps: int = 3, max_deg: int = 1):
    """Columns of a product of elementary matrices over k[t] (determinant 1)."""
    k = F.base
    M = linalg.identity(F, n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        units = [x for x in k.elements() if not k.is_zero(x)] if k.is_finite else [k.from_int(a) for a in (1, -1, 2, 3)]
        c = F.monomial(rng.choice(units), rng.randint(0, max_deg))
        # column j += c * column i
        for r in range(n):
            M[r][j] = F.add(M[r][j], F.mul(c, M[r][i]))
    return linalg.columns(M)


def tame_instance(F, rng: random.Random, max_blocks: int = 3, conjugate: bool = True):
    """(q, alpha, kinds) with alpha tame for q by construction."""
    blocks = [tame_block(F, rng) for _ in range(rng.randint(1, max_blocks))]
    q = QuadraticForm(F, [])
    alpha = Norm(F, [], [])
    for _, b, vals in blocks:
        q = q.orthogonal_sum(b)
        alpha = direct_sum_norms(alpha, Norm.identity(F, vals))
    if conjugate:
        P = unimodular(F, q.dim, rng)
        q = q.change_basis(P)
        alpha = transport_norm(alpha, P)
    return q, alpha, [kind for kind, _, _ in blocks]
