"""Dense univariate polynomials over a field backend.

Polynomials are tuples of payloads, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations


def trim(F, p):
    p = list(p)
    while p and F.is_zero(p[-1]):
        p.pop()
    return tuple(p)


def add(F, p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else F.zero
        b = q[i] if i < len(q) else F.zero
        out.append(F.add(a, b))
    return trim(F, out)


def neg(F, p):
    return tuple(F.neg(a) for a in p)


def sub(F, p, q):
    return add(F, p, neg(F, q))


def scale(F, c, p):
    if F.is_zero(c):
        return ()
    return trim(F, [F.mul(c, a) for a in p])


def mul(F, p, q):
    if not p or not q:
        return ()
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if F.is_zero(a):
            continue
        for j, b in enumerate(q):
            if F.is_zero(b):
                continue
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def shift(F, p, k):
    """Multiply by X^k (k >= 0)."""
    if not p:
        return ()
    return (F.zero,) * k + tuple(p)


def divmod_(F, p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    lead_inv = F.inv(q[-1])
    dq = len(q) - 1
    quot = [F.zero] * max(len(p) - dq, 0)
    while len(p) - 1 >= dq and p:
        c = F.mul(p[-1], lead_inv)
        k = len(p) - 1 - dq
        quot[k] = c
        for i, b in enumerate(q):
            p[i + k] = F.sub(p[i + k], F.mul(c, b))
        p = list(trim(F, p))
    return trim(F, quot), trim(F, p)


def monic(F, p):
    if not p:
        return p
    return scale(F, F.inv(p[-1]), p)


def gcd(F, p, q):
    while q:
        p, q = q, divmod_(F, p, q)[1]
    return monic(F, p)


def ext_gcd(F, p, q):
    """Return (g, s, t) with s*p + t*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        quo, rem = divmod_(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(F, s0, mul(F, quo, s1))
        t0, t1 = t1, sub(F, t0, mul(F, quo, t1))
    if not r0:
        return (), s0, t0
    c = F.inv(r0[-1])
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def evaluate(F, p, x):
    acc = F.zero
    for a in reversed(p):
        acc = F.add(F.mul(acc, x), a)
    return acc


def order(F, p):
    """Index of the lowest nonzero coefficient."""
    for i, a in enumerate(p):
        if not F.is_zero(a):
            return i
    raise ValueError("order of the zero polynomial")
