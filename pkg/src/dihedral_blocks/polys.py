"""Univariate polynomials over GF(2^e) and their factorisation.

A polynomial is a tuple of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

import random
from typing import Sequence

import numpy as np

from .gf2 import FieldSpec, identity, matmul

Poly = tuple


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def deg(p: Poly) -> int:
    return len(p) - 1


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) ^ (q[i] if i < len(q) else 0) for i in range(n)])


def pmul(F: FieldSpec, p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    t = F.mul_table
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            row = t[a]
            for j, b in enumerate(q):
                if b:
                    out[i + j] ^= int(row[b])
    return trim(out)


def pscale(F: FieldSpec, c: int, p: Poly) -> Poly:
    return trim([F.mul(c, a) for a in p])


def monic(F: FieldSpec, p: Poly) -> Poly:
    return pscale(F, F.inv(p[-1]), p) if p else p


def pdivmod(F: FieldSpec, p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    inv_lead = F.inv(q[-1])
    quot = [0] * max(0, len(p) - dq)
    t = F.mul_table
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i]
        if c:
            f = int(t[c, inv_lead])
            quot[i - dq] = f
            for j in range(dq + 1):
                if q[j]:
                    r[i - dq + j] ^= int(t[f, q[j]])
    return trim(quot), trim(r[:dq])


def pmod(F: FieldSpec, p: Poly, q: Poly) -> Poly:
    return pdivmod(F, p, q)[1]


def pgcd(F: FieldSpec, p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, pmod(F, p, q)
    return monic(F, p)


def ppowmod(F: FieldSpec, base: Poly, k: int, mod: Poly) -> Poly:
    result: Poly = (1,)
    base = pmod(F, base, mod)
    while k:
        if k & 1:
            result = pmod(F, pmul(F, result, base), mod)
        k >>= 1
        if k:
            base = pmod(F, pmul(F, base, base), mod)
    return result


def derivative(p: Poly) -> Poly:
    # characteristic 2: only odd-degree terms survive
    return trim([p[i] if i % 2 == 1 else 0 for i in range(1, len(p))])


def _sqrt_poly(F: FieldSpec, p: Poly) -> Poly:
    return trim([F.sqrt(p[i]) for i in range(0, len(p), 2)])


def squarefree_decomposition(F: FieldSpec, f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g, m) with f = prod g^m, each g squarefree (g may repeat across m)."""
    f = monic(F, f)
    out: list[tuple[Poly, int]] = []
    if deg(f) <= 0:
        return out
    d = derivative(f)
    if not d:
        return [(g, 2 * m) for g, m in squarefree_decomposition(F, _sqrt_poly(F, f))]
    c = pgcd(F, f, d)
    w = pdivmod(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if deg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = pdivmod(F, c, y)[0]
    if deg(c) > 0:
        out.extend((g, 2 * m) for g, m in squarefree_decomposition(F, _sqrt_poly(F, c)))
    return out


def distinct_degree(F: FieldSpec, f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f: products of all irreducible factors of each degree."""
    out = []
    x: Poly = (0, 1)
    h = x
    d = 0
    q = F.size
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, q, f)
        g = pgcd(F, f, padd(h, x))
        if deg(g) > 0:
            out.append((g, d))
            f = pdivmod(F, f, g)[0]
            h = pmod(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(F: FieldSpec, f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split a product of irreducibles of degree d (Cantor-Zassenhaus, trace map in char 2)."""
    if deg(f) == d:
        return [monic(F, f)]
    k = F.e * d
    while True:
        r = trim([rng.randrange(F.size) for _ in range(deg(f))])
        if deg(r) < 1:
            continue
        t = r
        acc = r
        for _ in range(k - 1):
            t = pmod(F, pmul(F, t, t), f)
            acc = padd(acc, t)
        g = pgcd(F, f, acc)
        if 0 < deg(g) < deg(f):
            return equal_degree(F, g, d, rng) + equal_degree(F, pdivmod(F, f, g)[0], d, rng)


def factor(F: FieldSpec, f: Poly, seed: int = 0x5C077) -> dict[Poly, int]:
    """Monic irreducible factors with multiplicities."""
    rng = random.Random(seed)
    out: dict[Poly, int] = {}
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for p in equal_degree(F, h, d, rng):
                out[p] = out.get(p, 0) + m
    return dict(sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0])))


def is_irreducible(F: FieldSpec, f: Poly) -> bool:
    fac = factor(F, f)
    return len(fac) == 1 and next(iter(fac.values())) == 1


def evaluate_matrix(F: FieldSpec, p: Poly, A: np.ndarray) -> np.ndarray:
    """p(A) by Horner's rule."""
    n = A.shape[0]
    R = np.zeros((n, n), dtype=np.uint8)
    I = identity(n)
    for c in reversed(p):
        R = matmul(F, R, A)
        if c:
            R ^= F.mul_table[c][I]
    return R
