"""Small odd-characteristic finite fields GF(p^k), used to build PSL2/PGL2 on the projective line.

Elements are integers 0..q-1 read as base-p digit vectors of polynomial
coefficients modulo a fixed Conway polynomial.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Conway polynomials, coefficients lowest degree first (monic, leading 1 implied last).
CONWAY = {
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}

MAX_Q = 343


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


class OddField:
    def __init__(self, p: int, k: int):
        if p == 2:
            raise ValueError("characteristic 2 not handled here")
        if k > 1 and (p, k) not in CONWAY:
            raise ValueError(f"no irreducible polynomial tabulated for {p}^{k}")
        self.p, self.k, self.q = p, k, p**k
        q = self.q
        digits = np.array([[(a // p**i) % p for i in range(k)] for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(k)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        mod = CONWAY.get((p, k), (0, 1))
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                prod = [0] * (2 * k - 1)
                for i in range(k):
                    if digits[a, i]:
                        for j in range(k):
                            prod[i + j] += int(digits[a, i] * digits[b, j])
                for d in range(2 * k - 2, k - 1, -1):
                    c = prod[d] % p
                    if c:
                        for i in range(k):
                            prod[d - k + i] -= c * mod[i]
                    prod[d] = 0
                mul[a, b] = sum((prod[i] % p) * p**i for i in range(k))
        self.mul_table = mul
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.primitive = self._find_primitive()

    def _find_primitive(self) -> int:
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            x, order = g, 1
            while x != 1:
                x = self.mul_table[x, g]
                order += 1
            if order == q - 1:
                return g
        return 1

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def power(self, a: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = int(self.mul_table[r, a])
        return r

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    def prime_subfield(self) -> list[int]:
        return list(range(self.p))


@lru_cache(maxsize=None)
def odd_field(q: int) -> OddField:
    pk = prime_power(q)
    if pk is None or pk[0] == 2:
        raise ValueError(f"{q} is not an odd prime power")
    return OddField(*pk)
