"""Exact arithmetic in Z[zeta_N], stored in the power basis modulo the N-th cyclotomic polynomial."""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

MAX_N = 2520

_x = symbols("x")


class CyclotomicError(ValueError):
    pass


@lru_cache(maxsize=None)
def _basis(N: int) -> tuple[np.ndarray, np.ndarray]:
    """(Phi_N coefficients low-to-high, table R with row k = x^k mod Phi_N)."""
    if N < 1 or N > MAX_N:
        raise CyclotomicError(f"root order {N} outside 1..{MAX_N}")
    phi = np.array(Poly(cyclotomic_poly(N, _x), _x).all_coeffs()[::-1], dtype=np.int64)
    d = len(phi) - 1
    R = np.zeros((N, d), dtype=np.int64)
    cur = np.zeros(d, dtype=np.int64)
    cur[0] = 1
    for k in range(N):
        R[k] = cur
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        if top:
            cur -= top * phi[:-1]
    R.setflags(write=False)
    return phi, R


def degree(N: int) -> int:
    return _basis(N)[1].shape[1]


def _reduce(N: int, full: np.ndarray) -> np.ndarray:
    """Reduce a coefficient vector indexed by exponents (any length) to the power basis."""
    _, R = _basis(N)
    if full.shape[0] > N:
        folded = np.zeros(N, dtype=np.int64)
        idx = np.arange(full.shape[0]) % N
        np.add.at(folded, idx, full)
        full = folded
    return full @ R[: full.shape[0]]


class Cyclotomic:
    """An element of Z[zeta_N].  ``coeffs`` has length N; only the first phi(N) entries can be nonzero."""

    __slots__ = ("N", "_v", "_hash")

    def __init__(self, N: int, coeffs) -> None:
        v = np.asarray(coeffs, dtype=np.int64)
        d = degree(N)
        if v.shape[0] > d:
            v = _reduce(N, v)
        elif v.shape[0] < d:
            v = np.concatenate((v, np.zeros(d - v.shape[0], dtype=np.int64)))
        v.setflags(write=False)
        self.N = N
        self._v = v
        self._hash = None

    # ---- construction
    @classmethod
    def integer(cls, N: int, k: int) -> "Cyclotomic":
        return cls(N, [k])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._v) + (0,) * (self.N - self._v.shape[0])

    @property
    def vector(self) -> np.ndarray:
        return self._v

    # ---- arithmetic
    def _lift(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if isinstance(other, int):
            return self, Cyclotomic.integer(self.N, other)
        if other.N == self.N:
            return self, other
        M = self.N * other.N // gcd(self.N, other.N)
        return self.embed(M), other.embed(M)

    def __add__(self, other):
        a, b = self._lift(other)
        return Cyclotomic(a.N, a._v + b._v)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, -self._v)

    def __sub__(self, other):
        a, b = self._lift(other)
        return Cyclotomic(a.N, a._v - b._v)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.N, self._v * other)
        a, b = self._lift(other)
        return Cyclotomic(a.N, _reduce(a.N, np.convolve(a._v, b._v)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Cyclotomic.integer(self.N, 1)
        for _ in range(k):
            out = out * self
        return out

    def galois(self, c: int) -> "Cyclotomic":
        """The automorphism zeta -> zeta^c (c coprime to N)."""
        if gcd(c, self.N) != 1:
            raise CyclotomicError(f"{c} is not a unit mod {self.N}")
        full = np.zeros(self.N, dtype=np.int64)
        for k, a in enumerate(self._v):
            if a:
                full[(c * k) % self.N] += a
        return Cyclotomic(self.N, _reduce(self.N, full))

    def conj(self) -> "Cyclotomic":
        return self.galois(-1 % self.N) if self.N > 2 else self

    def embed(self, M: int) -> "Cyclotomic":
        """Same value in Z[zeta_M], with zeta_N = zeta_M^(M/N)."""
        if M % self.N:
            raise CyclotomicError(f"{self.N} does not divide {M}")
        if M == self.N:
            return self
        f = M // self.N
        full = np.zeros(M, dtype=np.int64)
        full[: f * self._v.shape[0] : f] = self._v
        return Cyclotomic(M, _reduce(M, full))

    # ---- comparison
    def equals(self, other) -> bool:
        a, b = self._lift(other)
        return bool(np.array_equal(a._v, b._v))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Cyclotomic)):
            return self.equals(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.N, self._v.tobytes()))
        return self._hash

    def is_integer(self) -> bool:
        return not self._v[1:].any()

    def __int__(self) -> int:
        if not self.is_integer():
            raise CyclotomicError(f"{self} is not rational")
        return int(self._v[0])

    def key(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._v)

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi * np.arange(self._v.shape[0]) / self.N)
        return complex(self._v @ z)

    # ---- text form: <int>, z^<k> and signed sums of those
    def __str__(self) -> str:
        parts = []
        c0 = int(self._v[0])
        if c0:
            parts.append(str(c0))
        for k in range(1, self._v.shape[0]):
            c = int(self._v[k])
            sign = "-" if c < 0 else "+"
            parts.extend([f"{sign}z^{k}"] * abs(c))
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self) -> str:
        return f"Cyclotomic({self.N}, {self})"


_TERM = re.compile(r"([+-]?)(?:(\d+)|z\^(\d+))")


def parse(text: str, N: int) -> Cyclotomic:
    s = text.replace(" ", "")
    if not s:
        raise CyclotomicError("empty expression")
    full = np.zeros(N, dtype=np.int64)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise CyclotomicError(f"cannot parse {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(2) is not None:
            full[0] += sign * int(m.group(2))
        else:
            full[int(m.group(3)) % N] += sign
        pos = m.end()
    return Cyclotomic(N, _reduce(N, full))


def cyc(N: int, j: int) -> Cyclotomic:
    """zeta_N^j."""
    full = np.zeros(N, dtype=np.int64)
    full[j % N] = 1
    return Cyclotomic(N, _reduce(N, full))


def add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def conj(a: Cyclotomic) -> Cyclotomic:
    return a.conj()


def equals(a: Cyclotomic, b: Cyclotomic) -> bool:
    return a.equals(b)
