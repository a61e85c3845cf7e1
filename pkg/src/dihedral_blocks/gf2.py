"""Dense linear algebra over GF(2), GF(4) and GF(16).

Matrices are plain ``numpy.uint8`` arrays whose entries are field elements
encoded as bit-vectors of polynomial coefficients (bit i = coefficient of x^i).
Every routine takes the field explicitly.  Row reduction over GF(2) packs rows
into 64-bit words; the extension fields use byte-per-entry log tables.

All subspaces are returned as reduced row-echelon bases, so equal subspaces
have identical representations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

__all__ = [
    "FieldSpec", "GF2", "GF4", "GF16", "get_field", "FFMatrix",
    "ShapeMismatch", "FieldMismatch",
    "identity", "zeros", "matmul", "add", "transpose", "scale",
    "rref", "rank", "nullspace", "left_nullspace", "solve", "inverse",
    "spin", "kron", "subspace_sum", "subspace_intersection", "reduce_mod",
    "coords", "in_span", "embed", "random_matrix", "matpow",
]


class ShapeMismatch(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


# Conway polynomials over GF(2): x^2+x+1 and x^4+x+1.
_MODULI = {1: 0b11, 2: 0b111, 4: 0b10011}


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(2^e) given by a fixed irreducible modulus."""

    e: int
    modulus: int
    size: int = field(init=False)
    mul_table: np.ndarray = field(init=False, repr=False)
    inv_table: np.ndarray = field(init=False, repr=False)
    # (x^k mod modulus) for k < 2e - 1, used to fold bit-plane products
    fold: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        q = 1 << self.e
        t = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                t[a, b] = _polymod(_clmul(a, b), self.modulus)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(t[a] == 1)[0])
        object.__setattr__(self, "size", q)
        object.__setattr__(self, "mul_table", t)
        object.__setattr__(self, "inv_table", inv)
        object.__setattr__(
            self, "fold", tuple(_polymod(1 << k, self.modulus) for k in range(2 * self.e - 1))
        )

    def __repr__(self) -> str:
        return f"GF({self.size})"

    def __reduce__(self):
        return (get_field, (self.e,))

    # scalar helpers
    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.inv_table[a])

    def power(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = int(self.mul_table[r, a])
        return r

    def elements(self) -> range:
        return range(self.size)

    def sqrt(self, a: int) -> int:
        # Frobenius is bijective: sqrt(a) = a^(q/2)
        return self.power(a, self.size // 2)


@lru_cache(maxsize=None)
def get_field(e: int) -> FieldSpec:
    if e not in _MODULI:
        raise ValueError(f"unsupported extension degree {e}")
    return FieldSpec(e, _MODULI[e])


GF2 = get_field(1)
GF4 = get_field(2)
GF16 = get_field(4)


@lru_cache(maxsize=None)
def _embedding(e_small: int, e_big: int) -> np.ndarray:
    """Image of GF(2^e_small) in GF(2^e_big) (Conway-compatible: x -> x^((Q-1)/(q-1)))."""
    if e_big % e_small:
        raise FieldMismatch(f"GF(2^{e_small}) does not embed in GF(2^{e_big})")
    small, big = get_field(e_small), get_field(e_big)
    gen = big.power(2, (big.size - 1) // (small.size - 1)) if e_small > 1 else 1
    table = np.zeros(small.size, dtype=np.uint8)
    for a in range(small.size):
        v = 0
        p = 1
        for i in range(e_small):
            if (a >> i) & 1:
                v ^= p
            p = big.mul(p, gen)
        table[a] = v
    return table


def embed(A: np.ndarray, src: FieldSpec, dst: FieldSpec) -> np.ndarray:
    if src.e == dst.e:
        return A
    return _embedding(src.e, dst.e)[A]


# ---------------------------------------------------------------- basics

def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.uint8)


def add(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape:
        raise ShapeMismatch(f"{A.shape} vs {B.shape}")
    return A ^ B


def transpose(A: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(A.T)


def scale(F: FieldSpec, c: int, A: np.ndarray) -> np.ndarray:
    return F.mul_table[c][A]


def _bitmatmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    # exact while inner dimension < 2^24
    dt = np.float32 if A.shape[1] < (1 << 24) else np.float64
    C = A.astype(dt) @ B.astype(dt)
    return (C.astype(np.int64) & 1).astype(np.uint8)


def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if F.e == 1:
        return _bitmatmul(A, B)
    e = F.e
    Ab = [((A >> i) & 1) for i in range(e)]
    Bb = [((B >> j) & 1) for j in range(e)]
    C = np.zeros((A.shape[0], B.shape[1]), dtype=np.uint8)
    for k in range(2 * e - 1):
        acc = None
        for i in range(max(0, k - e + 1), min(k, e - 1) + 1):
            P = _bitmatmul(Ab[i], Bb[k - i])
            acc = P if acc is None else acc ^ P
        if acc is not None:
            C ^= acc * np.uint8(F.fold[k])
    return C


def matpow(F: FieldSpec, A: np.ndarray, k: int) -> np.ndarray:
    R = identity(A.shape[0])
    base = A
    while k:
        if k & 1:
            R = matmul(F, R, base)
        k >>= 1
        if k:
            base = matmul(F, base, base)
    return R


def random_matrix(F: FieldSpec, m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, F.size, size=(m, n), dtype=np.uint8)


# ---------------------------------------------------------------- elimination

def _rref_gf2(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = A.shape
    if m == 0 or n == 0:
        return A.copy(), []
    words = (n + 63) // 64
    P = np.zeros((m, words * 8), dtype=np.uint8)
    P[:, : (n + 7) // 8] = np.packbits(A, axis=1, bitorder="little")
    P64 = P.view(np.uint64)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        byte, bit = c >> 3, c & 7
        below = np.flatnonzero((P[r:, byte] >> bit) & 1)
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            P64[[r, p]] = P64[[p, r]]
        hits = (P[:, byte] >> bit) & 1
        hits[r] = 0
        idx = np.flatnonzero(hits)
        if idx.size:
            w0 = c >> 6
            P64[idx, w0:] ^= P64[r, w0:]
        pivots.append(c)
        r += 1
    R = np.unpackbits(P, axis=1, bitorder="little", count=n)
    return R, pivots


def _rref_gfq(F: FieldSpec, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    R = A.copy()
    m, n = R.shape
    mt, it = F.mul_table, F.inv_table
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        below = np.flatnonzero(R[r:, c])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        if R[r, c] != 1:
            R[r] = mt[it[R[r, c]]][R[r]]
        col = R[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            R[idx] ^= mt[col[idx][:, None], R[r][None, :]]
        pivots.append(c)
        r += 1
    return R, pivots


def rref(F: FieldSpec, A: np.ndarray) -> tuple[np.ndarray, list[int], int]:
    """Reduced row-echelon form; returns (R, pivot columns, rank)."""
    A = np.ascontiguousarray(A, dtype=np.uint8)
    R, piv = _rref_gf2(A) if F.e == 1 else _rref_gfq(F, A)
    return R, piv, len(piv)


def rank(F: FieldSpec, A: np.ndarray) -> int:
    return rref(F, A)[2]


def echelon(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """Canonical basis (nonzero rref rows) of the row space of A."""
    if A.shape[0] == 0:
        return A.reshape(0, A.shape[1]).astype(np.uint8)
    R, _, r = rref(F, A)
    return R[:r]


def nullspace(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """Rows v spanning {v : A v^T = 0}, echelon-normalised."""
    m, n = A.shape
    R, piv, r = rref(F, A)
    free = [j for j in range(n) if j not in set(piv)]
    N = np.zeros((len(free), n), dtype=np.uint8)
    for k, j in enumerate(free):
        N[k, j] = 1
        for i, pc in enumerate(piv):
            N[k, pc] = R[i, j]  # char 2: -x = x
    return echelon(F, N) if len(free) else N


def left_nullspace(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """Rows v spanning {v : v A = 0}."""
    return nullspace(F, transpose(A))


def solve(F: FieldSpec, A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """A solution x of A x = b, or None when b is outside the column space."""
    m, n = A.shape
    aug = np.concatenate([A, b.reshape(m, -1)], axis=1)
    R, piv, r = rref(F, aug)
    if any(p >= n for p in piv):
        return None
    k = aug.shape[1] - n
    x = np.zeros((n, k), dtype=np.uint8)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n:]
    return x.reshape(n) if b.ndim == 1 else x


def inverse(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch("inverse of non-square matrix")
    R, piv, r = rref(F, np.concatenate([A, identity(n)], axis=1))
    if r < n or piv[n - 1] >= n:
        raise np.linalg.LinAlgError("singular matrix")
    return np.ascontiguousarray(R[:, n:])


# ---------------------------------------------------------------- subspaces

def reduce_mod(F: FieldSpec, V: np.ndarray, E: np.ndarray, pivots: Sequence[int]) -> np.ndarray:
    """Reduce the rows of V modulo the rref basis E with the given pivots."""
    V = V.copy()
    if len(pivots) == 0 or V.shape[0] == 0:
        return V
    C = V[:, list(pivots)].copy()
    return V ^ matmul(F, C, E)


def coords(F: FieldSpec, V: np.ndarray, E: np.ndarray, pivots: Sequence[int]) -> np.ndarray:
    """Coordinates of rows of V (assumed inside span E) in the rref basis E."""
    return np.ascontiguousarray(V[:, list(pivots)])


def in_span(F: FieldSpec, V: np.ndarray, E: np.ndarray) -> bool:
    if V.shape[0] == 0:
        return True
    piv = _pivots_of(E)
    return not reduce_mod(F, V, E, piv).any()


def _pivots_of(E: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in E]


def spin(F: FieldSpec, vectors: np.ndarray, actions: Sequence[np.ndarray]) -> np.ndarray:
    """Smallest subspace containing `vectors` and stable under every action (row convention)."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.uint8))
    n = vectors.shape[1]
    for a in actions:
        if a.shape != (n, n):
            raise ShapeMismatch("action does not match vector length")
    basis = echelon(F, vectors)
    frontier = basis
    while frontier.shape[0]:
        piv = _pivots_of(basis)
        images = np.concatenate([matmul(F, frontier, a) for a in actions], axis=0) if actions else frontier[:0]
        images = reduce_mod(F, images, basis, piv)
        images = images[images.any(axis=1)]
        if images.shape[0] == 0:
            break
        new = echelon(F, images)
        basis = echelon(F, np.concatenate([basis, new], axis=0))
        frontier = new
    return basis


def subspace_sum(F: FieldSpec, *bases: np.ndarray) -> np.ndarray:
    return echelon(F, np.concatenate(bases, axis=0))


def subspace_intersection(F: FieldSpec, U: np.ndarray, W: np.ndarray) -> np.ndarray:
    """U ∩ W via the left nullspace of the stacked bases."""
    n = U.shape[1]
    if U.shape[0] == 0 or W.shape[0] == 0:
        return np.zeros((0, n), dtype=np.uint8)
    K = left_nullspace(F, np.concatenate([U, W], axis=0))
    if K.shape[0] == 0:
        return np.zeros((0, n), dtype=np.uint8)
    return echelon(F, matmul(F, K[:, : U.shape[0]], U))


def kron(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product, row-major block convention: block (i, j) is A[i, j] * B."""
    m, n = A.shape
    p, q = B.shape
    out = F.mul_table[A[:, None, :, None], B[None, :, None, :]]
    return out.reshape(m * p, n * q)


# ---------------------------------------------------------------- wrapper type

class FFMatrix:
    """A matrix over GF(2^e) with operator syntax; thin wrapper over the array routines."""

    __slots__ = ("field", "entries")

    def __init__(self, entries, field_: FieldSpec = GF2):
        arr = np.array(entries, dtype=np.uint8)
        if arr.ndim != 2:
            arr = arr.reshape(len(arr), -1)
        if arr.size and arr.max() >= field_.size:
            raise ValueError("entry outside field")
        self.entries = arr
        self.field = field_

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def _check(self, other: "FFMatrix") -> None:
        if self.field is not other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        return FFMatrix(matmul(self.field, self.entries, other.entries), self.field)

    def __add__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        return FFMatrix(add(self.entries, other.entries), self.field)

    __sub__ = __add__

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FFMatrix) and self.field is other.field
                and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.field.e, self.entries.tobytes(), self.entries.shape))

    @property
    def T(self) -> "FFMatrix":
        return FFMatrix(transpose(self.entries), self.field)

    def rank(self) -> int:
        return rank(self.field, self.entries)

    def rref(self):
        R, piv, r = rref(self.field, self.entries)
        return FFMatrix(R, self.field), piv, r

    def nullspace(self) -> "FFMatrix":
        return FFMatrix(nullspace(self.field, self.entries), self.field)

    def __repr__(self) -> str:
        return f"FFMatrix({self.rows}x{self.cols} over {self.field})"

    # text fixture format
    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.field.e}"]
        for row in self.entries:
            if self.field.e == 1:
                packed = np.packbits(row, bitorder="little")
                lines.append(packed.tobytes().hex() if self.cols else "")
            else:
                lines.append("".join(format(int(x), "x") for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FFMatrix":
        lines = text.strip("\n").split("\n")
        m, n, e = (int(x) for x in lines[0].split())
        F = get_field(e)
        A = np.zeros((m, n), dtype=np.uint8)
        for i in range(m):
            s = lines[1 + i].strip()
            if e == 1:
                raw = np.frombuffer(bytes.fromhex(s), dtype=np.uint8)
                A[i] = np.unpackbits(raw, bitorder="little", count=n)
            else:
                A[i] = [int(ch, 16) for ch in s]
        return cls(A, F)
