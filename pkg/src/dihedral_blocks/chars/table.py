"""Character tables by the Burnside-Dixon method, and principal 2-block membership with heights."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np
from sympy import isprime, primitive_root

from ..groups import FiniteGroup, Permutation, two_part
from .cyclotomic import Cyclotomic, _basis

MAX_GROUP_ORDER = 5000
PRIME_SEARCH_CAP = 10**7


class GroupTooLarge(ValueError):
    pass


class NoSuitablePrime(RuntimeError):
    pass


class NonIntegralCentralCharacter(ArithmeticError):
    pass


# ---------------------------------------------------------------- linear algebra mod p

def _rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = A.copy() % p
    rows, cols = A.shape
    piv, r = [], 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        piv.append(c)
        r += 1
    return A[:r], piv


def _left_nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Rows v with v A = 0."""
    At = A.T % p
    R, piv = _rref_mod(At, p)
    n = At.shape[1]
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, c in enumerate(piv):
            out[i, c] = -R[r, f] % p
    return out


def _charpoly_mod(A: np.ndarray, p: int) -> list[int]:
    """Coefficients of det(xI - A), highest degree first (Faddeev-LeVerrier, valid for p > dim)."""
    n = A.shape[0]
    c = [1]
    M = np.zeros_like(A)
    I = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        M = (A @ M + c[-1] * I) % p
        ck = -int(np.trace(A @ M % p)) * pow(k, -1, p) % p
        c.append(ck)
    return c


def _roots_mod(coeffs: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for a in coeffs:
        acc = (acc * xs + a) % p
    return [int(r) for r in np.nonzero(acc == 0)[0]]


def lifting_prime(exponent: int, order: int) -> int:
    """Smallest prime p = 1 mod exponent with p > 2 sqrt(order), so degrees are read off unambiguously."""
    bound = 2 * isqrt(order) + 2
    p = exponent + 1
    while p <= PRIME_SEARCH_CAP:
        if p > bound and isprime(p):
            return p
        p += exponent
    raise NoSuitablePrime(f"no prime = 1 mod {exponent} below {PRIME_SEARCH_CAP}")


# ---------------------------------------------------------------- the table

@dataclass(frozen=True)
class ClassInfo:
    representative: Permutation
    size: int
    order: int


class CharacterTable:
    """Irreducible characters as rows of Cyclotomic values over N = exp(G), sorted by (degree, values)."""

    def __init__(self, group: FiniteGroup, classes: list[ClassInfo], chars: list[list[Cyclotomic]],
                 N: int, prime: int, inverse_class: list[int]):
        self.group = group
        self.classes = tuple(classes)
        self.chars = tuple(tuple(r) for r in chars)
        self.N = N
        self.prime = prime
        self.inverse_class = tuple(inverse_class)

    def __len__(self) -> int:
        return len(self.chars)

    @property
    def degrees(self) -> list[int]:
        return [int(r[0]) for r in self.chars]

    def value(self, i: int, g: Permutation) -> Cyclotomic:
        return self.chars[i][self.group.class_of(g)]

    def column(self, g: Permutation) -> list[Cyclotomic]:
        j = self.group.class_of(g)
        return [r[j] for r in self.chars]

    def inner(self, a: int, b: int) -> Cyclotomic:
        """Sum over G of chi_a(g) conj(chi_b(g))."""
        tot = Cyclotomic.integer(self.N, 0)
        for j, c in enumerate(self.classes):
            tot = tot + self.chars[a][j] * self.chars[b][self.inverse_class[j]] * c.size
        return tot

    def rows_orthogonal(self) -> bool:
        n = self.group.order
        return all(self.inner(a, b) == (n if a == b else 0)
                   for a in range(len(self)) for b in range(a, len(self)))

    def columns_orthogonal(self) -> bool:
        n = self.group.order
        r = len(self.classes)
        for i in range(r):
            for k in range(i, r):
                tot = Cyclotomic.integer(self.N, 0)
                for row in self.chars:
                    tot = tot + row[i] * row[self.inverse_class[k]]
                want = n // self.classes[i].size if i == k else 0
                if tot != want:
                    return False
        return True


def dixon_table(G: FiniteGroup, max_order: int = MAX_GROUP_ORDER) -> CharacterTable:
    """Irreducible characters from common eigenvectors of the class matrices over F_p."""
    n = G.order
    if n > max_order:
        raise GroupTooLarge(f"|G| = {n} > {max_order}")
    reps = G.classes
    r = len(reps)
    sizes = [s for _, s in reps]
    inv = [G.class_of(g.inverse()) for g, _ in reps]
    N = G.exponent
    p = lifting_prime(N, n)

    # structure constants: a_j a_k = sum_l c[j, k, l] a_l
    c = np.zeros((r, r, r), dtype=np.int64)
    for j in range(r):
        for x in G.class_members(j):
            xi = x.inverse()
            for l, (z, _) in enumerate(reps):
                c[j, G.class_of(xi * z), l] += 1

    # split F_p^r into common (row) eigenvectors of all c[j]
    spaces = [np.eye(r, dtype=np.int64)]
    done: list[np.ndarray] = []
    j = 1
    stalled = 0
    while spaces:
        nxt = []
        M = c[j % r].T % p  # omega is a column eigenvector of c[j]
        for B in spaces:
            if B.shape[0] == 1:
                done.append(B)
                continue
            Bp, piv = _rref_mod(B, p)
            A = (Bp @ M % p)[:, piv]
            split = []
            for lam in _roots_mod(_charpoly_mod(A, p), p):
                K = _left_nullspace_mod((A - lam * np.eye(A.shape[0], dtype=np.int64)) % p, p)
                if K.shape[0]:
                    split.append(K @ Bp % p)
            nxt.extend(split)
        progressed = len(nxt) != len(spaces) or any(B.shape[0] == 1 for B in nxt)
        spaces = [B for B in nxt if B.shape[0] > 1]
        done.extend(B for B in nxt if B.shape[0] == 1)
        stalled = 0 if progressed else stalled + 1
        if stalled > r:
            raise NoSuitablePrime("class matrices failed to split the centre")
        j += 1
    if len(done) != r:
        raise NoSuitablePrime(f"found {len(done)} central characters for {r} classes")

    zeta = pow(primitive_root(p), (p - 1) // N, p)
    size_inv = [pow(s, -1, p) for s in sizes]
    powers = []
    for g, _ in reps:
        o = g.order()
        powers.append([G.class_of(g ** k) for k in range(o)])

    rows = []
    for B in done:
        w = B[0] * pow(int(B[0][0]), -1, p) % p
        s = sum(int(w[k]) * int(w[inv[k]]) * size_inv[k] for k in range(r)) % p
        d2 = n * pow(s, -1, p) % p
        degs = [d for d in range(1, isqrt(n) + 1) if n % d == 0 and d * d % p == d2]
        if len(degs) != 1:
            raise NoSuitablePrime(f"degree not determined mod {p}")
        d = degs[0]
        vals = [int(w[k]) * d * size_inv[k] % p for k in range(r)]
        row = []
        for k, (g, _) in enumerate(reps):
            o = len(powers[k])
            zo = pow(zeta, N // o, p)
            oinv = pow(o, -1, p)
            full = np.zeros(N, dtype=np.int64)
            for m in range(o):
                tot = sum(vals[powers[k][l]] * pow(zo, (-m * l) % o, p) for l in range(o)) * oinv % p
                if tot > d:
                    raise NoSuitablePrime(f"multiplicity {tot} exceeds degree {d}")
                full[m * (N // o)] = tot
            row.append(Cyclotomic(N, full))
        rows.append(row)
    rows.sort(key=lambda row: (int(row[0]), [v.key() for v in row]))
    classes = [ClassInfo(g, s, g.order()) for g, s in reps]
    return CharacterTable(G, classes, rows, N, p, inv)


# ---------------------------------------------------------------- principal block

@dataclass(frozen=True)
class PrincipalBlock:
    table: CharacterTable
    rows: tuple[int, ...]
    heights: tuple[int, ...]
    defect: int

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def height_zero(self) -> list[int]:
        return [i for i, h in zip(self.rows, self.heights) if h == 0]


def _nu2(x: int) -> int:
    return (x & -x).bit_length() - 1


def _pmod2(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _odd_cyclotomic_mod2(N: int) -> int:
    """Phi_m mod 2 as a bit polynomial, m the odd part of N."""
    phi = _basis(N // two_part(N))[0]
    return sum(1 << k for k, a in enumerate(phi) if a % 2)


def principal_block(table: CharacterTable) -> PrincipalBlock:
    """Rows whose central character agrees with the trivial one modulo the primes above 2."""
    G = table.group
    modulus = _odd_cyclotomic_mod2(table.N)
    rows, heights = [], []
    for i, row in enumerate(table.chars):
        d = int(row[0])
        same = True
        for j, cl in enumerate(table.classes):
            num = (row[j] * cl.size).vector
            if np.any(num % d):
                raise NonIntegralCentralCharacter(f"row {i}, class {j}")
            omega = num // d
            bits = sum(1 << k for k, a in enumerate(omega) if a % 2)
            if _pmod2(bits, modulus) != cl.size % 2:
                same = False
                break
        if same:
            rows.append(i)
            # P is Sylow, so the defect correction nu(|G|) - nu(|P|) vanishes
            heights.append(_nu2(d))
    return PrincipalBlock(table, tuple(rows), tuple(heights), _nu2(G.order))
