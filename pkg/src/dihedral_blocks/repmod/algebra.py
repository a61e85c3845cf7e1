"""Matrix-algebra core shared by all module computations.

Everything here works on a field and a list of square action matrices (the
generators of an algebra acting on row vectors from the right); group modules,
endomorphism algebras and regular representations all reduce to this.
"""

from __future__ import annotations

import os
import random
from typing import Sequence

import numpy as np

from .. import gf2
from ..gf2 import FieldSpec, matmul
from ..polys import factor, evaluate_matrix, padd, pdivmod, pmul, monic, pgcd, trim

DEFAULT_SEED = 0x5C077


class MeataxeFailure(RuntimeError):
    """Random search for a submodule or an idempotent exhausted its budget."""


def seed_value(seed: int | None = None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("DBL_SEED")
    return int(env, 0) if env else DEFAULT_SEED


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_value(seed))


# ---------------------------------------------------------------- incremental basis

class IncrementalBasis:
    """Row space built one vector at a time, remembering how each rref row was made.

    ``rows`` holds the added vectors B (in order), ``E`` their rref and ``T``
    the transformation with E = T B, so membership tests also give
    coordinates with respect to B.
    """

    def __init__(self, F: FieldSpec, n: int, capacity: int | None = None):
        cap = capacity or n
        self.F, self.n = F, n
        self.B = np.zeros((cap, n), dtype=np.uint8)
        self.E = np.zeros((cap, n), dtype=np.uint8)
        self.T = np.zeros((cap, cap), dtype=np.uint8)
        self.pivots: list[int] = []
        self.k = 0

    def __len__(self) -> int:
        return self.k

    def _grow(self) -> None:
        cap = self.B.shape[0] * 2
        for name in ("B", "E"):
            old = getattr(self, name)
            new = np.zeros((cap, self.n), dtype=np.uint8)
            new[: old.shape[0]] = old
            setattr(self, name, new)
        T = np.zeros((cap, cap), dtype=np.uint8)
        T[: self.T.shape[0], : self.T.shape[1]] = self.T
        self.T = T

    def reduce(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(a, residual) with v = a E + residual and residual zero at every pivot."""
        k = self.k
        if k == 0:
            return np.zeros(0, dtype=np.uint8), v.copy()
        a = v[self.pivots]
        res = v ^ matmul(self.F, a[None, :], self.E[:k])[0]
        return a, res

    def express(self, v: np.ndarray) -> np.ndarray | None:
        """c with v = c B, or None if v is outside the span."""
        a, res = self.reduce(v)
        if res.any():
            return None
        if self.k == 0:
            return a
        return matmul(self.F, a[None, :], self.T[: self.k, : self.k])[0]

    def add(self, v: np.ndarray) -> bool:
        """Append v if independent; returns whether it was added."""
        F = self.F
        a, res = self.reduce(v)
        nz = np.flatnonzero(res)
        if nz.size == 0:
            return False
        if self.k == self.B.shape[0]:
            self._grow()
        k = self.k
        p = int(nz[0])
        t = np.zeros(self.T.shape[1], dtype=np.uint8)
        t[k] = 1
        if k:
            t[:k] ^= matmul(F, a[None, :], self.T[:k, :k])[0]
        lead = int(res[p])
        if lead != 1:
            inv = F.inv(lead)
            res = F.mul_table[inv][res]
            t = F.mul_table[inv][t]
        if k:
            col = self.E[:k, p].copy()
            idx = np.flatnonzero(col)
            if idx.size:
                self.E[idx] ^= F.mul_table[col[idx][:, None], res[None, :]]
                self.T[idx] ^= F.mul_table[col[idx][:, None], t[None, :]]
        self.B[k] = v
        self.E[k] = res
        self.T[k] = t
        self.pivots.append(p)
        self.k += 1
        return True

    def basis(self) -> np.ndarray:
        return self.B[: self.k].copy()

    def inverse_of_basis(self) -> np.ndarray:
        """B^-1 when the basis spans the whole space."""
        if self.k != self.n:
            raise ValueError("basis is not complete")
        inv = np.zeros((self.n, self.n), dtype=np.uint8)
        inv[self.pivots] = self.T[: self.k, : self.k]
        return inv


# ---------------------------------------------------------------- subspaces and actions

def dim_of(acts: Sequence[np.ndarray], dim: int | None = None) -> int:
    if acts:
        return acts[0].shape[0]
    if dim is None:
        raise ValueError("dimension needed when there are no actions")
    return dim


def is_invariant(F: FieldSpec, U: np.ndarray, acts: Sequence[np.ndarray]) -> bool:
    if U.shape[0] == 0:
        return True
    E = gf2.echelon(F, U)
    piv = gf2._pivots_of(E)
    return all(not gf2.reduce_mod(F, matmul(F, E, A), E, piv).any() for A in acts)


def sub_actions(F: FieldSpec, U: np.ndarray, acts: Sequence[np.ndarray]) -> tuple[np.ndarray, list[np.ndarray]]:
    """Actions on an invariant subspace, in the rref basis of U (returned)."""
    E = gf2.echelon(F, U)
    piv = gf2._pivots_of(E)
    return E, [np.ascontiguousarray(matmul(F, E, A)[:, piv]) for A in acts]


def quotient_actions(F: FieldSpec, U: np.ndarray, acts: Sequence[np.ndarray], n: int
                     ) -> tuple[list[int], list[np.ndarray]]:
    """Actions on V/U; the quotient basis is the images of unit vectors off the pivots of U."""
    E = gf2.echelon(F, U) if U.shape[0] else U.reshape(0, n)
    piv = gf2._pivots_of(E)
    rest = [j for j in range(n) if j not in set(piv)]
    out = []
    for A in acts:
        R = gf2.reduce_mod(F, np.ascontiguousarray(A[rest]), E, piv)
        out.append(np.ascontiguousarray(R[:, rest]))
    return rest, out


def quotient_map(F: FieldSpec, U: np.ndarray, n: int) -> np.ndarray:
    """Matrix (n x n-dim U) of the projection V -> V/U in the basis used by quotient_actions."""
    E = gf2.echelon(F, U) if U.shape[0] else U.reshape(0, n)
    piv = gf2._pivots_of(E)
    rest = [j for j in range(n) if j not in set(piv)]
    red = gf2.reduce_mod(F, gf2.identity(n), E, piv)
    return np.ascontiguousarray(red[:, rest])


def module_generators(F: FieldSpec, acts: Sequence[np.ndarray], n: int | None = None) -> np.ndarray:
    """A short list of vectors generating the module (greedy over unit vectors)."""
    n = dim_of(acts, n)
    gens = []
    span = np.zeros((0, n), dtype=np.uint8)
    I = gf2.identity(n)
    for j in range(n):
        if span.shape[0] == n:
            break
        if span.shape[0] and gf2.in_span(F, I[j:j + 1], span):
            continue
        gens.append(I[j])
        span = gf2.spin(F, np.concatenate([span, I[j:j + 1]]), acts)
    return np.array(gens, dtype=np.uint8).reshape(len(gens), n)


# ---------------------------------------------------------------- homomorphisms

def hom_space(F: FieldSpec, actsM: Sequence[np.ndarray], actsN: Sequence[np.ndarray],
              dimM: int | None = None, dimN: int | None = None,
              gensM: np.ndarray | None = None) -> np.ndarray:
    """Basis (h, m, n) of the module homomorphisms X with A_M X = X A_N for all paired actions.

    A homomorphism is fixed by the images of generators of M.  Spinning the
    generators builds a basis of M; every dependency met while spinning is a
    linear condition on those images.
    """
    m = dim_of(actsM, dimM)
    n = dim_of(actsN, dimN)
    if len(actsM) != len(actsN):
        raise ValueError("modules carry different numbers of actions")
    if m == 0 or n == 0:
        return np.zeros((0, m, n), dtype=np.uint8)
    gens = module_generators(F, actsM, m) if gensM is None else gensM
    r = gens.shape[0]
    d = r * n
    S = gf2.identity(d)  # rows: current basis of admissible generator images
    Y = np.zeros((m, d, n), dtype=np.uint8)  # Y[k]: image of basis vector k, per row of S
    basis = IncrementalBasis(F, m)
    queue: list[int] = []

    def constrain(C: np.ndarray) -> None:
        nonlocal S, Y
        if not C.any():
            return
        K = gf2.left_nullspace(F, C)
        if K.shape[0] == S.shape[0]:
            return
        S = matmul(F, K, S)
        k = len(basis)
        dd = S.shape[0]
        if dd == 0:
            Y = np.zeros((m, 0, n), dtype=np.uint8)
            return
        old = Y[:k]
        flat = np.ascontiguousarray(old.transpose(1, 0, 2).reshape(old.shape[1], k * n))
        new = matmul(F, K, flat).reshape(dd, k, n).transpose(1, 0, 2)
        Y = np.zeros((m, dd, n), dtype=np.uint8)
        Y[:k] = new

    def combo(c: np.ndarray) -> np.ndarray:
        idx = np.flatnonzero(c)
        if idx.size == 0:
            return np.zeros(Y.shape[1:], dtype=np.uint8)
        terms = Y[idx] if F.e == 1 else F.mul_table[c[idx][:, None, None], Y[idx]]
        return np.bitwise_xor.reduce(terms, axis=0)

    for i in range(r):
        # image of generator i as a function of the current parameters
        sel = S[:, i * n:(i + 1) * n].copy()
        c = basis.express(gens[i])
        if c is None:
            k = len(basis)
            basis.add(gens[i])
            Y[k] = sel
            queue.append(k)
        else:
            constrain(sel ^ combo(c))
        while queue:
            k = queue.pop(0)
            bk = basis.B[k]
            for A, An in zip(actsM, actsN):
                v = matmul(F, bk[None, :], A)[0]
                img = matmul(F, Y[k], An)
                c = basis.express(v)
                if c is None:
                    j = len(basis)
                    basis.add(v)
                    Y[j] = img
                    queue.append(j)
                else:
                    constrain(img ^ combo(c))
                if S.shape[0] == 0:
                    return np.zeros((0, m, n), dtype=np.uint8)
    if len(basis) != m:
        raise ValueError("generators do not generate the module")
    h = S.shape[0]
    Binv = basis.inverse_of_basis()
    Phi = np.ascontiguousarray(Y.transpose(1, 0, 2))  # (h, m, n) in spin basis
    flat = np.ascontiguousarray(Phi.transpose(1, 0, 2).reshape(m, h * n))
    X = matmul(F, Binv, flat).reshape(m, h, n).transpose(1, 0, 2)
    return np.ascontiguousarray(X)


def random_combination(F: FieldSpec, basis: np.ndarray, rng: random.Random) -> np.ndarray:
    coeffs = np.array([rng.randrange(F.size) for _ in range(basis.shape[0])], dtype=np.uint8)
    if not coeffs.any() and basis.shape[0]:
        coeffs[rng.randrange(basis.shape[0])] = 1
    flat = basis.reshape(basis.shape[0], -1)
    return matmul(F, coeffs[None, :], flat)[0].reshape(basis.shape[1:])


def find_isomorphism(F: FieldSpec, actsM, actsN, dimM=None, dimN=None, rng=None,
                     tries: int = 24) -> np.ndarray | None:
    """An invertible intertwiner M -> N, searched among random elements of Hom(M, N)."""
    m, n = dim_of(actsM, dimM), dim_of(actsN, dimN)
    if m != n:
        return None
    if m == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    H = hom_space(F, actsM, actsN, m, n)
    if H.shape[0] == 0:
        return None
    rng = rng or make_rng()
    for k in range(H.shape[0]):
        if gf2.rank(F, H[k]) == m:
            return H[k]
    for _ in range(tries):
        X = random_combination(F, H, rng)
        if gf2.rank(F, X) == m:
            return X
    return None


# ---------------------------------------------------------------- minimal polynomials

def krylov_poly(F: FieldSpec, v: np.ndarray, A: np.ndarray) -> tuple:
    """Monic polynomial p of least degree with v p(A) = 0."""
    n = v.shape[0]
    basis = IncrementalBasis(F, n, capacity=n + 1)
    w = v.copy()
    while True:
        c = basis.express(w)
        if c is not None:
            # w = A^k v = sum c_i A^i v  ->  x^k + sum c_i x^i
            return tuple(int(x) for x in c) + (1,)
        basis.add(w)
        w = matmul(F, w[None, :], A)[0]


def algebra_minpoly(F: FieldSpec, a: np.ndarray, one: np.ndarray) -> tuple:
    """Minimal polynomial of a matrix in the algebra with identity ``one``."""
    return _flat_minpoly(F, a, one)


def _flat_minpoly(F: FieldSpec, a: np.ndarray, one: np.ndarray) -> tuple:
    n2 = a.size
    basis = IncrementalBasis(F, n2, capacity=min(n2, a.shape[0] + 1) + 1)
    w = one.copy()
    while True:
        c = basis.express(w.reshape(-1))
        if c is not None:
            return tuple(int(x) for x in c) + (1,)
        basis.add(w.reshape(-1))
        w = matmul(F, w, a)


def minpoly(F: FieldSpec, A: np.ndarray) -> tuple:
    """Minimal polynomial of A, as the lcm of Krylov polynomials of unit vectors."""
    n = A.shape[0]
    result: tuple = (1,)
    span = IncrementalBasis(F, n)
    I = gf2.identity(n)
    for j in range(n):
        if len(span) == n:
            break
        if span.express(I[j]) is not None:
            continue
        p = krylov_poly(F, I[j], A)
        g = pgcd(F, result, p)
        result = monic(F, pdivmod(F, pmul(F, result, p), g)[0])
        w = I[j].copy()
        for _ in range(len(p) - 1):
            span.add(w)
            w = matmul(F, w[None, :], A)[0]
    return result


# ---------------------------------------------------------------- meataxe

class _ElementPool:
    """Random algebra elements in the Holt-Rees style: sums over a growing pool of products."""

    def __init__(self, F: FieldSpec, acts: Sequence[np.ndarray], rng: random.Random, n: int):
        self.F, self.rng, self.n = F, rng, n
        self.pool = [np.ascontiguousarray(a) for a in acts] or [gf2.identity(n)]

    def next(self) -> np.ndarray:
        F, rng = self.F, self.rng
        if len(self.pool) < 24:
            a, b = rng.choice(self.pool), rng.choice(self.pool)
            self.pool.append(matmul(F, a, b))
        k = min(len(self.pool), 6)
        picks = rng.sample(range(len(self.pool)), k)
        theta = np.zeros((self.n, self.n), dtype=np.uint8)
        for i in picks:
            c = rng.randrange(1, F.size)
            theta ^= F.mul_table[c][self.pool[i]] if c != 1 else self.pool[i]
        return theta


def find_submodule(F: FieldSpec, acts: Sequence[np.ndarray], n: int | None = None,
                   rng: random.Random | None = None, max_tries: int = 400,
                   max_factor_degree: int = 12) -> np.ndarray | None:
    """A proper nonzero invariant subspace, or None when the module is irreducible over F.

    Irreducibility is certified by Norton's test on a factor f of the Krylov
    polynomial of a random element with nullity(f(theta)) = deg f.
    """
    n = dim_of(acts, n)
    if n <= 1:
        return None
    rng = rng or make_rng()
    # cheap first attempt: a common fixed vector of all actions
    pool = _ElementPool(F, acts, rng, n)
    actsT = [np.ascontiguousarray(a.T) for a in acts]
    for _ in range(max_tries):
        theta = pool.next()
        v0 = np.array([rng.randrange(F.size) for _ in range(n)], dtype=np.uint8)
        if not v0.any():
            v0[0] = 1
        p = krylov_poly(F, v0, theta)
        facs = sorted(factor(F, p, seed=rng.randrange(1 << 30)), key=len)
        for f in facs:
            d = len(f) - 1
            if d > max_factor_degree:
                break
            ft = evaluate_matrix(F, f, theta)
            N = gf2.left_nullspace(F, ft)
            if N.shape[0] == 0:
                continue
            U = gf2.spin(F, N[:1], acts)
            if U.shape[0] < n:
                return U
            if N.shape[0] == d:
                W0 = gf2.nullspace(F, ft)
                W = gf2.spin(F, W0[:1], actsT)
                if W.shape[0] < n:
                    return gf2.nullspace(F, W)
                return None
    raise MeataxeFailure(f"no decision after {max_tries} random elements (dim {n})")


def composition_factors(F: FieldSpec, acts: Sequence[np.ndarray], n: int | None = None,
                        rng: random.Random | None = None) -> list[list[np.ndarray]]:
    """Action lists of the composition factors (bottom of a composition series first)."""
    n = dim_of(acts, n)
    if n == 0:
        return []
    rng = rng or make_rng()
    stack = [(list(acts), n)]
    out: list[list[np.ndarray]] = []
    # depth-first, submodule before quotient, so factors come out bottom-up
    while stack:
        a, d = stack.pop()
        U = find_submodule(F, a, d, rng)
        if U is None:
            out.append(a)
            continue
        _, sub = sub_actions(F, U, a)
        _, quo = quotient_actions(F, U, a, d)
        stack.append((quo, d - U.shape[0]))
        stack.append((sub, U.shape[0]))
    return out


def is_irreducible(F: FieldSpec, acts: Sequence[np.ndarray], n: int | None = None,
                   rng: random.Random | None = None) -> bool:
    return find_submodule(F, acts, n, rng) is None


# ---------------------------------------------------------------- endomorphism algebras

class MatrixAlgebra:
    """A unital subalgebra of n x n matrices given by a basis, with a faithful coordinate model.

    Elements are represented by their coordinates; the right regular
    representation gives each basis element as a d x d matrix, which is
    all the structure the local test and idempotent splitting need.
    """

    def __init__(self, F: FieldSpec, basis: np.ndarray, module_gens: np.ndarray | None = None):
        self.F = F
        self.basis = np.ascontiguousarray(basis)
        self.d, self.n = basis.shape[0], basis.shape[1]
        # a matrix in the algebra is determined by the images of module generators
        G = module_gens if module_gens is not None else gf2.identity(self.n)
        self.gens = G
        self._vec = np.stack([matmul(F, G, b).reshape(-1) for b in self.basis]) if self.d else \
            np.zeros((0, G.shape[0] * self.n), dtype=np.uint8)
        self._E, self._piv, rk = gf2.rref(F, self._vec) if self.d else (self._vec, [], 0)
        if rk != self.d:
            raise ValueError("algebra basis is linearly dependent")
        self._coord_solver = IncrementalBasis(F, self._vec.shape[1], capacity=self.d + 1)
        for row in self._vec:
            self._coord_solver.add(row)
        self._regular: list[np.ndarray] | None = None

    def coords(self, X: np.ndarray) -> np.ndarray:
        v = matmul(self.F, self.gens, X).reshape(-1)
        c = self._coord_solver.express(v)
        if c is None:
            raise ValueError("matrix is not in the algebra")
        return c

    def element(self, c: np.ndarray) -> np.ndarray:
        flat = self.basis.reshape(self.d, -1)
        return matmul(self.F, c[None, :], flat)[0].reshape(self.n, self.n)

    @property
    def one(self) -> np.ndarray:
        return self.coords(gf2.identity(self.n))

    def regular(self) -> list[np.ndarray]:
        """R_j with (coords of x) R_j = coords of x * b_j."""
        if self._regular is None:
            F, d = self.F, self.d
            r = self.gens.shape[0]
            V = self._vec.reshape(d * r, self.n)
            out = []
            for b in self.basis:
                W = matmul(F, V, b).reshape(d, r * self.n)
                out.append(np.stack([self._coord_solver.express(w) for w in W]))
            self._regular = out
        return self._regular

    def regular_of(self, c: np.ndarray) -> np.ndarray:
        R = np.stack(self.regular())
        flat = R.reshape(self.d, -1)
        return matmul(self.F, c[None, :], flat)[0].reshape(self.d, self.d)

    def is_local(self, rng: random.Random | None = None) -> bool:
        """Local iff the regular module has a single composition factor type S with dim S = dim End(S)."""
        F, d = self.F, self.d
        if d == 1:
            return True
        acts = self.regular()
        rng = rng or make_rng()
        facs = composition_factors(F, acts, d, rng)
        first = facs[0]
        s = first[0].shape[0]
        if any(f[0].shape[0] != s for f in facs):
            return False
        endo = hom_space(F, first, first, s, s).shape[0]
        if endo != s:
            return False
        return all(hom_space(F, first, f, s, s).shape[0] > 0 for f in facs[1:])

    def split_idempotent(self, rng: random.Random | None = None, tries: int = 200) -> np.ndarray | None:
        """Coordinates of an idempotent e different from 0 and 1, found by Fitting decomposition."""
        F = self.F
        rng = rng or make_rng()
        one = self.one
        for _ in range(tries):
            c = np.array([rng.randrange(F.size) for _ in range(self.d)], dtype=np.uint8)
            Ra = self.regular_of(c)
            p = krylov_poly(F, one, Ra)  # faithful: one generates the regular module
            facs = factor(F, p, seed=rng.randrange(1 << 30))
            if len(facs) < 2:
                continue
            (f1, k1), *_ = facs.items()
            q1 = (1,)
            for _ in range(k1):
                q1 = pmul(F, q1, f1)
            g = pdivmod(F, p, q1)[0]
            u = _bezout_coeff(F, g, q1)  # u g = 1 mod q1
            epoly = pdivmod(F, pmul(F, u, g), p)[1]
            e = _apply_poly(F, epoly, one, Ra)
            return e
        return None


def _bezout_coeff(F: FieldSpec, g: tuple, m: tuple) -> tuple:
    """u with u g = 1 modulo m (g, m coprime)."""
    r0, r1 = m, pdivmod(F, g, m)[1]
    s0, s1 = (), (1,)
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, padd(s0, pmul(F, q, s1))
    inv = F.inv(r0[0])
    return trim([F.mul(inv, a) for a in s0]) if len(r0) == 1 else ()


def _apply_poly(F: FieldSpec, p: tuple, v: np.ndarray, R: np.ndarray) -> np.ndarray:
    """v p(R) by Horner."""
    acc = np.zeros_like(v)
    for c in reversed(p):
        acc = matmul(F, acc[None, :], R)[0]
        if c:
            acc ^= F.mul_table[c][v]
    return acc
