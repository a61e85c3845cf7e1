"""Seed-parameterised property checks shared by the unit tests and the acceptance suite.

Each check takes a ``random.Random`` and returns a list of failure messages;
an empty list means the property held.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from dihedral_blocks import gf2
from dihedral_blocks.chars import dixon_table, gendec_build, gendec_verify
from dihedral_blocks.groups import FiniteGroup, centralizer, construct, diagonal, frame_isomorphism, pair, split, \
    subgroups_of
from dihedral_blocks.repmod import (algebra, brauer_quotient, centralizer_of_subgroup, divides_induced_trivial,
                                    is_isomorphic, is_projective, scott, scott_divides, strip_projectives,
                                    tensor_over_group, trivial_module)
from dihedral_blocks.repmod.module import borel_subgroup
from dihedral_blocks.workflows import ProductSetup, diagonal_scott, product_setup

S4 = "prod(s:4,s:4)"
S4S5 = "prod(s:4,s:5)"


@lru_cache(maxsize=None)
def _group(spec: str):
    return construct(spec)


@lru_cache(maxsize=None)
def _setup(spec: str) -> ProductSetup:
    return product_setup(_group(spec))


def _np_seed(rng: random.Random) -> np.random.Generator:
    return np.random.default_rng(rng.getrandbits(32))


def _intertwines(F, X: np.ndarray, A: list, B: list) -> bool:
    return all(np.array_equal(gf2.matmul(F, a, X), gf2.matmul(F, X, b)) for a, b in zip(A, B))


# ---------------------------------------------------------------- linear algebra and characters

def rank_nullity(rng: random.Random, trials: int = 30) -> list[str]:
    out = []
    rs = _np_seed(rng)
    for k in range(trials):
        F = (gf2.GF2, gf2.GF4, gf2.GF16)[k % 3]
        m, n = int(rs.integers(1, 40)), int(rs.integers(1, 40))
        A = gf2.random_matrix(F, m, n, rs)
        K = gf2.nullspace(F, A)
        if gf2.rank(F, A) + K.shape[0] != n or (K.shape[0] and gf2.matmul(F, A, K.T).any()):
            out.append(f"rank-nullity failed for a {m}x{n} matrix over {F}")
    return out


def orthogonality(rng: random.Random) -> list[str]:
    """Row and column orthogonality of Dixon tables (seed-independent by construction)."""
    out = []
    for spec in ("s:4", "psl2:7", "pgl2:5"):
        T = dixon_table(_group(spec))
        if not (T.rows_orthogonal() and T.columns_orthogonal()):
            out.append(f"{spec}: character table not orthogonal")
    return out


def cross_section_orthogonality(rng: random.Random) -> list[str]:
    out = []
    for case, n, q in [("a", 3, None), ("a", 4, None), ("b", 3, None), ("c", 3, 9), ("c", 4, 17), ("d", 3, 7),
                       ("e", 3, 5), ("e", 4, 9), ("f", 3, 3), ("f", 4, 7)]:
        M = gendec_build(case, n, q)
        c = rng.choice([u for u in range(1, M.N) if u % 2])
        if not (M.cross_section_orthogonal() and M.galois(c).cross_section_orthogonal()):
            out.append(f"({case}, n={n}): cross-section orthogonality fails (twist {c})")
    return out


def galois_invariance(rng: random.Random) -> list[str]:
    out = []
    for spec, case, n, q in [("psl2:7", "d", 3, 7), ("pgl2:5", "e", 3, 5), ("pgl2:3", "f", 3, 3)]:
        N = 2 ** (n - 1)
        c = rng.choice([u for u in range(1, N) if u % 2])
        rep = gendec_verify(_group(spec), case, n, q, twist=c)
        if not rep.passed:
            out.append(f"{spec} ({case}) fails under twist {c}: {rep.messages}")
    return out


# ---------------------------------------------------------------- modules

def scott_self_duality(rng: random.Random) -> list[str]:
    out = []
    for spec in ("psl2:7", "pgl2:3", "pgl2:5"):
        G = _group(spec)
        Sc = scott(G, borel_subgroup(G), gf2.GF2, rng)
        if not is_isomorphic(Sc, Sc.dual(), rng):
            out.append(f"Sc({spec}, borel) is not self-dual")
    Sc = diagonal_scott(_setup(S4), rng)
    if not is_isomorphic(Sc, Sc.dual(), rng):
        out.append("Sc(S4 x S4, diagonal D8) is not self-dual")
    return out


def _delta(setup: ProductSetup, Q: FiniteGroup) -> FiniteGroup:
    f1, f2 = setup.frames
    return diagonal(setup.group, f1, f2, sub=list(Q.generators))


def brauer_transitivity(rng: random.Random) -> list[str]:
    """For R normal in Q: the Brauer quotient at Q of M(R) is M(Q), certified by an intertwiner."""
    out = []
    setup = _setup(S4)
    G = setup.group
    M = diagonal_scott(setup, rng)
    subs = subgroups_of(setup.frames[0].P)
    for Q in subs:
        for R in subs:
            if R.order >= Q.order or not R.elements <= Q.elements:
                continue
            if any(x.inverse() * r * x not in R.elements for x in Q.generators for r in R.generators):
                continue
            dQ, dR = _delta(setup, Q), _delta(setup, R)
            C = centralizer_of_subgroup(G, dQ)  # centralises dR too, so it sits in N(dR)
            NR = FiniteGroup(G.domain_size, list(C.generators) + list(brauer_normalizer_gens(G, dR)), "N")
            first = brauer_quotient(M, dR, over=NR).module
            twice = brauer_quotient(first, dQ, over=C).module
            once = brauer_quotient(M, dQ, over=C).module
            if twice.dim != once.dim:
                out.append(f"|R|={R.order}, |Q|={Q.order}: dims {twice.dim} vs {once.dim}")
                continue
            if once.dim == 0:
                continue
            X = algebra.find_isomorphism(once.field, twice.gen_actions, once.gen_actions, twice.dim, once.dim, rng)
            if X is None or gf2.rank(once.field, X) != once.dim or \
                    not _intertwines(once.field, X, twice.gen_actions, once.gen_actions):
                out.append(f"|R|={R.order}, |Q|={Q.order}: no intertwiner")
    return out


def brauer_normalizer_gens(G: FiniteGroup, R: FiniteGroup) -> list:
    from dihedral_blocks.groups import normalizer
    return list(normalizer(G, R).generators)


def diagonal_summand_equivalence(rng: random.Random) -> list[str]:
    """Sc(G', Q) | k (x)_G M  iff  Sc(G x G', diagonal Q) | M, for every Q <= P."""
    out = []
    for spec in (S4, S4S5):
        setup = _setup(spec)
        M = diagonal_scott(setup, rng)
        X = tensor_over_group(M, trivial_module(setup.left))
        for Q in subgroups_of(setup.frames[0].P):
            dQ = _delta(setup, Q)
            Q2 = FiniteGroup(setup.right.domain_size, [split(setup.group, x)[1] for x in dQ.generators], "Q'")
            lhs = scott_divides(X, Q2, rng)
            rhs = divides_induced_trivial(M, dQ)
            if lhs != rhs:
                out.append(f"{spec}, |Q|={Q.order}: {lhs} vs {rhs}")
    return out


def scott_transport(rng: random.Random) -> list[str]:
    """Sc(G, Q) (x)_G M = Sc(G', Q') plus projectives, for Q in {1, <z>, <t>, P} on S4 x S4."""
    out = []
    setup = _setup(S4)
    f1, f2 = setup.frames
    iso = frame_isomorphism(f1, f2)
    M = diagonal_scott(setup, rng)
    for name, gens in [("1", []), ("<z>", [f1.z]), ("<t>", [f1.t]), ("P", [f1.s, f1.t])]:
        Q = FiniteGroup(setup.left.domain_size, gens or [setup.left.identity])
        Q2 = FiniteGroup(setup.right.domain_size, [iso[g] for g in gens] or [setup.right.identity])
        X = tensor_over_group(M, scott(setup.left, Q, gf2.GF2, rng))
        target = scott(setup.right, Q2, gf2.GF2, rng)
        core, proj = strip_projectives(X, rng)
        if is_projective(target):
            ok = not core and scott_divides(X, Q2, rng)
        else:
            ok = len(core) == 1 and is_isomorphic(core[0].module, target, rng)
        if not ok:
            out.append(f"Q = {name}: core dims {[s.module.dim for s in core]}, target dim {target.dim}")
    return out


def brauer_at_reflection(rng: random.Random) -> list[str]:
    """M(diagonal <t>) = Sc(C(t) x C'(t'), diagonal C_P(t)) for M = Sc(S4 x S4, diagonal D8)."""
    setup = _setup(S4)
    G = setup.group
    f1, f2 = setup.frames
    t = f1.t
    C1, C2 = centralizer(setup.left, t), centralizer(setup.right, frame_isomorphism(f1, f2)[t])
    CC = FiniteGroup(G.domain_size, [pair(G, c, C2.identity) for c in C1.generators]
                     + [pair(G, C1.identity, c) for c in C2.generators], "C x C'")
    M = diagonal_scott(setup, rng)
    V = brauer_quotient(M, diagonal(G, f1, f2, sub=[t]), over=CC).module
    W = scott(CC, diagonal(G, f1, f2, sub=[f1.z, t]), gf2.GF2, rng)
    if V.dim != W.dim:
        return [f"dims {V.dim} vs {W.dim}"]
    X = algebra.find_isomorphism(V.field, V.gen_actions, W.gen_actions, V.dim, W.dim, rng)
    if X is None or not _intertwines(V.field, X, V.gen_actions, W.gen_actions):
        return ["no isomorphism"]
    return []


ALL = {
    "orthogonality": orthogonality,
    "rank_nullity": rank_nullity,
    "brauer_transitivity": brauer_transitivity,
    "scott_self_duality": scott_self_duality,
    "diagonal_summand_equivalence": diagonal_summand_equivalence,
    "scott_transport": scott_transport,
    "brauer_at_reflection": brauer_at_reflection,
    "cross_section_orthogonality": cross_section_orthogonality,
    "galois_invariance": galois_invariance,
}
