"""Homomorphisms, endomorphism rings, direct-sum decomposition and Scott modules."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .. import gf2
from ..gf2 import FieldSpec, matmul
from ..groups import FiniteGroup, NotDihedralSylow, sylow2_dihedral
from . import algebra
from .meataxe import CapExceeded, MAX_DIM
from .module import GModule, PermModule, fixed_space, perm_module, trivial_module


def hom(M: GModule, N: GModule) -> np.ndarray:
    """Basis of Hom_G(M, N) as an array of shape (h, dim M, dim N)."""
    _same_group(M, N)
    return algebra.hom_space(M.field, M.gen_actions, N.gen_actions, M.dim, N.dim)


def _same_group(M: GModule, N: GModule) -> None:
    if M.group is not N.group and M.group.generators != N.group.generators:
        raise ValueError("modules for different groups")
    if M.field.e != N.field.e:
        raise gf2.FieldMismatch("modules over different fields")


def end_algebra(M: GModule) -> algebra.MatrixAlgebra:
    basis = hom(M, M)
    gens = algebra.module_generators(M.field, M.gen_actions, M.dim)
    return algebra.MatrixAlgebra(M.field, basis, gens)


def is_indecomposable(M: GModule, rng: random.Random | None = None) -> bool:
    if M.dim == 0:
        return False
    return end_algebra(M).is_local(rng)


def find_isomorphism(M: GModule, N: GModule, rng: random.Random | None = None) -> np.ndarray | None:
    _same_group(M, N)
    return algebra.find_isomorphism(M.field, M.gen_actions, N.gen_actions, M.dim, N.dim, rng)


def is_isomorphic(M: GModule, N: GModule, rng: random.Random | None = None) -> bool:
    return find_isomorphism(M, N, rng) is not None


@dataclass
class Summand:
    """An indecomposable summand X of M: rows of ``basis`` span X, ``proj`` maps M onto X's coordinates."""

    module: GModule
    basis: np.ndarray  # dim X x dim M
    proj: np.ndarray  # dim M x dim X, with basis-coordinates: v e = (v proj) basis

    def idempotent(self) -> np.ndarray:
        return matmul(self.module.field, self.proj, self.basis)


def decompose(M: GModule, rng: random.Random | None = None, max_dim: int = MAX_DIM) -> list[Summand]:
    """Indecomposable summands of M via primitive idempotents of End(M)."""
    if M.dim > max_dim:
        raise CapExceeded(f"dim {M.dim} > {max_dim}")
    rng = rng or algebra.make_rng()
    F = M.field
    if M.dim == 0:
        return []
    pieces = [Summand(M, gf2.identity(M.dim), gf2.identity(M.dim))]
    done: list[Summand] = []
    while pieces:
        X = pieces.pop()
        A = end_algebra(X.module)
        if A.is_local(rng):
            done.append(X)
            continue
        c = A.split_idempotent(rng)
        if c is None:
            raise algebra.MeataxeFailure(f"no idempotent found in a non-local End (dim {A.d})")
        f = A.element(c)
        k = X.module.dim
        for e in (f, f ^ gf2.identity(k)):
            E, piv, r = gf2.rref(F, e)
            E = E[:r]
            sub_acts = [np.ascontiguousarray(matmul(F, E, a)[:, piv]) for a in X.module.gen_actions]
            Y = GModule(M.group, F, sub_acts, r)
            pieces.append(Summand(Y, matmul(F, E, X.basis), matmul(F, X.proj, np.ascontiguousarray(e[:, piv]))))
    done.sort(key=lambda s: (s.module.dim, s.basis.tobytes()))
    return done


def indecomposable_summands(M: GModule, rng: random.Random | None = None) -> list[tuple[GModule, int]]:
    """Isomorphism types of indecomposable summands with multiplicities."""
    rng = rng or algebra.make_rng()
    types: list[list] = []
    for s in decompose(M, rng):
        for t in types:
            if t[0].dim == s.module.dim and is_isomorphic(t[0], s.module, rng):
                t[1] += 1
                break
        else:
            types.append([s.module, 1])
    return [(m, k) for m, k in types]


# ---------------------------------------------------------------- Scott modules

class ScottModule(GModule):
    """Sc(G, H) together with its idempotent in End(k_H induced to G)."""

    def __init__(self, base: GModule, parent: PermModule, summand: Summand, H: FiniteGroup):
        super().__init__(base.group, base.field, base.gen_actions, base.dim, f"Sc({base.group.name},{H.name})")
        self.parent = parent
        self.summand = summand
        self.subgroup = H

    @property
    def idempotent(self) -> np.ndarray:
        return self.summand.idempotent()


class ScottError(Exception):
    pass


def scott_from_perm(Mperm: PermModule, H: FiniteGroup, rng: random.Random | None = None) -> ScottModule:
    rng = rng or algebra.make_rng()
    triv = trivial_module(Mperm.group, Mperm.field)
    hits = []
    for s in decompose(Mperm, rng):
        if hom(s.module, triv).shape[0]:
            hits.append(s)
    if len(hits) != 1:
        raise ScottError(f"{len(hits)} summands map onto the trivial module")
    s = hits[0]
    Sc = ScottModule(s.module, Mperm, s, H)
    if hom(Sc, triv).shape[0] != 1 or hom(triv, Sc).shape[0] != 1:
        raise ScottError("Scott module postcondition failed")
    return Sc


def scott(G: FiniteGroup, H: FiniteGroup, field: FieldSpec = gf2.GF2,
          rng: random.Random | None = None) -> ScottModule:
    """The unique summand of k_H induced to G with a nonzero map to the trivial module."""
    return scott_from_perm(perm_module(G, H, field), H, rng)


# ---------------------------------------------------------------- projectivity

def norm_rank(M: GModule, P: FiniteGroup) -> int:
    acc = np.zeros((M.dim, M.dim), dtype=np.uint8)
    for x in P.sorted_elements:
        acc ^= M.action(x)
    return gf2.rank(M.field, acc)


def is_projective(M: GModule, P: FiniteGroup | None = None) -> bool:
    """Projective iff the restriction to a Sylow 2-subgroup is free: rank(sum_P rho(x)) * |P| = dim M."""
    if M.dim == 0:
        return True
    if P is None:
        P = sylow2_subgroup(M.group)
    if M.dim % P.order:
        return False
    return norm_rank(M, P) * P.order == M.dim


def sylow2_subgroup(G: FiniteGroup) -> FiniteGroup:
    """A Sylow 2-subgroup: the dihedral frame when there is one, else a product of factor Sylows."""
    if G.factors:
        from ..groups import pair  # local to avoid a cycle at import time
        P1, P2 = (sylow2_subgroup(H) for H in G.factors)
        gens = [pair(G, x, P2.identity) for x in P1.generators] + [pair(G, P1.identity, y) for y in P2.generators]
        return FiniteGroup(G.domain_size, gens or [G.identity], f"P({G.name})")
    if G.order % 2:
        return FiniteGroup(G.domain_size, [G.identity], "1")
    try:
        return sylow2_dihedral(G, allow_klein=True).P
    except NotDihedralSylow:
        return _greedy_sylow2(G)


def _greedy_sylow2(G: FiniteGroup) -> FiniteGroup:
    # a non-Sylow 2-subgroup is always properly normalised inside some Sylow, so this never stalls
    full = G.sylow2_order()
    gens: list = []
    P = FiniteGroup(G.domain_size, [G.identity], "P")
    for x in G.sorted_elements:
        if P.order == full:
            break
        o = x.order()
        if o & (o - 1) or x in P:
            continue
        H = FiniteGroup(G.domain_size, gens + [x], "P")
        if H.order & (H.order - 1) == 0:
            gens.append(x)
            P = H
    return FiniteGroup(G.domain_size, gens or [G.identity], f"P({G.name})")


def strip_projectives(M: GModule, rng: random.Random | None = None) -> tuple[list[Summand], list[Summand]]:
    """(non-projective summands, projective summands)."""
    P = sylow2_subgroup(M.group)
    core, proj = [], []
    for s in decompose(M, rng):
        (proj if is_projective(s.module, P) else core).append(s)
    return core, proj


# ---------------------------------------------------------------- summands of k_Q induced to G

def _right_cosets(G: FiniteGroup, Q: FiniteGroup) -> list:
    reps, seen = [], set()
    Qel = list(Q.elements)
    for x in G.sorted_elements:
        if x not in seen:
            reps.append(x)
            seen.update(q * x for q in Qel)
    return reps


def divides_induced_trivial(N: GModule, Q: FiniteGroup) -> bool:
    """Whether the indecomposable N is a summand of k_Q induced to G.

    Maps N -> k_Q^G and back correspond to Q-invariant functionals f and
    Q-fixed vectors v; the composite is sum over cosets Qx of rho(x^-1) f v rho(x).
    End(N) is local, so N splits off iff one of these composites is not nilpotent.
    """
    F = N.field
    d = N.dim
    fs = fixed_space(F, [N.action(q).T for q in Q.generators], d)
    vs = fixed_space(F, [N.action(q) for q in Q.generators], d)
    if not fs.shape[0] or not vs.shape[0]:
        return False
    reps = _right_cosets(N.group, Q)
    A = np.stack([matmul(F, N.action(x.inverse()), np.ascontiguousarray(fs.T)) for x in reps])  # K x d x nf
    B = np.stack([matmul(F, vs, N.action(x)) for x in reps])  # K x nv x d
    for i in range(fs.shape[0]):
        left = np.ascontiguousarray(A[:, :, i].T)
        for j in range(vs.shape[0]):
            T = matmul(F, left, np.ascontiguousarray(B[:, j, :]))
            if gf2.matpow(F, T, d).any():
                return True
    return False


def scott_divides(X: GModule, Q: FiniteGroup, rng: random.Random | None = None) -> bool:
    """Whether Sc(G, Q) is a direct summand of X."""
    triv = trivial_module(X.group, X.field)
    return any(hom(s.module, triv).shape[0] and divides_induced_trivial(s.module, Q)
               for s in decompose(X, rng))
