"""Fixed points, relative traces, Brauer quotients and the Brauer-indecomposability audit."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .. import gf2
from ..gf2 import matmul
from ..groups import (_from_element_set, FiniteGroup, Permutation, SylowDihedralFrame, centralizer, normalizer,
                      subgroup_classes, subgroups_of)
from . import algebra
from .module import GModule, PermModule, fixed_space
from .summands import ScottModule, is_indecomposable


class NotPSubgroup(Exception):
    pass


def _check_2group(Q: FiniteGroup) -> None:
    n = Q.order
    if n & (n - 1):
        raise NotPSubgroup(f"|{Q.name}| = {n} is not a power of 2")


def fixed_points(M: GModule, Q: FiniteGroup) -> np.ndarray:
    """Basis (rref rows) of M^Q."""
    return fixed_space(M.field, [M.action(x) for x in Q.generators], M.dim)


def _right_coset_reps(Q: FiniteGroup, R: FiniteGroup) -> list[Permutation]:
    reps, seen = [], set()
    Rel = list(R.elements)
    for x in Q.sorted_elements:
        if x in seen:
            continue
        reps.append(x)
        seen.update(r * x for r in Rel)
    return reps


def relative_trace(M: GModule, R: FiniteGroup, Q: FiniteGroup) -> np.ndarray:
    """Tr_R^Q(M^R): the image of v -> sum over right cosets Rx of v x."""
    _check_2group(Q)
    F = M.field
    VR = fixed_points(M, R)
    if VR.shape[0] == 0:
        return VR
    T = np.zeros((M.dim, M.dim), dtype=np.uint8)
    for x in _right_coset_reps(Q, R):
        T ^= M.action(x)
    img = matmul(F, VR, T)
    img = img[img.any(axis=1)]
    return gf2.echelon(F, img) if img.shape[0] else img


def maximal_subgroups(Q: FiniteGroup) -> list[FiniteGroup]:
    """Index-2 subgroups (the maximal subgroups of a 2-group)."""
    if Q.order == 1:
        return []
    return [R for R in subgroups_of(Q) if 2 * R.order == Q.order]


@dataclass
class BrauerQuotient:
    module: GModule  # over the normaliser (or the supplied overgroup)
    fixed: np.ndarray  # basis of M^Q
    traces: np.ndarray  # basis of the sum of relative traces


def brauer_quotient(M: GModule, Q: FiniteGroup, over: FiniteGroup | None = None) -> BrauerQuotient:
    """M(Q) = M^Q / sum of Tr_R^Q(M^R) over maximal R < Q, as a module for N_G(Q) (or ``over``)."""
    _check_2group(Q)
    F = M.field
    N = over or normalizer(M.group, Q)
    VQ = fixed_points(M, Q)
    traces = [relative_trace(M, R, Q) for R in maximal_subgroups(Q)]
    traces = [t for t in traces if t.shape[0]]
    T = gf2.echelon(F, np.concatenate(traces)) if traces else np.zeros((0, M.dim), dtype=np.uint8)
    # coordinates inside V^Q (rref basis, so coordinates are the pivot entries)
    piv = gf2._pivots_of(VQ)
    Tc = np.ascontiguousarray(T[:, piv]) if T.shape[0] else np.zeros((0, VQ.shape[0]), dtype=np.uint8)
    acts = []
    for h in N.generators:
        A = M.action(h)
        img = matmul(F, VQ, A)
        acts.append(np.ascontiguousarray(img[:, piv]))
    d = VQ.shape[0]
    _, qacts = algebra.quotient_actions(F, Tc, acts, d) if d else (None, acts)
    dimq = d - Tc.shape[0]
    if not N.generators:
        qacts = []
    return BrauerQuotient(GModule(N, F, qacts, dimq, f"{M.name}({Q.name})"), VQ, T)


def brauer_quotient_perm(Sc: ScottModule, Q: FiniteGroup, over: FiniteGroup | None = None) -> GModule:
    """Brauer quotient of a summand of a permutation module, read off from the idempotent.

    Br_Q(k[X] e) is k[X^Q] Br_Q(e), where Br_Q(e) keeps the rows and columns of
    e indexed by Q-fixed points.
    """
    _check_2group(Q)
    Mp: PermModule = Sc.parent
    F = Mp.field
    N = over or normalizer(Mp.group, Q)
    qperms = [Mp.perm(x) for x in Q.generators]
    pts = [i for i in range(Mp.dim) if all(p[i] == i for p in qperms)]
    pos = {x: k for k, x in enumerate(pts)}
    e = Sc.idempotent
    eQ = np.ascontiguousarray(e[np.ix_(pts, pts)])
    acts = []
    for h in N.generators:
        p = Mp.perm(h)
        A = np.zeros((len(pts), len(pts)), dtype=np.uint8)
        for k, x in enumerate(pts):
            A[k, pos[p[x]]] = 1
        acts.append(A)
    if not pts:
        return GModule(N, F, [np.zeros((0, 0), dtype=np.uint8) for _ in N.generators], 0)
    E, piv, r = gf2.rref(F, eQ)
    if r == 0:
        return GModule(N, F, [np.zeros((0, 0), dtype=np.uint8) for _ in N.generators], 0)
    E = E[:r]
    sub = [np.ascontiguousarray(matmul(F, E, a)[:, piv]) for a in acts]
    return GModule(N, F, sub, r, f"Br_{Q.name}({Sc.name})")


@dataclass
class AuditEntry:
    order: int
    generators: list[str]
    dim: int
    verdict: str  # zero | indecomposable | decomposable
    route_agreement: bool | None = None


@dataclass
class BrauerAudit:
    entries: list[AuditEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.verdict in ("zero", "indecomposable") for e in self.entries)

    def to_json(self) -> list[dict]:
        return [dict(order=e.order, generators=e.generators, dim=e.dim, verdict=e.verdict,
                     route_agreement=e.route_agreement) for e in self.entries]


def _qc(G: FiniteGroup, Q: FiniteGroup) -> FiniteGroup:
    C = centralizer_of_subgroup(G, Q)
    return FiniteGroup(G.domain_size, list(Q.generators) + list(C.generators) or [G.identity], f"QC({Q.name})")


def centralizer_of_subgroup(G: FiniteGroup, Q: FiniteGroup) -> FiniteGroup:
    if len(Q.generators) == 1:
        return centralizer(G, Q.generators[0])
    gens = Q.generators
    els = [g for g in G.sorted_elements if all(g * x == x * g for x in gens)]
    return _from_element_set(G, els, f"C({Q.name})")


def brauer_audit(M: GModule, frame: SylowDihedralFrame | None = None, P: FiniteGroup | None = None,
                 rng: random.Random | None = None, cross_check: bool = True) -> BrauerAudit:
    """Indecomposable-or-zero check of M(Q) restricted to Q C_G(Q), over G-class representatives Q of subgroups of P."""
    rng = rng or algebra.make_rng()
    G = M.group
    P = P if P is not None else frame.P
    reps = subgroup_classes(G, subgroups_of(P))
    audit = BrauerAudit()
    for Q in reps:
        N = normalizer(G, Q)
        if Q.order == 1:
            V = M
            agree = None
        else:
            V = brauer_quotient(M, Q, N).module
            agree = None
            if cross_check and isinstance(M, ScottModule):
                W = brauer_quotient_perm(M, Q, N)
                agree = W.dim == V.dim and (V.dim == 0 or _isomorphic(V, W, rng))
        if V.dim == 0:
            verdict = "zero"
        else:
            K = _qc(G, Q)
            verdict = "indecomposable" if is_indecomposable(V.restrict(K), rng) else "decomposable"
        audit.entries.append(AuditEntry(Q.order, [str(x) for x in Q.generators], V.dim, verdict, agree))
    audit.entries.sort(key=lambda e: (e.order, e.generators))
    return audit


def _isomorphic(V: GModule, W: GModule, rng) -> bool:
    return algebra.find_isomorphism(V.field, V.gen_actions, W.gen_actions, V.dim, W.dim, rng) is not None
