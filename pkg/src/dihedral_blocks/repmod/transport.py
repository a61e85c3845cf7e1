"""Tensoring modules across a (G x G')-bimodule: X |-> X (x)_{kG} M."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .. import gf2
from ..gf2 import matmul
from ..groups import FiniteGroup, pair
from . import algebra
from .meataxe import is_absolutely_simple
from .module import GModule
from .summands import Summand, decompose, is_projective, sylow2_subgroup


class SideMismatch(Exception):
    pass


def tensor_over_group(Mbim: GModule, X: GModule) -> GModule:
    """X (x)_{kG} M for M over G x G' (left G-action g.m := m (g^-1, 1)); returns a kG'-module."""
    GG = Mbim.group
    if not GG.factors:
        raise SideMismatch("bimodule must live over a direct product")
    G1, G2 = GG.factors
    if X.group is not G1 and X.group.generators != G1.generators:
        raise SideMismatch("module is not over the left factor")
    F = X.field
    if Mbim.field.e != F.e:
        Mbim = Mbim.extend_field(F)
    m, x = Mbim.dim, X.dim
    Im, Ix = gf2.identity(m), gf2.identity(x)
    rels = []
    for g, A in zip(G1.generators, X.gen_actions):
        B = Mbim.action(pair(GG, g.inverse(), G2.identity))
        rels.append(gf2.kron(F, A, Im) ^ gf2.kron(F, Ix, B))
    R = gf2.echelon(F, np.concatenate(rels)) if rels else np.zeros((0, x * m), dtype=np.uint8)
    acts = [gf2.kron(F, Ix, Mbim.action(pair(GG, G1.identity, h))) for h in G2.generators]
    _, q = algebra.quotient_actions(F, R, acts, x * m)
    return GModule(G2, F, q, x * m - R.shape[0], f"{X.name}(x){Mbim.name}")


@dataclass
class TransportResult:
    module: GModule
    core: list[Summand] = field(default_factory=list)
    projective: list[Summand] = field(default_factory=list)
    simple: bool = False
    core_simple: bool = False
    core_indecomposable: bool = False

    @property
    def core_dims(self) -> list[int]:
        return [s.module.dim for s in self.core]

    @property
    def projective_dims(self) -> list[int]:
        return [s.module.dim for s in self.projective]

    def to_json(self) -> dict:
        return dict(dim=self.module.dim, core_dims=self.core_dims, projective_dims=self.projective_dims,
                    simple=self.simple, core_simple=self.core_simple,
                    core_indecomposable=self.core_indecomposable)


def transport_simple(Mbim: GModule, S: GModule, rng: random.Random | None = None) -> TransportResult:
    """Image of S, split into its non-projective core and projective summands."""
    rng = rng or algebra.make_rng()
    T = tensor_over_group(Mbim, S)
    P = sylow2_subgroup(T.group)
    parts = decompose(T, rng)
    core = [s for s in parts if not is_projective(s.module, P)]
    proj = [s for s in parts if is_projective(s.module, P)]
    res = TransportResult(T, core, proj)
    res.simple = T.dim > 0 and is_absolutely_simple(T, rng)
    res.core_indecomposable = len(core) == 1
    res.core_simple = len(core) == 1 and is_absolutely_simple(core[0].module, rng)
    return res
