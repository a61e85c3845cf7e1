"""End-to-end computations shared by the command line and the acceptance suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import gf2
from .groups import (FiniteGroup, FusionCase, GroupError, SylowDihedralFrame, align_frames, construct, diagonal,
                     involution_fusion, sylow2_dihedral)
from .repmod import algebra
from .repmod.brauer import BrauerAudit, brauer_audit
from .repmod.meataxe import principal_block_simples
from .repmod.module import GModule, borel_subgroup, perm_module
from .repmod.summands import ScottModule, scott
from .repmod.transport import TransportResult, transport_simple


class FusionMismatch(GroupError):
    pass


@dataclass
class ProductSetup:
    group: FiniteGroup
    left: FiniteGroup
    right: FiniteGroup
    frames: tuple[SylowDihedralFrame, SylowDihedralFrame]
    fusion: tuple[FusionCase, FusionCase]
    delta: FiniteGroup


def product_setup(G: FiniteGroup | str) -> ProductSetup:
    """Frames on both factors, aligned so that s <-> s', t <-> t' respects fusion, and the diagonal."""
    if isinstance(G, str):
        G = construct(G)
    if not G.factors:
        raise GroupError(f"{G.name} is not a direct product")
    G1, G2 = G.factors
    f1, f2 = sylow2_dihedral(G1), sylow2_dihedral(G2)
    c1, c2 = involution_fusion(G1, f1), involution_fusion(G2, f2)
    if c1.label != c2.label:
        raise FusionMismatch(f"{c1.label.value} vs {c2.label.value}")
    f2 = align_frames(G1, f1, G2, f2)
    return ProductSetup(G, G1, G2, (f1, f2), (c1, c2), diagonal(G, f1, f2))


def diagonal_scott(setup: ProductSetup, rng: random.Random | None = None) -> ScottModule:
    return scott(setup.group, setup.delta, gf2.GF2, rng)


def resolve_subgroup(G: FiniteGroup, selector: str) -> FiniteGroup:
    """borel | sylow | explicit generators in cycle notation separated by ';'."""
    if selector == "borel":
        return borel_subgroup(G)
    if selector == "sylow":
        if G.factors:
            from .repmod.summands import sylow2_subgroup
            return sylow2_subgroup(G)
        return sylow2_dihedral(G, allow_klein=True).P
    from .groups import Permutation
    gens = [Permutation.parse(G.domain_size, part) for part in selector.split(";") if part.strip()]
    for g in gens:
        if g not in G:
            from .groups import ElementNotInGroup
            raise ElementNotInGroup(f"{g} not in {G.name}")
    return FiniteGroup(G.domain_size, gens or [G.identity], "H")


def sylow_scott(G: FiniteGroup, rng: random.Random | None = None) -> ScottModule:
    """Sc(G, P) for a Sylow 2-subgroup P, cut out of the permutation module on G/P."""
    P = resolve_subgroup(G, "sylow")
    return scott(G, P, gf2.GF2, rng)


def audit_group(G: FiniteGroup, rng: random.Random | None = None) -> tuple[ScottModule, BrauerAudit]:
    if G.factors:
        setup = product_setup(G)
        Sc = diagonal_scott(setup, rng)
        return Sc, brauer_audit(Sc, P=setup.delta, rng=rng)
    frame = sylow2_dihedral(G)
    Sc = scott(G, frame.P, gf2.GF2, rng)
    return Sc, brauer_audit(Sc, frame, rng=rng)


def b0_simples(G: FiniteGroup, rng: random.Random | None = None) -> list[GModule]:
    """Simple modules of the principal block, read off the composition factors of k_P induced to G."""
    rng = rng or algebra.make_rng()
    P = resolve_subgroup(G, "sylow")
    labels, lib = principal_block_simples(G, perm_module(G, P, gf2.GF2), rng)
    return [lib.get(l) for l in sorted(set(labels), key=lambda l: (lib.dim(l), l))]


@dataclass
class TransportSummary:
    setup: ProductSetup
    results: list[tuple[str, TransportResult]]

    @property
    def verdict(self) -> str:
        return "morita" if all(r.simple for _, r in self.results) else "stable-only"

    @property
    def contract_ok(self) -> bool:
        """Every image has exactly one non-projective summand."""
        return all(r.core_indecomposable for _, r in self.results)


def transport_all(G: FiniteGroup | str, rng: random.Random | None = None) -> TransportSummary:
    rng = rng or algebra.make_rng()
    setup = product_setup(G)
    Sc = diagonal_scott(setup, rng)
    out = [(S.name, transport_simple(Sc, S, rng)) for S in b0_simples(setup.left, rng)]
    return TransportSummary(setup, out)
