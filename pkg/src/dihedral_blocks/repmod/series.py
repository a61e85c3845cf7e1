"""Radical and socle series, and relative syzygies."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .. import gf2
from ..gf2 import FieldSpec, matmul
from ..groups import FiniteGroup
from . import algebra
from .meataxe import SimpleLibrary, meataxe_chop
from .module import GModule, trivial_module
from .summands import hom, scott


class IncompleteLibrary(Exception):
    pass


@dataclass
class LoewySeries:
    """Layers of simple labels, top first."""

    layers: list[Counter]
    library: SimpleLibrary | None = field(default=None, compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.layers)

    def dims(self) -> list[list[int]]:
        lib = self.library
        return [sorted(lib.dim(k) for k in layer.elements()) for layer in self.layers]

    def as_lists(self) -> list[list[str]]:
        lib = self.library
        key = (lambda s: (lib.dim(s), s)) if lib else (lambda s: s)
        return [sorted(layer.elements(), key=key) for layer in self.layers]

    def total_dim(self) -> int:
        return sum(sum(d) for d in self.dims())

    def __str__(self) -> str:
        return " | ".join("+".join(layer) for layer in self.as_lists())


def _simples_of(M: GModule, rng) -> tuple[GModule, SimpleLibrary, list[str]]:
    ch = meataxe_chop(M, rng=rng)
    Mx = M.extend_field(ch.field)
    return Mx, ch.library, sorted(ch.labels)


def radical(M: GModule, simples: list[GModule]) -> tuple[np.ndarray, Counter]:
    """rad(M) as the common kernel of all maps to the given simples, plus the top multiplicities."""
    F = M.field
    blocks, top = [], Counter()
    for S in simples:
        H = hom(M, S)
        if H.shape[0]:
            top[S.name] = H.shape[0]
            blocks.append(np.concatenate(list(H), axis=1))
    if not blocks:
        return gf2.identity(M.dim), top
    return gf2.left_nullspace(F, np.concatenate(blocks, axis=1)), top


def socle(M: GModule, simples: list[GModule]) -> tuple[np.ndarray, Counter]:
    """soc(M) as the sum of images of all maps from the given simples, plus multiplicities."""
    F = M.field
    imgs, soc = [], Counter()
    for S in simples:
        H = hom(S, M)
        if H.shape[0]:
            soc[S.name] = H.shape[0]
            imgs.extend(H)
    if not imgs:
        return np.zeros((0, M.dim), dtype=np.uint8), soc
    return gf2.echelon(F, np.concatenate(imgs, axis=0)), soc


def loewy_series(M: GModule, rng: random.Random | None = None) -> LoewySeries:
    """Radical series: layer i is rad^(i-1) M / rad^i M, top first."""
    rng = rng or algebra.make_rng()
    Mx, lib, labels = _simples_of(M, rng)
    simples = [lib.get(s) for s in labels]
    layers = []
    cur = Mx
    while cur.dim:
        R, top = radical(cur, simples)
        got = sum(lib.dim(k) * v for k, v in top.items())
        if got != cur.dim - R.shape[0]:
            raise IncompleteLibrary("top of a radical layer is not covered by the library")
        layers.append(top)
        if R.shape[0] == 0:
            break
        cur, _ = cur.submodule(R)
    return LoewySeries(layers, lib)


def socle_series(M: GModule, rng: random.Random | None = None) -> LoewySeries:
    """Socle series, reported top first (the socle itself is the last layer)."""
    rng = rng or algebra.make_rng()
    Mx, lib, labels = _simples_of(M, rng)
    simples = [lib.get(s) for s in labels]
    layers = []
    cur = Mx
    while cur.dim:
        S, soc = socle(cur, simples)
        got = sum(lib.dim(k) * v for k, v in soc.items())
        if got != S.shape[0] or S.shape[0] == 0:
            raise IncompleteLibrary("socle layer is not covered by the library")
        layers.append(soc)
        cur = cur.quotient(S)
    return LoewySeries(layers[::-1], lib)


def dual_series(series: LoewySeries) -> LoewySeries:
    """Reverse the layers and dualise every label."""
    lib = series.library
    layers = [Counter({lib.dual_label(k): v for k, v in layer.items()}) for layer in reversed(series.layers)]
    return LoewySeries(layers, lib)


def relative_syzygy(G: FiniteGroup, Q: FiniteGroup, field: FieldSpec = gf2.GF2,
                    rng: random.Random | None = None) -> GModule:
    """Kernel of the canonical map Sc(G, Q) -> k_G."""
    Sc = scott(G, Q, field, rng)
    H = hom(Sc, trivial_module(G, field))
    K = gf2.left_nullspace(field, H[0])
    if K.shape[0] == 0:
        return GModule(G, field, [np.zeros((0, 0), dtype=np.uint8) for _ in G.generators], 0, "0")
    sub, _ = Sc.submodule(K, f"Omega_{Q.name}(k)")
    return sub
