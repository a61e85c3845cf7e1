"""Composition factors and the registry of simple modules."""

from __future__ import annotations

import random
import threading
import weakref
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .. import gf2
from ..gf2 import FieldSpec
from ..groups import FiniteGroup
from . import algebra
from .module import GModule, fixed_space, trivial_module

MAX_DIM = 10_000


class FieldTooSmall(Exception):
    pass


class CapExceeded(Exception):
    pass


@dataclass
class SimpleEntry:
    label: str
    module: GModule
    fingerprint: tuple


class SimpleLibrary:
    """Append-only registry of pairwise non-isomorphic absolutely irreducible modules."""

    def __init__(self, group: FiniteGroup, field: FieldSpec):
        self.group = group
        self.field = field
        self.entries: list[SimpleEntry] = []
        self._lock = threading.RLock()
        self._duals: dict[str, str] = {}
        self.register(trivial_module(group, field), label="1")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def labels(self) -> list[str]:
        return [e.label for e in self.entries]

    def get(self, label: str) -> GModule:
        for e in self.entries:
            if e.label == label:
                return e.module
        raise KeyError(label)

    def dim(self, label: str) -> int:
        return self.get(label).dim

    def fingerprint(self, S: GModule) -> tuple:
        """Fixed-point dimensions of each odd-order class representative."""
        out = []
        for rep, _ in self.group.classes:
            if rep.order() % 2:
                A = S.action(rep)
                out.append(S.dim - gf2.rank(self.field, A ^ gf2.identity(S.dim)))
        return tuple(out)

    def find(self, S: GModule) -> str | None:
        fp = self.fingerprint(S)
        for e in self.entries:
            if e.module.dim == S.dim and e.fingerprint == fp:
                if algebra.hom_space(self.field, S.gen_actions, e.module.gen_actions, S.dim, S.dim).shape[0]:
                    return e.label
        return None

    def register(self, S: GModule, label: str | None = None) -> str:
        with self._lock:
            if label is None:
                found = self.find(S)
                if found is not None:
                    return found
                same = sum(1 for e in self.entries if e.module.dim == S.dim and e.label != "1")
                label = f"{S.dim}{chr(ord('a') + same)}"
            S = GModule(self.group, self.field, S.gen_actions, S.dim, label)
            self.entries.append(SimpleEntry(label, S, self.fingerprint(S)))
            return label

    def dual_label(self, label: str) -> str:
        with self._lock:
            if label not in self._duals:
                d = self.register(self.get(label).dual())
                self._duals[label] = d
                self._duals[d] = label
            return self._duals[label]


_LIBRARIES: "weakref.WeakKeyDictionary[FiniteGroup, dict[int, SimpleLibrary]]" = weakref.WeakKeyDictionary()
_LIB_LOCK = threading.Lock()


def library_for(G: FiniteGroup, F: FieldSpec) -> SimpleLibrary:
    with _LIB_LOCK:
        libs = _LIBRARIES.setdefault(G, {})
        if F.e not in libs:
            libs[F.e] = SimpleLibrary(G, F)
        return libs[F.e]


@dataclass
class ChopResult:
    labels: Counter
    field: FieldSpec
    library: SimpleLibrary
    factors: list[GModule] = field(default_factory=list)

    def dims(self) -> Counter:
        return Counter(self.library.dim(k) for k in self.labels.elements())

    def sorted_labels(self) -> list[str]:
        return sorted(self.labels.elements(), key=lambda s: (self.library.dim(s), s))


def factors_over(M: GModule, rng: random.Random | None = None) -> list[GModule]:
    """Composition factors irreducible over M's own field (not necessarily absolutely)."""
    acts = algebra.composition_factors(M.field, M.gen_actions, M.dim, rng or algebra.make_rng())
    out = []
    for a in acts:
        d = a[0].shape[0] if a else 1
        out.append(GModule(M.group, M.field, a if a else [], d) if M.group.generators else
                   GModule(M.group, M.field, [], d))
    return out


def endo_degree(S: GModule) -> int:
    return algebra.hom_space(S.field, S.gen_actions, S.gen_actions, S.dim, S.dim).shape[0]


def meataxe_chop(M: GModule, library: SimpleLibrary | None = None,
                 rng: random.Random | None = None, max_dim: int = MAX_DIM) -> ChopResult:
    """Composition factors of M with multiplicity, registered in the simple library.

    If some factor is not absolutely irreducible the module is moved to GF(4)
    or GF(16) and chopped again.
    """
    if M.dim > max_dim:
        raise CapExceeded(f"dim {M.dim} > {max_dim}")
    rng = rng or algebra.make_rng()
    facs = factors_over(M, rng)
    need = 1
    for S in facs:
        d = endo_degree(S)
        need = need * d // np.gcd(need, d)
    if need > 1:
        e = M.field.e * need
        if e not in (2, 4):
            raise FieldTooSmall(f"splitting field GF(2^{e}) not supported")
        M2 = M.extend_field(gf2.get_field(e))
        return meataxe_chop(M2, None, rng, max_dim)
    lib = library or library_for(M.group, M.field)
    labels = Counter(lib.register(S) for S in facs)
    return ChopResult(labels, M.field, lib, facs)


def is_simple(M: GModule, rng: random.Random | None = None) -> bool:
    return algebra.is_irreducible(M.field, M.gen_actions, M.dim, rng)


def is_absolutely_simple(M: GModule, rng: random.Random | None = None) -> bool:
    return is_simple(M, rng) and endo_degree(M) == 1


def in_principal_block(S: GModule) -> bool:
    """Every class sum acts on S as |K| times the identity (the trivial central character)."""
    I = gf2.identity(S.dim)
    G = S.group
    table = S.all_actions()
    for i, (rep, size) in enumerate(G.classes):
        acc = np.zeros((S.dim, S.dim), dtype=np.uint8)
        for g in G.class_members(i):
            acc ^= table[g]
        target = I if size % 2 else np.zeros_like(I)
        if not np.array_equal(acc, target):
            return False
    return True


def principal_block_simples(G: FiniteGroup, M: GModule, rng: random.Random | None = None
                            ) -> tuple[list[str], SimpleLibrary]:
    """Labels of the simples of B0 among the composition factors of M.

    Factors outside the principal block are dropped before any field
    extension, so defect-zero modules needing GF(8) and the like do not matter.
    """
    rng = rng or algebra.make_rng()
    facs = []
    tested: list[tuple[GModule, bool]] = []
    for S in factors_over(M, rng):
        verdict = None
        for T, v in tested:
            if T.dim == S.dim and algebra.hom_space(S.field, S.gen_actions, T.gen_actions, S.dim, T.dim).shape[0]:
                verdict = v
                break
        if verdict is None:
            verdict = in_principal_block(S)
            tested.append((S, verdict))
        if verdict:
            facs.append(S)
    need = 1
    for S in facs:
        d = endo_degree(S)
        need = need * d // np.gcd(need, d)
    F = M.field
    if need > 1:
        e = F.e * need
        if e > 4 or e == 3:
            raise FieldTooSmall(f"splitting field GF(2^{e}) not supported")
        F = gf2.get_field(e)
        facs = [S2 for S in facs for S2 in factors_over(S.extend_field(F), rng)]
    lib = library_for(G, F)
    labels = sorted({lib.register(S) for S in facs}, key=lambda s: (lib.dim(s), s))
    return labels, lib
