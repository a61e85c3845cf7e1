"""Permutation groups: dihedral 2-groups, PSL2(q), PGL2(q), alternating and symmetric groups.

Permutations act on the right: ``x^(gh) = (x^g)^h``, so ``(g * h)[i] == h[g[i]]``.
Groups are small enough (at most a few times 10^4 elements) that the element
set is materialised on demand and most queries filter it directly.
"""

from __future__ import annotations

import enum
import re
import threading
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .gfq import MAX_Q, odd_field, prime_power

__all__ = [
    "Permutation", "GroupSpec", "FiniteGroup", "SylowDihedralFrame", "FusionCase", "FusionLabel",
    "construct", "parse_spec", "dihedral", "psl2", "pgl2", "alt", "sym", "product", "sylow2_dihedral", "centralizer", "normalizer",
    "involution_fusion", "direct_product", "diagonal", "align_frames",
    "frobenius_sylow_witness", "WitnessReport", "two_part", "reflection_fused_to_z",
    "pair", "split", "subgroups_of", "subgroup_classes", "frame_isomorphism",
    "GroupError", "UnsupportedParameter", "DegenerateSpec", "NotDihedralSylow",
    "ElementNotInGroup", "InconsistentCount", "FrameMismatch", "DefectTooSmall",
    "CapExceeded", "SpecParseError",
]

MAX_ORDER = 10**6
FILTER_BOUND = 10**5


class GroupError(Exception):
    pass


class UnsupportedParameter(GroupError):
    pass


class DegenerateSpec(GroupError):
    pass


class NotDihedralSylow(GroupError):
    pass


class ElementNotInGroup(GroupError):
    pass


class InconsistentCount(GroupError):
    pass


class FrameMismatch(GroupError):
    pass


class DefectTooSmall(GroupError):
    pass


class CapExceeded(GroupError):
    pass


class SpecParseError(GroupError, ValueError):
    pass


def two_part(n: int) -> int:
    return n & -n


# ---------------------------------------------------------------- permutations

class Permutation(tuple):
    """A bijection of {0, ..., d-1} stored as its image sequence."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(d))

    @classmethod
    def from_cycles(cls, d: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        img = list(range(d))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @classmethod
    def parse(cls, d: int, text: str) -> "Permutation":
        cycles = [[int(x) for x in c.split(",") if x.strip()] for c in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(d, cycles)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Permutation") -> "Permutation":  # type: ignore[override]
        return Permutation([other[i] for i in self])

    __rmul__ = None  # type: ignore[assignment]

    def __add__(self, other):  # type: ignore[override]
        raise TypeError("permutations do not concatenate")

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, x: "Permutation") -> "Permutation":
        """self^x = x^-1 self x."""
        return x.inverse() * self * x

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if not seen[i]:
                c = [i]
                seen[i] = True
                j = self[i]
                while j != i:
                    c.append(j)
                    seen[j] = True
                    j = self[j]
                if len(c) > 1:
                    out.append(tuple(c))
        return out

    def fixed_points(self) -> int:
        return sum(1 for i, x in enumerate(self) if i == x)

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"

    def __repr__(self) -> str:
        return f"Permutation({str(self)})"


# ---------------------------------------------------------------- specs

@dataclass(frozen=True)
class GroupSpec:
    family: str  # dihedral | psl2 | pgl2 | alt | sym | product
    params: tuple

    def __str__(self) -> str:
        f, p = self.family, self.params
        if f == "product":
            return f"prod({p[0]},{p[1]})"
        if f == "dihedral":
            return f"d:{2 ** p[0]}"
        tag = {"dihedral": "d", "psl2": "psl2", "pgl2": "pgl2", "alt": "a", "sym": "s"}[f]
        return f"{tag}:{p[0]}"

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        return parse_spec(text)


def parse_spec(text: str) -> GroupSpec:
    s = text.strip().replace(" ", "")
    if s.startswith("prod(") and s.endswith(")"):
        inner = s[5:-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return GroupSpec("product", (parse_spec(inner[:i]), parse_spec(inner[i + 1:])))
        raise SpecParseError(f"malformed product spec {text!r}")
    m = re.fullmatch(r"(d|psl2|pgl2|a|s):(\d+)", s)
    if not m:
        raise SpecParseError(f"cannot parse group spec {text!r}")
    fam = {"d": "dihedral", "psl2": "psl2", "pgl2": "pgl2", "a": "alt", "s": "sym"}[m.group(1)]
    val = int(m.group(2))
    if fam == "dihedral":
        # the text form d:<N> gives the order N = 2^n
        if val < 1 or val & (val - 1):
            raise SpecParseError(f"dihedral order {val} is not a power of two")
        val = val.bit_length() - 1
    return GroupSpec(fam, (val,))


def dihedral(n: int) -> GroupSpec:
    return GroupSpec("dihedral", (n,))


def psl2(q: int) -> GroupSpec:
    return GroupSpec("psl2", (q,))


def pgl2(q: int) -> GroupSpec:
    return GroupSpec("pgl2", (q,))


def alt(m: int) -> GroupSpec:
    return GroupSpec("alt", (m,))


def sym(m: int) -> GroupSpec:
    return GroupSpec("sym", (m,))


def product(a: GroupSpec, b: GroupSpec) -> GroupSpec:
    return GroupSpec("product", (a, b))


# ---------------------------------------------------------------- groups

class FiniteGroup:
    """A permutation group with lazily cached elements and conjugacy classes."""

    def __init__(self, domain_size: int, generators: Sequence[Permutation], name: str = "",
                 spec: GroupSpec | None = None, factors: tuple | None = None):
        gens = [Permutation(g) for g in generators]
        for g in gens:
            if len(g) != domain_size:
                raise ValueError("generator degree does not match domain size")
        self.domain_size = domain_size
        self.generators = tuple(g for g in gens if not g.is_identity())
        self.name = name or (str(spec) if spec else "group")
        self.spec = spec
        self.factors = factors  # (G1, G2) for direct products
        self._lock = threading.RLock()
        self._elements: frozenset | None = None
        self._classes: list | None = None
        self._class_index: dict | None = None

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} on {self.domain_size} points>"

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.domain_size)

    @property
    def elements(self) -> frozenset:
        with self._lock:
            if self._elements is None:
                parent: dict[Permutation, tuple] = {self.identity: (None, -1)}
                queue = deque([self.identity])
                while queue:
                    x = queue.popleft()
                    for k, g in enumerate(self.generators):
                        y = x * g
                        if y not in parent:
                            parent[y] = (x, k)
                            if len(parent) > MAX_ORDER:
                                raise CapExceeded(f"{self.name} exceeds {MAX_ORDER} elements")
                            queue.append(y)
                self._parent = parent
                self._elements = frozenset(parent)
            return self._elements

    def word(self, g: Permutation) -> list[int]:
        """Generator indices w with g = gens[w[0]] * gens[w[1]] * ... (a shortest word)."""
        g = Permutation(g)
        if g not in self.elements:
            raise ElementNotInGroup(f"{g} not in {self.name}")
        if not hasattr(self, "_parent"):
            # element set was supplied directly; rebuild the BFS tree
            self._elements = None
            _ = self.elements
        out = []
        x = g
        while True:
            prev, k = self._parent[x]
            if prev is None:
                break
            out.append(k)
            x = prev
        return out[::-1]

    @cached_property
    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g) -> bool:
        return Permutation(g) in self.elements

    def __iter__(self):
        return iter(self.sorted_elements)

    def subgroup(self, generators: Iterable[Permutation], name: str = "") -> "FiniteGroup":
        gens = list(generators)
        for g in gens:
            if g not in self:
                raise ElementNotInGroup(f"{g} not in {self.name}")
        return FiniteGroup(self.domain_size, gens or [self.identity], name or f"sub({self.name})")

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return all(g in other for g in self.generators)

    # conjugacy ------------------------------------------------------------
    def _compute_classes(self) -> None:
        with self._lock:
            if self._classes is not None:
                return
            index: dict[Permutation, int] = {}
            raw = []
            gens = list(self.generators)
            inv = [g.inverse() for g in gens]
            for x in self.sorted_elements:
                if x in index:
                    continue
                cls = {x}
                queue = deque([x])
                while queue:
                    y = queue.popleft()
                    for g, gi in zip(gens, inv):
                        c = gi * y * g
                        if c not in cls:
                            cls.add(c)
                            queue.append(c)
                rep = min(cls)
                raw.append((rep.order(), rep, cls))
                for c in cls:
                    index[c] = -1
            raw.sort(key=lambda r: (r[0], r[1]))
            self._classes = [(rep, len(cls)) for _, rep, cls in raw]
            self._class_members = [sorted(cls) for _, _, cls in raw]
            self._class_index = {c: i for i, (_, _, cls) in enumerate(raw) for c in cls}

    @property
    def classes(self) -> list[tuple[Permutation, int]]:
        """Conjugacy classes as (representative, size), sorted by element order then representative."""
        self._compute_classes()
        return self._classes  # type: ignore[return-value]

    def class_members(self, i: int) -> list[Permutation]:
        self._compute_classes()
        return self._class_members[i]

    def class_of(self, g: Permutation) -> int:
        self._compute_classes()
        try:
            return self._class_index[Permutation(g)]  # type: ignore[index]
        except KeyError:
            raise ElementNotInGroup(f"{g} not in {self.name}") from None

    def are_conjugate(self, g: Permutation, h: Permutation) -> bool:
        return self.class_of(g) == self.class_of(h)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for rep, _ in self.classes:
            o = rep.order()
            e = e * o // gcd(e, o)
        return e

    def sylow2_order(self) -> int:
        return two_part(self.order)

    # orbits on the domain ---------------------------------------------------
    def orbits(self) -> list[list[int]]:
        seen = [False] * self.domain_size
        out = []
        for i in range(self.domain_size):
            if seen[i]:
                continue
            orb = [i]
            seen[i] = True
            k = 0
            while k < len(orb):
                x = orb[k]
                k += 1
                for g in self.generators:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
            out.append(sorted(orb))
        return out

    def stabilizer(self, point: int) -> "FiniteGroup":
        return FiniteGroup(self.domain_size,
                           [g for g in self.sorted_elements if g[point] == point] or [self.identity],
                           f"Stab_{self.name}({point})")


# ---------------------------------------------------------------- constructions

def _mobius(F, a: int, b: int, c: int, d: int) -> Permutation:
    """x -> (a x + b)/(c x + d) on the projective line; point 0 is infinity, point x+1 is x."""
    q = F.q
    img = [0] * (q + 1)
    img[0] = 0 if c == 0 else 1 + F.mul(a, int(F.inv[c]))
    for x in range(q):
        num = F.add(F.mul(a, x), b)
        den = F.add(F.mul(c, x), d)
        img[x + 1] = 0 if den == 0 else 1 + F.mul(num, int(F.inv[den]))
    return Permutation(img)


def _linear_gens(q: int, projective_general: bool, field_q: int | None = None) -> list[Permutation]:
    F = odd_field(field_q or q)
    w = odd_field(q).primitive
    if field_q:
        # coefficients taken in the subfield GF(q) of GF(field_q); GF(p) suffices for prime q
        pk = prime_power(q)
        if pk[1] != 1:
            raise UnsupportedParameter("subfield generators only for prime q")
        w = next(g for g in range(2, q) if all(pow(g, (q - 1) // r, q) != 1 for r in _prime_factors(q - 1))) if q > 2 else 1
    one, zero = 1, 0
    minus_one = int(F.neg[1])
    gens = [_mobius(F, one, one, zero, one)]
    gens.append(_mobius(F, w if projective_general else F.mul(w, w), zero, zero, one))
    gens.append(_mobius(F, zero, minus_one, one, zero))
    return gens


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _check_q(q: int) -> None:
    pk = prime_power(q)
    if pk is None:
        raise UnsupportedParameter(f"q = {q} is not a prime power")
    if pk[0] == 2:
        raise UnsupportedParameter(f"q = {q} is even")
    if q > 81:
        raise UnsupportedParameter(f"q = {q} exceeds the supported bound 81")


def construct(spec: GroupSpec | str) -> FiniteGroup:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    fam, (p, *_) = spec.family, spec.params
    if fam == "dihedral":
        n = p
        if n < 2:
            raise DegenerateSpec(f"dihedral group needs n >= 2, got {n}")
        if n == 2:
            # the Klein four-group has no faithful action on 2 points; use its regular action
            gens = [Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])]
            return FiniteGroup(4, gens, spec=spec)
        m = 2 ** (n - 1)
        rot = Permutation([(i + 1) % m for i in range(m)])
        ref = Permutation([(-i) % m for i in range(m)])
        return FiniteGroup(m, [rot, ref], spec=spec)
    if fam in ("psl2", "pgl2"):
        _check_q(p)
        return FiniteGroup(p + 1, _linear_gens(p, fam == "pgl2"), spec=spec)
    if fam == "sym":
        m = p
        if m < 1:
            raise DegenerateSpec("symmetric group needs m >= 1")
        if m < 2:
            return FiniteGroup(1, [Permutation([0])], spec=spec)
        gens = [Permutation.from_cycles(m, [(0, 1)]), Permutation.from_cycles(m, [tuple(range(m))])]
        return FiniteGroup(m, gens, spec=spec)
    if fam == "alt":
        m = p
        if m < 1:
            raise DegenerateSpec("alternating group needs m >= 1")
        if m < 3:
            return FiniteGroup(m, [Permutation.identity(m)], spec=spec)
        c3 = Permutation.from_cycles(m, [(0, 1, 2)])
        long = tuple(range(m)) if m % 2 else tuple(range(1, m))
        return FiniteGroup(m, [c3, Permutation.from_cycles(m, [long])], spec=spec)
    if fam == "product":
        return direct_product(construct(spec.params[0]), construct(spec.params[1]), spec=spec)
    raise SpecParseError(f"unknown family {fam}")


def direct_product(G: FiniteGroup, H: FiniteGroup, spec: GroupSpec | None = None) -> FiniteGroup:
    """G x H on the disjoint union of the two domains (G's points first)."""
    d1, d2 = G.domain_size, H.domain_size
    gens = [Permutation(list(g) + list(range(d1, d1 + d2))) for g in G.generators]
    gens += [Permutation(list(range(d1)) + [d1 + x for x in h]) for h in H.generators]
    name = str(spec) if spec else f"{G.name}x{H.name}"
    return FiniteGroup(d1 + d2, gens or [Permutation.identity(d1 + d2)], name, spec=spec, factors=(G, H))


def pair(G: FiniteGroup, g: Permutation, h: Permutation) -> Permutation:
    """The element (g, h) of a direct product G = G1 x G2."""
    d1 = G.factors[0].domain_size
    return Permutation(list(g) + [d1 + x for x in h])


def split(G: FiniteGroup, x: Permutation) -> tuple[Permutation, Permutation]:
    d1 = G.factors[0].domain_size
    return Permutation(x[:d1]), Permutation(y - d1 for y in x[d1:])


# ---------------------------------------------------------------- centralisers

def _filter_ok(G: FiniteGroup, bound: int) -> bool:
    return G.order <= bound


def centralizer(G: FiniteGroup, g: Permutation, bound: int = FILTER_BOUND) -> FiniteGroup:
    g = Permutation(g)
    if g not in G:
        raise ElementNotInGroup(f"{g} not in {G.name}")
    if G.factors and not _filter_ok(G, bound):
        a, b = split(G, g)
        C1, C2 = centralizer(G.factors[0], a, bound), centralizer(G.factors[1], b, bound)
        gens = [pair(G, x, C2.identity) for x in C1.generators] + [pair(G, C1.identity, y) for y in C2.generators]
        return FiniteGroup(G.domain_size, gens or [G.identity], f"C_{G.name}({g})")
    if not _filter_ok(G, bound):
        raise CapExceeded(f"|G| = {G.order} above filtering bound {bound}")
    els = [x for x in G.sorted_elements if g * x == x * g]
    return _from_element_set(G, els, f"C_{G.name}({g})")


def normalizer(G: FiniteGroup, S: FiniteGroup, bound: int = FILTER_BOUND) -> FiniteGroup:
    Sel = S.elements
    if G.factors and not _filter_ok(G, bound):
        raise CapExceeded("normaliser in a large product: not supported by filtering")
    if not _filter_ok(G, bound):
        raise CapExceeded(f"|G| = {G.order} above filtering bound {bound}")
    gens = S.generators
    els = [x for x in G.sorted_elements if all(h.conj(x) in Sel for h in gens)]
    return _from_element_set(G, els, f"N_{G.name}({S.name})")


def _from_element_set(G: FiniteGroup, els: list[Permutation], name: str) -> FiniteGroup:
    """Subgroup with a known element set; picks a small generating set greedily."""
    gens: list[Permutation] = []
    H = FiniteGroup(G.domain_size, [G.identity], name)
    target = len(els)
    for x in els:
        if x not in H.elements:
            gens.append(x)
            H = FiniteGroup(G.domain_size, gens, name)
            if H.order == target:
                break
    H._elements = frozenset(els)  # noqa: SLF001 -- known exactly
    return H


def subgroup_closure(G: FiniteGroup, gens: Iterable[Permutation], name: str = "") -> FiniteGroup:
    gens = list(gens)
    return FiniteGroup(G.domain_size, gens or [G.identity], name or "sub")


# ---------------------------------------------------------------- Sylow frames

@dataclass
class SylowDihedralFrame:
    group: FiniteGroup
    s: Permutation
    t: Permutation
    n: int
    P: FiniteGroup = field(init=False)
    z: Permutation = field(init=False)

    def __post_init__(self) -> None:
        self.P = FiniteGroup(self.group.domain_size, [self.s, self.t], f"P<{self.group.name}>")
        self.z = self.s ** (2 ** (self.n - 2))

    @property
    def st(self) -> Permutation:
        return self.s * self.t

    def check(self) -> bool:
        s, t, n = self.s, self.t, self.n
        return (
            (s ** (2 ** (n - 1))).is_identity()
            and (t * t).is_identity()
            and t * s * t == s.inverse()
            and self.P.order == 2**n
            and all(self.z * x == x * self.z for x in (s, t))
        )

    def involutions(self) -> list[Permutation]:
        refl = [self.s ** i * self.t for i in range(2 ** (self.n - 1))]
        return [self.z] + refl

    def conjugate(self, x: Permutation) -> "SylowDihedralFrame":
        return SylowDihedralFrame(self.group, self.s.conj(x), self.t.conj(x), self.n)


def sylow2_dihedral(G: FiniteGroup, allow_klein: bool = False) -> SylowDihedralFrame:
    """Sylow 2-subgroup of G in the presentation <s, t | s^(2^(n-1)) = t^2 = 1, tst = s^-1>.

    Among all valid pairs the lexicographically least (s, t) is returned.  A
    Klein four Sylow (n = 2) is rejected unless ``allow_klein`` is set.
    """
    full = G.sylow2_order()
    n = full.bit_length() - 1
    if n < 2:
        raise NotDihedralSylow(f"|{G.name}|_2 = {full}: cyclic Sylow 2-subgroup")
    if n == 2 and not allow_klein:
        raise NotDihedralSylow(f"|{G.name}|_2 = 4: Klein-four or cyclic Sylow")
    two_els = {}
    for rep, _ in G.classes:
        o = rep.order()
        if o & (o - 1) == 0:
            two_els[o] = True
    if full in two_els:
        raise NotDihedralSylow(f"{G.name} has a cyclic Sylow 2-subgroup")
    target = 2 ** (n - 1)
    if target not in two_els:
        raise NotDihedralSylow(f"{G.name}: no 2-element of order {target}")
    involutions = [x for x in G.sorted_elements if x.order() == 2]
    for s in G.sorted_elements:
        if s.order() != target:
            continue
        cyc = {s**i for i in range(target)}
        sinv = s.inverse()
        for t in involutions:
            if t not in cyc and t * s * t == sinv:
                frame = SylowDihedralFrame(G, s, t, n)
                if frame.P.order == full:
                    return frame
        if n >= 3:
            break
    raise NotDihedralSylow(f"{G.name}: Sylow 2-subgroup is not dihedral (quaternion or other)")


# ---------------------------------------------------------------- fusion

class FusionLabel(str, enum.Enum):
    CASE1_NILPOTENT = "CASE1_NILPOTENT"
    CASE2_PGL = "CASE2_PGL"
    CASE3_PSL = "CASE3_PSL"


@dataclass(frozen=True)
class FusionCase:
    label: FusionLabel
    involution_class_count: int
    predicted_l: int


_FUSION = {3: (FusionLabel.CASE1_NILPOTENT, 1), 2: (FusionLabel.CASE2_PGL, 2), 1: (FusionLabel.CASE3_PSL, 3)}


def involution_fusion(G: FiniteGroup, frame: SylowDihedralFrame) -> FusionCase:
    """Classify the fusion system by the number of G-classes of involutions in P."""
    count = len({G.class_of(x) for x in frame.involutions()})
    if count not in _FUSION:
        raise InconsistentCount(f"{count} classes of involutions in P")
    label, l = _FUSION[count]
    return FusionCase(label, count, l)


def reflection_fused_to_z(G: FiniteGroup, frame: SylowDihedralFrame) -> dict[str, bool]:
    return {"t": G.are_conjugate(frame.t, frame.z), "st": G.are_conjugate(frame.st, frame.z)}


def align_frames(G1: FiniteGroup, f1: SylowDihedralFrame, G2: FiniteGroup,
                 f2: SylowDihedralFrame) -> SylowDihedralFrame:
    """Re-choose f2's reflection so that s <-> s', t <-> t' identifies the two fusion systems.

    Swapping t' for s't' exchanges the two P-classes of reflections.
    """
    if f1.n != f2.n:
        raise FrameMismatch(f"|s| = {2 ** (f1.n - 1)} vs {2 ** (f2.n - 1)}")
    if reflection_fused_to_z(G1, f1)["t"] != reflection_fused_to_z(G2, f2)["t"]:
        return SylowDihedralFrame(G2, f2.s, f2.s * f2.t, f2.n)
    return f2


def diagonal(G: FiniteGroup, f1: SylowDihedralFrame, f2: SylowDihedralFrame,
             sub: Sequence[Permutation] | None = None) -> FiniteGroup:
    """ΔP inside the direct product G = G1 x G2, generated by (s, s') and (t, t').

    With ``sub`` (words in P given as elements of f1.P), returns ΔQ for the
    subgroup Q generated by those elements, transported to G2 via s -> s', t -> t'.
    """
    if f1.s.order() != f2.s.order():
        raise FrameMismatch(f"orders of s differ: {f1.s.order()} vs {f2.s.order()}")
    iso = frame_isomorphism(f1, f2)
    gens = [f1.s, f1.t] if sub is None else list(sub)
    return FiniteGroup(G.domain_size, [pair(G, x, iso[x]) for x in gens] or [G.identity], "ΔQ")


def frame_isomorphism(f1: SylowDihedralFrame, f2: SylowDihedralFrame) -> dict[Permutation, Permutation]:
    m = 2 ** (f1.n - 1)
    out = {}
    for i in range(m):
        for j in range(2):
            out[f1.s**i * f1.t**j] = f2.s**i * f2.t**j
    return out


def subgroups_of(P: FiniteGroup) -> list[FiniteGroup]:
    """All subgroups of a small 2-generated group (dihedral 2-groups are), sorted by order."""
    found: dict[frozenset, FiniteGroup] = {}
    els = P.sorted_elements
    for i, a in enumerate(els):
        for b in els[i:]:
            H = FiniteGroup(P.domain_size, [a, b], "Q")
            key = H.elements
            if key not in found:
                found[key] = H
    return sorted(found.values(), key=lambda H: (H.order, sorted(H.elements)))


def subgroup_classes(G: FiniteGroup, subs: Sequence[FiniteGroup]) -> list[FiniteGroup]:
    """One representative per G-conjugacy class among ``subs`` (first occurrence kept)."""
    reps: list[FiniteGroup] = []
    covered: set[frozenset] = set()
    gens = G.generators
    for H in subs:
        if H.elements in covered:
            continue
        reps.append(H)
        orbit = {H.elements}
        queue = deque([H.elements])
        while queue:
            S = queue.popleft()
            for g in gens:
                gi = g.inverse()
                T = frozenset(gi * x * g for x in S)
                if T not in orbit:
                    orbit.add(T)
                    queue.append(T)
        covered |= orbit
    return reps


# ---------------------------------------------------------------- Frobenius witness

@dataclass(frozen=True)
class WitnessReport:
    r: int
    m: int
    q: int
    sylow_order: int
    full_two_part: int
    is_sylow: bool
    frobenius_centralises: bool

    @property
    def holds(self) -> bool:
        return self.is_sylow and self.frobenius_centralises


def frobenius_sylow_witness(r: int, m: int) -> WitnessReport:
    """Check that a Sylow 2-subgroup of PSL2(r) is Sylow in PSL2(r^m) and centralised by x -> x^r."""
    if prime_power(r) != (r, 1) or r == 2:
        raise UnsupportedParameter(f"r = {r} is not an odd prime")
    if m % 2 == 0 or m < 1:
        raise UnsupportedParameter(f"m = {m} must be odd")
    q = r**m
    if q > MAX_Q:
        raise UnsupportedParameter(f"r^m = {q} exceeds {MAX_Q}")
    full = two_part(q * (q - 1) * (q + 1) // 2)
    small = two_part(r * (r - 1) * (r + 1) // 2)
    if full < 8 or small < 8:
        raise DefectTooSmall(f"|PSL2({q})|_2 = {full}, |PSL2({r})|_2 = {small}")
    F = odd_field(q)
    H = FiniteGroup(q + 1, _linear_gens(r, False, field_q=q), f"PSL2({r})<PSL2({q})")
    frame = sylow2_dihedral(H)
    frob = Permutation([0] + [1 + F.frobenius(x) for x in range(q)])
    cent = all(x.conj(frob) == x for x in (frame.s, frame.t))
    return WitnessReport(r, m, q, frame.P.order, full, frame.P.order == full, cent)
