"""Group modules over GF(2^e): the GModule type and the standard constructions."""

from __future__ import annotations

import random
from typing import Callable, Sequence

import numpy as np

from .. import gf2
from ..gf2 import FFMatrix, FieldSpec, matmul
from ..groups import FiniteGroup, GroupSpec, Permutation, _linear_gens, construct, parse_spec
from . import algebra


class ModuleError(Exception):
    pass


class NotASubgroup(ModuleError):
    pass


class WrongFamily(ModuleError):
    pass


class NotARepresentation(ModuleError):
    pass


class GModule:
    """A right kG-module given by one matrix per group generator (vectors are rows)."""

    def __init__(self, group: FiniteGroup, field: FieldSpec, gen_actions: Sequence[np.ndarray],
                 dim: int | None = None, name: str = "", check: bool = False):
        acts = [np.ascontiguousarray(a, dtype=np.uint8) for a in gen_actions]
        if len(acts) != len(group.generators):
            raise ValueError(f"{len(acts)} actions for {len(group.generators)} generators")
        if dim is None:
            if not acts:
                raise ValueError("dimension required for a group without generators")
            dim = acts[0].shape[0]
        for a in acts:
            if a.shape != (dim, dim):
                raise gf2.ShapeMismatch(f"action of shape {a.shape}, expected {(dim, dim)}")
        self.group = group
        self.field = field
        self.dim = dim
        self.gen_actions = acts
        self.name = name
        self._cache: dict[Permutation, np.ndarray] = {}
        if check:
            for a in acts:
                if gf2.rank(field, a) != dim:
                    raise NotARepresentation("generator action is singular")

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<GModule{tag} dim {self.dim} over GF({self.field.size}) for {self.group.name}>"

    # element actions ---------------------------------------------------------
    def action(self, g: Permutation) -> np.ndarray:
        g = Permutation(g)
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        M = gf2.identity(self.dim)
        for k in self.group.word(g):
            M = matmul(self.field, M, self.gen_actions[k])
        if len(self._cache) < 4096:
            self._cache[g] = M
        return M

    def all_actions(self) -> dict[Permutation, np.ndarray]:
        """Matrices of every group element, one multiplication each along the BFS tree."""
        G = self.group
        _ = G.elements
        out: dict[Permutation, np.ndarray] = {}
        for g, (prev, k) in G._parent.items():
            out[g] = gf2.identity(self.dim) if prev is None else matmul(self.field, out[prev], self.gen_actions[k])
        return out

    def word_action(self, word: Sequence[int]) -> np.ndarray:
        M = gf2.identity(self.dim)
        for k in word:
            M = matmul(self.field, M, self.gen_actions[k])
        return M

    def check_representation(self, samples: int = 50, rng: random.Random | None = None) -> bool:
        """rho(w1) rho(w2) = rho(w1 w2) for random generator words (w1 w2 re-expressed as a group element)."""
        rng = rng or random.Random(algebra.seed_value())
        r = len(self.group.generators)
        if r == 0:
            return True
        for _ in range(samples):
            w1 = [rng.randrange(r) for _ in range(rng.randrange(1, 8))]
            w2 = [rng.randrange(r) for _ in range(rng.randrange(1, 8))]
            g = self.group.identity
            for k in w1 + w2:
                g = g * self.group.generators[k]
            lhs = matmul(self.field, self.word_action(w1), self.word_action(w2))
            if not np.array_equal(lhs, self.word_action(self.group.word(g))):
                return False
        return True

    # constructions -----------------------------------------------------------
    def restrict(self, H: FiniteGroup) -> "GModule":
        for h in H.generators:
            if h not in self.group:
                raise NotASubgroup(f"{h} not in {self.group.name}")
        return GModule(H, self.field, [self.action(h) for h in H.generators], self.dim,
                       f"{self.name}|{H.name}")

    def dual(self) -> "GModule":
        acts = [np.ascontiguousarray(gf2.inverse(self.field, a).T) for a in self.gen_actions]
        return GModule(self.group, self.field, acts, self.dim, f"{self.name}*")

    def extend_field(self, F: FieldSpec) -> "GModule":
        if F.e == self.field.e:
            return self
        acts = [gf2.embed(a, self.field, F) for a in self.gen_actions]
        return GModule(self.group, F, acts, self.dim, self.name)

    def submodule(self, U: np.ndarray, name: str = "") -> tuple["GModule", np.ndarray]:
        """The submodule spanned by U (must be invariant) and its rref basis."""
        if not algebra.is_invariant(self.field, U, self.gen_actions):
            raise ModuleError("subspace is not invariant")
        E, acts = algebra.sub_actions(self.field, U, self.gen_actions)
        return GModule(self.group, self.field, acts, E.shape[0], name or f"sub({self.name})"), E

    def quotient(self, U: np.ndarray, name: str = "") -> "GModule":
        if U.shape[0] and not algebra.is_invariant(self.field, U, self.gen_actions):
            raise ModuleError("subspace is not invariant")
        _, acts = algebra.quotient_actions(self.field, U, self.gen_actions, self.dim)
        return GModule(self.group, self.field, acts, self.dim - gf2.rank(self.field, U) if U.shape[0] else self.dim,
                       name or f"quo({self.name})")

    def direct_sum(self, other: "GModule") -> "GModule":
        acts = []
        for a, b in zip(self.gen_actions, other.gen_actions):
            M = np.zeros((self.dim + other.dim,) * 2, dtype=np.uint8)
            M[: self.dim, : self.dim] = a
            M[self.dim:, self.dim:] = b
            acts.append(M)
        return GModule(self.group, self.field, acts, self.dim + other.dim)

    def tensor(self, other: "GModule") -> "GModule":
        acts = [gf2.kron(self.field, a, b) for a, b in zip(self.gen_actions, other.gen_actions)]
        return GModule(self.group, self.field, acts, self.dim * other.dim)

    # fixture text ----------------------------------------------------------------
    def to_text(self) -> str:
        spec = self.group.spec
        if spec is None:
            raise ModuleError("module fixture needs a group built from a spec")
        out = [f"{spec} {self.field.e} {self.dim}"]
        for a in self.gen_actions:
            out.append(FFMatrix(a, self.field).to_text().rstrip("\n"))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str, group: FiniteGroup | None = None) -> "GModule":
        lines = text.strip("\n").split("\n")
        spec_s, e, dim = lines[0].split()
        G = group or construct(parse_spec(spec_s))
        F = gf2.get_field(int(e))
        dim = int(dim)
        acts = []
        pos = 1
        for _ in G.generators:
            acts.append(FFMatrix.from_text("\n".join(lines[pos:pos + dim + 1])).entries)
            pos += dim + 1
        return cls(G, F, acts, dim)


def trivial_module(G: FiniteGroup, F: FieldSpec = gf2.GF2) -> GModule:
    return GModule(G, F, [gf2.identity(1) for _ in G.generators], 1, "1")


def _perm_matrix(images: Sequence[int]) -> np.ndarray:
    n = len(images)
    M = np.zeros((n, n), dtype=np.uint8)
    M[np.arange(n), np.asarray(images)] = 1
    return M


class PermModule(GModule):
    """k[X] for a G-set X, with points numbered 0..|X|-1 and a callable point action."""

    def __init__(self, group: FiniteGroup, field: FieldSpec, points: list,
                 act: Callable[[int, Permutation], int], name: str = ""):
        self.points = points
        self._act = act
        acts = [_perm_matrix([act(i, g) for i in range(len(points))]) for g in group.generators]
        super().__init__(group, field, acts, len(points), name)

    def perm(self, g: Permutation) -> list[int]:
        return [self._act(i, g) for i in range(len(self.points))]

    def action(self, g: Permutation) -> np.ndarray:
        return _perm_matrix(self.perm(g))

    def orbits(self, H: FiniteGroup) -> list[list[int]]:
        n = len(self.points)
        seen = [False] * n
        gens = [self.perm(h) for h in H.generators]
        out = []
        for i in range(n):
            if seen[i]:
                continue
            orb = [i]
            seen[i] = True
            k = 0
            while k < len(orb):
                x = orb[k]
                k += 1
                for p in gens:
                    y = p[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
            out.append(sorted(orb))
        return out


def perm_module(G: FiniteGroup, H: FiniteGroup, field: FieldSpec = gf2.GF2, name: str = "") -> PermModule:
    """k_H induced to G: the permutation module on right cosets Hg, ordered by minimal element."""
    for h in H.generators:
        if h not in G:
            raise NotASubgroup(f"{h} not in {G.name}")
    Hel = list(H.elements)
    index: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    for g in G.sorted_elements:
        if g in index:
            continue
        k = len(reps)
        reps.append(g)
        for h in Hel:
            index[h * g] = k

    def act(i: int, g: Permutation) -> int:
        return index[reps[i] * g]

    return PermModule(G, field, reps, act, name or f"k[{H.name}\\{G.name}]")


def regular_module(G: FiniteGroup, field: FieldSpec = gf2.GF2) -> PermModule:
    return perm_module(G, FiniteGroup(G.domain_size, [G.identity], "1"), field, f"k{G.name}")


def borel_subgroup(G: FiniteGroup) -> FiniteGroup:
    """Upper-triangular subgroup of the PSL2(q) copy: x -> a^2 x + b, order q(q-1)/2."""
    spec = G.spec
    if spec is None or spec.family not in ("psl2", "pgl2"):
        raise WrongFamily(f"{G.name} is not built from psl2/pgl2")
    q = spec.params[0]
    T, D, _ = _linear_gens(q, False)
    return FiniteGroup(G.domain_size, [T, D], f"B({q})")


def fixed_space(F: FieldSpec, acts: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Common fixed vectors of all the given matrices."""
    if not acts:
        return gf2.identity(n)
    I = gf2.identity(n)
    C = np.concatenate([a ^ I for a in acts], axis=1)
    return gf2.left_nullspace(F, C)
