import numpy as np
import pytest
from hypothesis import given, strategies as st

from dihedral_blocks import gf2
from dihedral_blocks.gf2 import GF2, GF4
from dihedral_blocks.groups import FiniteGroup, subgroups_of, sylow2_dihedral
from dihedral_blocks.repmod import (GModule, NotASubgroup, WrongFamily, borel_subgroup, decompose, dual_series,
                                    fixed_points, hom, indecomposable_summands, is_absolutely_simple,
                                    is_indecomposable, is_isomorphic, is_projective, library_for, loewy_series,
                                    meataxe_chop, perm_module, regular_module, scott, socle_series,
                                    sylow2_subgroup, trivial_module)


# ---- modules

@pytest.mark.parametrize("spec", ["s:4", "psl2:7", "pgl2:3"])
def test_permutation_modules_are_representations(get_group, spec, rng):
    G = get_group(spec)
    P = sylow2_subgroup(G)
    M = perm_module(G, P)
    assert M.dim * P.order == G.order
    assert M.check_representation(50, rng)
    assert M.dual().check_representation(50, rng)
    T = M.tensor(trivial_module(G))
    assert T.dim == M.dim and T.check_representation(20, rng)


@pytest.mark.parametrize("spec", ["s:4", "psl2:7"])
def test_fixed_points_count_orbits(get_group, spec):
    G = get_group(spec)
    M = perm_module(G, sylow2_subgroup(G))
    for Q in subgroups_of(sylow2_dihedral(G).P):
        assert fixed_points(M, Q).shape[0] == len(M.orbits(Q))


def test_module_text_round_trip(get_group):
    G = get_group("s:4")
    M = perm_module(G, sylow2_subgroup(G)).extend_field(GF4)
    N = GModule.from_text(M.to_text(), G)
    assert N.dim == M.dim and all(np.array_equal(a, b) for a, b in zip(M.gen_actions, N.gen_actions))


def test_bad_subgroup_and_family(get_group):
    G, H = get_group("s:4"), get_group("psl2:7")
    with pytest.raises(NotASubgroup):
        perm_module(G, FiniteGroup(H.domain_size, H.generators[:1]))
    with pytest.raises(WrongFamily):
        borel_subgroup(G)


# ---- meataxe

def test_borel_chop_of_psl27(get_group, rng):
    G = get_group("psl2:7")
    ch = meataxe_chop(perm_module(G, borel_subgroup(G)), rng=rng)
    assert sorted(ch.dims().elements()) == [1, 1, 3, 3]
    threes = [l for l in ch.labels if ch.library.dim(l) == 3]
    assert len(threes) == 2  # the two 3-dimensional simples are distinct
    assert ch.field.e == 1  # PSL2(7) = GL3(2), so both live over GF(2)


def test_trivial_and_regular_simplicity(get_group, rng):
    G = get_group("s:3")
    assert is_absolutely_simple(trivial_module(G), rng)
    assert not is_absolutely_simple(regular_module(G), rng)


# ---- summands and projectivity

def test_regular_module_of_s3(get_group, rng):
    G = get_group("s:3")
    parts = indecomposable_summands(regular_module(G), rng)
    dims = sorted(M.dim for M, mult in parts for _ in range(mult))
    assert dims == [2, 2, 2]
    assert sum(m for _, m in parts) == 3
    for s in decompose(regular_module(G), rng):
        assert is_projective(s.module)


def test_projectivity_by_norm(get_group):
    G = get_group("s:4")
    assert is_projective(regular_module(G))
    assert not is_projective(trivial_module(G))
    assert is_projective(perm_module(G, FiniteGroup(G.domain_size, [G.identity])))


@pytest.mark.parametrize("spec,sub", [("s:4", "sylow"), ("psl2:7", "borel"), ("pgl2:3", "borel")])
def test_scott_module_properties(get_group, rng, spec, sub):
    G = get_group(spec)
    H = borel_subgroup(G) if sub == "borel" else sylow2_subgroup(G)
    Sc = scott(G, H, GF2, rng)
    triv = trivial_module(G)
    assert hom(Sc, triv).shape[0] == 1 and hom(triv, Sc).shape[0] == 1
    assert hom(perm_module(G, H), triv).shape[0] == 1
    assert is_indecomposable(Sc, rng)
    assert is_isomorphic(Sc, Sc.dual(), rng)


def test_scott_of_sylow_is_trivial(get_group, rng):
    G = get_group("psl2:7")
    assert scott(G, sylow2_subgroup(G), GF2, rng).dim == 1


# ---- series

@pytest.mark.parametrize("spec", ["psl2:7", "pgl2:3"])
def test_socle_series_is_dual_of_loewy_series(get_group, rng, spec):
    G = get_group(spec)
    Sc = scott(G, borel_subgroup(G), GF2, rng)
    L = loewy_series(Sc, rng)
    S = socle_series(Sc.dual(), rng)
    assert S.layers == dual_series(L).layers
    assert L.total_dim() == Sc.dim


def test_uniserial_module_for_cyclic_group(get_group, rng):
    # k[C4] is uniserial of length 4 with trivial layers
    G = get_group("d:8")
    s = sylow2_dihedral(G, allow_klein=True).s
    C = FiniteGroup(G.domain_size, [s], "C4")
    L = loewy_series(regular_module(C), rng)
    assert L.dims() == [[1], [1], [1], [1]]


# ---- properties

@given(st.integers(0, 2**32 - 1))
def test_random_submodule_quotient_dimensions(seed):
    from conftest import group
    G = group("s:4")
    M = perm_module(G, sylow2_subgroup(G))
    rs = np.random.default_rng(seed)
    v = gf2.random_matrix(GF2, 1, M.dim, rs)
    U = gf2.spin(GF2, v, M.gen_actions)
    if U.shape[0] in (0, M.dim):
        return
    sub, _ = M.submodule(U)
    quo = M.quotient(U)
    assert sub.dim + quo.dim == M.dim
    assert sub.check_representation(10) and quo.check_representation(10)
