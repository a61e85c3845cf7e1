import pytest
from hypothesis import given, strategies as st

from dihedral_blocks.groups import (DefectTooSmall, FusionLabel, NotDihedralSylow, Permutation, SpecParseError,
                                    UnsupportedParameter, align_frames, centralizer, construct, diagonal,
                                    involution_fusion, reflection_fused_to_z, split, sylow2_dihedral, two_part)

ORDERS = {"d:8": 8, "d:16": 16, "psl2:7": 168, "psl2:9": 360, "pgl2:3": 24, "pgl2:5": 120, "a:7": 2520,
          "s:4": 24}

FUSION = {
    "d:8": FusionLabel.CASE1_NILPOTENT, "d:16": FusionLabel.CASE1_NILPOTENT, "d:32": FusionLabel.CASE1_NILPOTENT,
    "psl2:7": FusionLabel.CASE3_PSL, "psl2:9": FusionLabel.CASE3_PSL, "psl2:17": FusionLabel.CASE3_PSL,
    "a:7": FusionLabel.CASE3_PSL,
    "pgl2:3": FusionLabel.CASE2_PGL, "pgl2:5": FusionLabel.CASE2_PGL, "pgl2:7": FusionLabel.CASE2_PGL,
    "pgl2:9": FusionLabel.CASE2_PGL,
}


def is_dihedral(H) -> bool:
    m = H.order // 2
    els = H.sorted_elements
    for r in els:
        if r.order() == m:
            return any(x.order() == 2 and x * r * x == r.inverse() and x not in {r**i for i in range(m)}
                       for x in els)
    return False


@pytest.mark.parametrize("spec,order", sorted(ORDERS.items()))
def test_orders(get_group, spec, order):
    assert get_group(spec).order == order


@pytest.mark.parametrize("spec", ["psl2:7", "pgl2:5", "s:4"])
def test_class_equation(get_group, spec):
    G = get_group(spec)
    assert sum(size for _, size in G.classes) == G.order
    for g, size in G.classes:
        assert centralizer(G, g).order * size == G.order


@pytest.mark.parametrize("spec,label", sorted(FUSION.items()))
def test_fusion_classification(get_group, spec, label):
    G = get_group(spec)
    frame = sylow2_dihedral(G)
    assert frame.check()
    case = involution_fusion(G, frame)
    assert case.label == label
    assert case.predicted_l == {FusionLabel.CASE1_NILPOTENT: 1, FusionLabel.CASE2_PGL: 2,
                                FusionLabel.CASE3_PSL: 3}[label]


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_exactly_one_reflection_class_fused_in_pgl(get_group, q):
    G = get_group(f"pgl2:{q}")
    fused = reflection_fused_to_z(G, sylow2_dihedral(G))
    assert sorted(fused.values()) == [False, True]


@pytest.mark.parametrize("q", [5, 7, 9])
def test_pgl_centralisers(get_group, q):
    G = get_group(f"pgl2:{q}")
    f = sylow2_dihedral(G)
    fused = reflection_fused_to_z(G, f)
    other = f.st if fused["t"] else f.t
    same = f.t if fused["t"] else f.st
    C_other, C_same = centralizer(G, other), centralizer(G, same)
    if q % 4 == 1:
        assert C_other.order == 2 * (q + 1)
        assert is_dihedral(C_other)
    else:
        assert C_same.order == 2 * (q + 1)
        assert C_same.order == centralizer(G, f.z).order


def test_frame_is_stable_under_conjugation(get_group):
    G = get_group("psl2:7")
    f = sylow2_dihedral(G)
    for x in G.generators:
        g = f.conjugate(x)
        assert g.check()
        assert involution_fusion(G, g).label == involution_fusion(G, f).label


def test_product_alignment_and_diagonal(get_group):
    G = get_group("prod(s:4,s:4)")
    G1, G2 = G.factors
    f1, f2 = sylow2_dihedral(G1), sylow2_dihedral(G2)
    f2 = align_frames(G1, f1, G2, f2)
    assert reflection_fused_to_z(G1, f1) == reflection_fused_to_z(G2, f2)
    D = diagonal(G, f1, f2)
    assert D.order == 8
    for x in D.generators:
        a, b = split(G, x)
        assert a.order() == b.order()


def test_klein_and_cyclic_rejected(get_group):
    with pytest.raises(NotDihedralSylow):
        sylow2_dihedral(get_group("psl2:13"))
    assert sylow2_dihedral(get_group("psl2:13"), allow_klein=True).n == 2


@pytest.mark.parametrize("bad,exc", [("foo", SpecParseError), ("d:12", SpecParseError), ("", SpecParseError),
                                     ("psl2:2", UnsupportedParameter), ("psl2:4", UnsupportedParameter)])
def test_parse_errors(bad, exc):
    with pytest.raises(exc):
        construct(bad)


def test_defect_too_small():
    from dihedral_blocks.groups import frobenius_sylow_witness
    with pytest.raises(DefectTooSmall):
        frobenius_sylow_witness(3, 1)
    with pytest.raises(UnsupportedParameter):
        frobenius_sylow_witness(2, 1)
    assert frobenius_sylow_witness(7, 3).holds


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_permutation_right_action(a, b):
    g, h = Permutation(a), Permutation(b)
    assert list(g * h) == [h[g[i]] for i in range(6)]
    assert (g * h).inverse() == h.inverse() * g.inverse()
    assert (g * g.inverse()).is_identity()
    assert Permutation.parse(6, str(g)) == g


@given(st.integers(1, 10**6))
def test_two_part(n):
    t = two_part(n)
    assert n % t == 0 and (n // t) % 2 == 1 and t & (t - 1) == 0
