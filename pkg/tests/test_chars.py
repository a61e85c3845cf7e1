import pytest
from hypothesis import given, strategies as st

from dihedral_blocks.chars import (DELTA_CONSTANTS, CaseParameterMismatch, Cyclotomic, CyclotomicError, GenDecMatrix,
                                   GroupTooLarge, WrongFusionCase, cyc, delta_signs, dixon_table, gendec_build,
                                   gendec_verify, lifting_prime, parse, principal_block)
from dihedral_blocks.groups import sylow2_dihedral

import properties


# ---- cyclotomic integers

def test_cyclotomic_identities():
    assert cyc(4, 1) * cyc(4, 1) == -1
    assert 1 + cyc(3, 1) + cyc(3, 2) == 0
    assert cyc(8, 1) ** 8 == 1 and cyc(8, 1) ** 4 == -1
    r2 = cyc(8, 1) + cyc(8, 7)  # sqrt 2
    assert r2 * r2 == 2 and r2.galois(3) == -r2
    assert cyc(4, 1).conj() == cyc(4, 3)
    assert cyc(4, 1).embed(8) == cyc(8, 2)
    assert int(Cyclotomic.integer(12, 7)) == 7


def test_cyclotomic_text():
    assert str(cyc(8, 1) + cyc(8, 3)) == "z^1+z^3"
    assert str(-cyc(4, 1) * 2) == "-z^1-z^1"
    assert parse("2-z^1", 4) == 2 - cyc(4, 1)
    assert parse("z^5", 4) == cyc(4, 1)
    for bad in ("", "2z^1", "z^"):
        with pytest.raises(CyclotomicError):
            parse(bad, 4)
    with pytest.raises(CyclotomicError):
        cyc(4, 1).galois(2)
    with pytest.raises(CyclotomicError):
        int(cyc(4, 1))


def cyclotomics(N):
    return st.lists(st.integers(-3, 3), min_size=N, max_size=N).map(lambda v: Cyclotomic(N, v))


@given(st.sampled_from([4, 8, 12, 15]).flatmap(lambda N: st.tuples(cyclotomics(N), cyclotomics(N), cyclotomics(N))))
def test_ring_axioms(abc):
    a, b, c = abc
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert parse(str(a), a.N) == a
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-6
    for u in (1, 7, a.N - 1):
        assert (a * b).galois(u) == a.galois(u) * b.galois(u)


# ---- Dixon tables and blocks

def test_s3_table(get_group):
    T = dixon_table(get_group("s:3"))
    assert T.degrees == [1, 1, 2]
    assert T.rows_orthogonal() and T.columns_orthogonal()


@pytest.mark.parametrize("spec,degrees", [
    ("psl2:7", [1, 3, 3, 6, 7, 8]),
    ("pgl2:3", [1, 1, 2, 3, 3]),
    ("a:7", [1, 6, 10, 10, 14, 14, 15, 21, 35]),
])
def test_dixon_degrees(get_group, spec, degrees):
    T = dixon_table(get_group(spec))
    assert T.degrees == degrees
    assert sum(d * d for d in degrees) == T.group.order


def test_a7_values_at_2_elements(get_group):
    G = get_group("a:7")
    T = dixon_table(G)
    B = principal_block(T)
    f = sylow2_dihedral(G)
    got = sorted((T.degrees[i], int(T.value(i, f.z)), int(T.value(i, f.s))) for i in B.rows)
    assert got == [(1, 1, 1), (14, 2, 0), (15, -1, -1), (21, 1, -1), (35, -1, 1)]


@pytest.mark.parametrize("spec,k,heights", [
    ("psl2:7", 5, None),
    ("pgl2:5", 5, (0, 0, 0, 0, 1)),
    ("psl2:13", 4, (0, 0, 0, 0)),
    ("d:16", 7, (0, 0, 0, 0, 1, 1, 1)),
])
def test_principal_block(get_group, spec, k, heights):
    B = principal_block(dixon_table(get_group(spec)))
    assert B.k == k
    assert len(B.height_zero) == 4
    if heights is not None:
        assert tuple(sorted(B.heights)) == heights


def test_lifting_prime_and_size_gate(get_group):
    p = lifting_prime(4, 168)
    assert p % 4 == 1 and p * p > 4 * 168
    with pytest.raises(GroupTooLarge):
        dixon_table(get_group("psl2:7"), max_order=100)


# ---- generalised decomposition matrices

def test_case_d_q7_z_column():
    M = gendec_build("d", 3, 7)
    k = [c.label for c in M.columns].index("z")
    assert [int(v) for v in M.column(k)] == [1, -1, -1, -1, 2]


def test_case_f_q3_t_column():
    M = gendec_build("f", 3, 3)
    k = [c.label for c in M.columns].index("t")
    assert [int(v) for v in M.column(k)] == [1, 1, -1, -1, 0]


def test_case_a_n3_is_d8_table():
    M = gendec_build("a", 3)
    assert M.shape == (5, 5)
    assert [int(v) for v in M.column(0)] == [1, 1, 1, 1, 2]
    assert M.cross_section_orthogonal()


@pytest.mark.parametrize("case,n,q", [("a", 5, None), ("b", 3, None), ("c", 4, 17), ("d", 4, 47),
                                      ("e", 4, 9), ("f", 5, 47)])
def test_built_shapes_and_round_trip(case, n, q):
    M = gendec_build(case, n, q)
    assert M.shape[0] == 2 ** (n - 2) + 3
    assert sum(1 for h in M.heights if h == 0) == 4
    # z and the s^a, plus the reflection classes not fused to z
    extra = {"a": 2, "e": 1, "f": 1}.get(case, 0)
    assert len([s for s in M.sections() if s != "1"]) == 2 ** (n - 2) + extra
    assert M.cross_section_orthogonal()
    assert GenDecMatrix.from_text(M.to_text()) == M


def test_bad_parameters(get_group):
    with pytest.raises(CaseParameterMismatch):
        gendec_build("c", 3, 7)
    with pytest.raises(CaseParameterMismatch):
        gendec_build("b", 4)
    with pytest.raises(CaseParameterMismatch):
        gendec_build("x", 3)
    with pytest.raises(WrongFusionCase):
        gendec_verify(get_group("pgl2:5"), "c", 3, 9)


@pytest.mark.parametrize("spec,case,n,q", [
    ("d:8", "a", 3, None), ("d:16", "a", 4, None), ("a:7", "b", 3, None), ("psl2:9", "c", 3, 9),
    ("psl2:7", "d", 3, 7), ("pgl2:5", "e", 3, 5), ("pgl2:3", "f", 3, 3), ("pgl2:7", "f", 4, 7),
])
def test_verify_and_delta(get_group, spec, case, n, q):
    G = get_group(spec)
    rep = gendec_verify(G, case, n, q)
    assert rep.passed, rep.messages
    d = delta_signs(G, case, n, q)
    if case in "ab":
        assert d is None
    else:
        assert d.as_tuple() == DELTA_CONSTANTS[case]


@pytest.mark.parametrize("name", ["orthogonality", "cross_section_orthogonality", "galois_invariance"])
def test_character_properties(rng, name):
    assert properties.ALL[name](rng) == []
