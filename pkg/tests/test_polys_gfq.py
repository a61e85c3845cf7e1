import numpy as np
import pytest
from hypothesis import given, strategies as st

from dihedral_blocks import gf2, polys
from dihedral_blocks.gf2 import GF2, GF4
from dihedral_blocks.gfq import MAX_Q, odd_field, prime_power


def poly(F, max_deg=8):
    return st.lists(st.integers(0, F.size - 1), min_size=1, max_size=max_deg + 1).map(polys.trim)


# ---- polynomial oracles

def test_known_factorisations_over_gf2():
    # x^3 + 1 = (x + 1)(x^2 + x + 1)
    assert polys.factor(GF2, (1, 0, 0, 1)) == {(1, 1): 1, (1, 1, 1): 1}
    # x^4 + x^2 = x^2 (x + 1)^2
    assert polys.factor(GF2, (0, 0, 1, 0, 1)) == {(0, 1): 2, (1, 1): 2}
    assert polys.is_irreducible(GF2, (1, 1, 0, 0, 1))  # x^4 + x + 1
    assert not polys.is_irreducible(GF2, (1, 0, 1))  # (x + 1)^2


def test_x2_x_1_splits_over_gf4():
    fac = polys.factor(GF4, (1, 1, 1))
    assert sorted(fac) == [(2, 1), (3, 1)] and set(fac.values()) == {1}


def test_evaluate_matrix_cayley_hamilton():
    A = np.array([[0, 1], [1, 1]], dtype=np.uint8)  # companion of x^2 + x + 1
    assert not polys.evaluate_matrix(GF2, (1, 1, 1), A).any()


@given(st.sampled_from([GF2, GF4]).flatmap(lambda F: st.tuples(st.just(F), poly(F), poly(F))))
def test_division_identity(args):
    F, p, q = args
    if not q:
        return
    quo, r = polys.pdivmod(F, p, q)
    assert polys.padd(polys.pmul(F, quo, q), r) == p
    assert len(r) < len(q)


@given(st.sampled_from([GF2, GF4]).flatmap(lambda F: st.tuples(st.just(F), poly(F, 7))))
def test_factorisation_multiplies_back(args):
    F, f = args
    if len(f) < 2:
        return
    prod = (1,)
    for g, m in polys.factor(F, f).items():
        assert polys.is_irreducible(F, g)
        for _ in range(m):
            prod = polys.pmul(F, prod, g)
    assert prod == polys.monic(F, f)


# ---- odd fields

@pytest.mark.parametrize("q", [3, 5, 7, 9, 13, 17, 25, 27])
def test_odd_field_axioms(q):
    F = odd_field(q)
    assert F.q == q
    g = F.primitive
    assert {F.power(g, k) for k in range(q - 1)} == set(range(1, q))
    for a in range(1, q):
        assert F.mul(a, int(F.inv[a])) == 1
        assert F.add(a, int(F.neg[a])) == 0
    # Frobenius is additive
    for a in range(q):
        for b in range(q):
            assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


def test_prime_power_and_rejections():
    assert prime_power(9) == (3, 2)
    assert prime_power(343) == (7, 3)
    assert prime_power(12) is None
    assert MAX_Q == 343
    with pytest.raises(ValueError):
        odd_field(8)
    with pytest.raises(ValueError):
        odd_field(15)
