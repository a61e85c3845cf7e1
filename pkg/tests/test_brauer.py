import pytest

from dihedral_blocks import gf2
from dihedral_blocks.groups import subgroups_of, sylow2_dihedral
from dihedral_blocks.repmod import (NotPSubgroup, brauer_audit, brauer_quotient, brauer_quotient_perm, is_projective,
                                    regular_module, scott, sylow2_subgroup, trivial_module)
from dihedral_blocks.repmod.module import borel_subgroup
from dihedral_blocks.workflows import audit_group, transport_all

import properties


def test_trivial_module_quotient_is_trivial(get_group):
    G = get_group("s:4")
    k = trivial_module(G)
    for Q in subgroups_of(sylow2_dihedral(G).P):
        assert brauer_quotient(k, Q).module.dim == 1


def test_projective_module_vanishes_off_the_identity(get_group):
    G = get_group("s:4")
    kG = regular_module(G)
    assert is_projective(kG)
    for Q in subgroups_of(sylow2_dihedral(G).P):
        want = kG.dim if Q.order == 1 else 0
        assert brauer_quotient(kG, Q).module.dim == want


def test_permutation_route_agrees(get_group, rng):
    G = get_group("psl2:7")
    Sc = scott(G, borel_subgroup(G), gf2.GF2, rng)
    for Q in subgroups_of(sylow2_dihedral(G).P)[1:]:
        assert brauer_quotient(Sc, Q).module.dim == brauer_quotient_perm(Sc, Q).dim


def test_non_2_subgroup_rejected(get_group):
    G = get_group("s:4")
    with pytest.raises(NotPSubgroup):
        brauer_quotient(trivial_module(G), G)


@pytest.mark.parametrize("spec", ["psl2:7", "pgl2:5", "prod(s:4,s:4)"])
def test_audit_passes(get_group, rng, spec):
    Sc, audit = audit_group(get_group(spec), rng)
    assert audit.passed
    assert all(e.route_agreement in (None, True) for e in audit.entries)
    if spec == "prod(s:4,s:4)":
        assert Sc.dim == 24


def test_regular_module_fails_the_audit(get_group, rng):
    # a control: the regular module restricted to Q C_G(Q) is free, hence decomposable at Q = 1
    G = get_group("s:4")
    audit = brauer_audit(regular_module(G), sylow2_dihedral(G), rng=rng, cross_check=False)
    assert not audit.passed


def test_transport_verdicts(rng):
    assert transport_all("prod(s:4,s:4)", rng).verdict == "morita"
    summary = transport_all("prod(s:4,s:5)", rng)
    assert summary.verdict == "stable-only" and summary.contract_ok


@pytest.mark.parametrize("name", ["brauer_transitivity", "diagonal_summand_equivalence", "scott_transport",
                                  "brauer_at_reflection", "scott_self_duality"])
def test_module_properties(rng, name):
    assert properties.ALL[name](rng) == []
