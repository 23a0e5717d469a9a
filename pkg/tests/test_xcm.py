import numpy as np
import pytest
from hypothesis import given, settings

from conftest import xmods
from test_twosided import pairs, trivial_pair
from xmodkit.action import quotient_2groupoid, trivial_actor_action
from xmodkit.crossed import CrossedModule, cone_2group
from xmodkit.fingroup import GroupHom, are_isomorphic, cyclic_group, symmetric_group, trivial_action, trivial_group, zero_hom
from xmodkit.groupoid import discrete_groupoid, quotient_set_groupoid
from xmodkit.twocat import check_strict_isomorphism
from xmodkit.twosided import combined_action, combined_group, cone_of_pair, two_sided_action
from xmodkit.xcm import (
    XCrossedModule,
    check_xcm,
    delta_g,
    explicit_xcm_of_pair,
    extract_xcm,
    realize_2groupoid,
    verify_explicit_xcm,
    verify_remark_241,
    verify_roundtrip,
    xcm_of_xmod,
)

S3, _ = symmetric_group(3)


def trivial_xcm(gamma) -> XCrossedModule:
    t = trivial_group()
    auts = [gamma.aut_group(x)[0] for x in range(gamma.n_objects)]
    return XCrossedModule(
        gamma,
        [t] * gamma.n_objects,
        [np.zeros(1, dtype=np.int64) for _ in range(gamma.n_morphisms)],
        [zero_hom(t, a) for a in auts],
    )


def test_single_object_agrees_with_xmod_check(catalog):
    for name in ("XM1", "XM3", "S3C"):
        assert check_xcm(xcm_of_xmod(catalog[name])).ok, name


def test_single_object_detects_peiffer_failure():
    t = trivial_group()
    bad = CrossedModule(t, S3, zero_hom(S3, t), trivial_action(t, S3), validate=False)
    tr = check_xcm(xcm_of_xmod(bad))
    assert [e.check for e in tr.failures()] == ["Peiffer identity"]


def test_discrete_gamma_with_nonabelian_h_fails_peiffer():
    gam = discrete_groupoid(1)
    aut = gam.aut_group(0)[0]
    m = XCrossedModule(gam, [S3], [np.arange(6)], [GroupHom(S3, aut, np.zeros(6, dtype=np.int64))])
    tr = check_xcm(m)
    failed = tr.failures()
    assert len(failed) == 1 and failed[0].check == "Peiffer identity"
    x, h, h2 = failed[0].witness[1]
    assert S3.mul(h, h2) != S3.mul(h2, h)


def test_discrete_2groupoid_has_trivial_h():
    t = quotient_2groupoid(trivial_actor_action(discrete_groupoid(3)))
    m = extract_xcm(t)
    assert [h.order for h in m.H] == [1, 1, 1]


@pytest.mark.parametrize("name", ["XM1", "XM2", "XM3", "XM4", "S3C"])
def test_extract_from_cone_recovers_the_xmod(catalog, name):
    xm = catalog[name]
    m = extract_xcm(cone_2group(xm))
    assert m.gamma.n_objects == 1
    assert are_isomorphic(m.H[0], xm.gm1)
    assert are_isomorphic(m.gamma.aut_group(0)[0], xm.g0)
    assert check_xcm(m).ok


@pytest.mark.parametrize("name", ["XM1", "XM3", "XM4"])
def test_realize_single_object_is_the_cone(catalog, name):
    xm = catalog[name]
    cone = cone_2group(xm)
    m = xcm_of_xmod(xm)
    r = realize_2groupoid(m)
    # cone 1-cell g is the morphism labelled ("pt", g); 2-cell (g, c) keeps c
    m1 = np.array([r.skeleton.index(m.gamma.index(("pt", cone.label1(f)))) for f in range(cone.n_one_cells)])
    m2 = np.array([r.cells.index((int(m1[cone.skeleton.index(g)]), c)) for g, c in (cone.label2(a) for a in range(cone.n_two_cells))])
    assert check_strict_isomorphism(cone, r, [0], m1, m2).ok


def test_trivial_h_realizes_discrete_layers():
    c2 = cyclic_group(2)
    gam = quotient_set_groupoid(2, c2, [[0, 1], [1, 0]])
    r = realize_2groupoid(trivial_xcm(gam))
    assert r.n_two_cells == r.n_one_cells == gam.n_morphisms
    assert r.check_laws().ok


def test_roundtrip_examples(catalog):
    assert verify_roundtrip(cone_2group(catalog["XM1"])).ok
    assert verify_roundtrip(cone_of_pair(catalog["TS1"])).ok
    assert verify_roundtrip(quotient_2groupoid(catalog["SET-Z4"])).ok


def test_ts1_explicit_xcm(catalog):
    p = catalog["TS1"]
    e = explicit_xcm_of_pair(p)
    assert e.gamma.n_objects == 1 and e.H[0].order == 2
    # pi = pi' = id and everything abelian: d_g(beta) = (0, beta^-1 beta) is the unit
    assert [delta_g(p, 0, beta) for beta in (0, 1)] == [0, 0]
    assert verify_explicit_xcm(p).ok


def test_trivial_source_explicit_xcm_is_translation_groupoid(catalog):
    p = trivial_pair(catalog["XM3"])
    e = explicit_xcm_of_pair(p)
    assert all(h.order == 1 for h in e.H)
    # objects S3, morphisms (x, c) with c in A3 moving x to d(c) x
    assert e.gamma.n_objects == 6 and e.gamma.n_morphisms == 18
    assert verify_explicit_xcm(p).ok


@pytest.mark.parametrize("name", ["TS1", "TS-A", "TS-XM3"])
def test_remark_checks(catalog, name):
    p = catalog[name]
    for g in p.g.g0.elements:
        assert verify_remark_241(p, g).ok


def test_delta_lands_in_stabilizer(catalog):
    for name, p in catalog.pairs.items():
        s = combined_group(p)
        act = combined_action(p, s)
        for g in p.g.g0.elements:
            for beta in p.b.gm1.elements:
                assert act[delta_g(p, g, beta, s), g] == g, name


# -- properties -----------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(xmods)
def test_roundtrip_on_random_cones(xm):
    assert verify_roundtrip(cone_2group(xm)).ok


@settings(max_examples=15, deadline=None)
@given(pairs())
def test_explicit_xcm_and_remark_on_random_pairs(p):
    action = two_sided_action(p)
    cone = cone_of_pair(p, action)
    assert verify_explicit_xcm(p, cone).ok
    assert verify_roundtrip(cone).ok
    for g in p.g.g0.elements:
        assert verify_remark_241(p, g).ok
