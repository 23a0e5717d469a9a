import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import groups
from xmodkit.errors import ImageNotCentral, InvalidAutoAction, MissingInverse, NoIdentityAtZero, NotAssociative, NotHomomorphism, NotSquare
from xmodkit.fingroup import (
    AutoAction,
    FiniteGroup,
    GroupHom,
    abelian_invariants,
    are_isomorphic,
    coker_central,
    conjugation_action,
    cyclic_group,
    direct_product,
    find_isomorphism,
    identity_hom,
    kernel_of,
    image_of,
    quotient_group,
    semidirect_product,
    sign_hom,
    subgroup,
    symmetric_group,
    trivial_group,
    zero_hom,
)

C2 = cyclic_group(2)
C4 = cyclic_group(4)
S3, S3_PERMS = symmetric_group(3)


def test_cyclic_table_is_addition_mod_n():
    g = cyclic_group(5)
    assert all(g.mul(a, b) == (a + b) % 5 for a in range(5) for b in range(5))


def test_symmetric_table_is_composition():
    for a, b in itertools.product(range(6), repeat=2):
        p, q = S3_PERMS[a], S3_PERMS[b]
        assert S3_PERMS[S3.mul(a, b)] == tuple(p[q[i]] for i in range(3))


@pytest.mark.parametrize(
    "table, error",
    [
        ([[0, 1], [1, 1]], MissingInverse),
        ([[1, 0], [0, 1]], NoIdentityAtZero),
        ([[0, 1, 2]], NotSquare),
        ([[0, 5], [1, 0]], NotSquare),
        # a Latin square with identity 0 that is not associative
        ([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]], NotAssociative),
    ],
)
def test_invalid_tables_are_rejected(table, error):
    with pytest.raises(error):
        FiniteGroup(table)


def test_trivial_group():
    assert trivial_group().order == 1


def test_zero_map_kernel_and_cokernel():
    k, inc = kernel_of(zero_hom(C2, C2))
    assert k.order == 2 and list(inc) == [0, 1]
    assert coker_central(zero_hom(C2, C2))[0].order == 2
    assert coker_central(identity_hom(C4))[0].order == 1


def test_direct_product_of_c2_is_klein():
    v = direct_product(C2, C2)
    assert v.order == 4 and v.is_abelian()
    assert abelian_invariants(v) == [2, 2]
    assert not are_isomorphic(v, C4)


def test_quotient_of_s3_by_a3():
    q, proj = quotient_group(S3, [0, 3, 4])
    assert q.order == 2
    # the projection is the sign of the permutation
    assert list(proj) == list(sign_hom(3).map)


def test_non_normal_subgroup_rejected():
    with pytest.raises(ValueError):
        quotient_group(S3, [0, 1])


def test_coker_requires_central_image():
    inc = GroupHom(C2, S3, [0, 1])
    with pytest.raises(ImageNotCentral):
        coker_central(inc)


def test_bad_homomorphism_has_witness():
    with pytest.raises(NotHomomorphism) as info:
        GroupHom(C2, C4, [0, 1])
    assert info.value.witness


def test_action_must_be_by_automorphisms():
    with pytest.raises(InvalidAutoAction):
        AutoAction(C2, C4, [[0, 1, 2, 3], [0, 2, 1, 3]])


def test_semidirect_with_inversion_is_s3():
    c3 = cyclic_group(3)
    inversion = AutoAction(C2, c3, [[0, 1, 2], [0, 2, 1]])
    s = semidirect_product(C2, c3, inversion)
    assert s.group.order == 6 and not s.group.is_abelian()
    assert are_isomorphic(s.group, S3)
    assert s.proj_b0().compose(s.inj_b0()) == identity_hom(C2)


def test_semidirect_with_trivial_action_is_direct():
    c3 = cyclic_group(3)
    s = semidirect_product(C2, c3, AutoAction(C2, c3, [[0, 1, 2], [0, 1, 2]]))
    assert are_isomorphic(s.group, cyclic_group(6))


def test_abelian_invariants_frozen():
    # Z4 x Z6 = Z2 x Z12
    assert abelian_invariants(direct_product(C4, cyclic_group(6))) == [2, 12]
    assert abelian_invariants(cyclic_group(6)) == [6]


# -- properties ---------------------------------------------------------------


@given(groups, st.data())
def test_group_axioms(g, data):
    a, b, c = (data.draw(st.integers(0, g.order - 1)) for _ in range(3))
    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
    assert g.mul(a, 0) == a == g.mul(0, a)
    assert g.mul(a, g.inv(a)) == 0


@given(groups, groups)
def test_hom_composition_is_a_hom(g, h):
    zero = zero_hom(g, h)
    assert zero.compose(identity_hom(g)) == zero
    assert identity_hom(h).compose(zero) == zero


@given(groups, st.data())
def test_kernel_image_orders(g, data):
    h = data.draw(st.sampled_from([identity_hom(g), zero_hom(g, C2)] + ([sign_hom(3)] if g == S3 else [])))
    assert kernel_of(h)[0].order * image_of(h)[0].order == g.order


@given(groups, st.data())
def test_quotient_order_by_normal_closure(g, data):
    a = data.draw(st.integers(0, g.order - 1))
    normal = g.generated([g.conj(x, a) for x in g.elements])
    q, proj = quotient_group(g, normal)
    assert q.order * len(normal) == g.order
    assert GroupHom(g, q, proj).is_surjective()


@given(groups, st.data())
def test_subgroup_inclusion_is_injective_hom(g, data):
    gens = data.draw(st.lists(st.integers(0, g.order - 1), max_size=2))
    sub, inc = subgroup(g, g.generated(gens))
    assert GroupHom(sub, g, inc).is_injective()


@given(groups)
def test_isomorphism_search_finds_self_and_relabelled(g):
    assert find_isomorphism(g, g).is_isomorphism()
    # relabel the non-identity elements by reversing them
    perm = np.array([0] + list(range(g.order - 1, 0, -1)))
    inv = np.argsort(perm)
    h = FiniteGroup(perm[g.table[inv[:, None], inv[None, :]]])
    iso = find_isomorphism(g, h)
    assert iso is not None and iso.is_isomorphism()


@given(groups)
def test_conjugation_action_is_valid(g):
    act = conjugation_action(g)
    assert act.is_trivial() == g.is_abelian()
