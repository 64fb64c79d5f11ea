import pytest
from sympy.combinatorics.named_groups import SymmetricGroup

from twisted_link import (ClosureCapExceeded, DegreeMismatch, NotASubgroup, NotNormal, Perm, Settings, alternating,
                          center, centralizer, characteristic_core, commutator_subgroup, conjugacy_classes,
                          derived_series, exponent, generate_group, is_abelian, min_generators, normal_closure,
                          normal_core, normal_subgroups, quotient, rank, subgroup_generated, subgroups_of_index,
                          symmetric)


def test_elements_sorted_with_identity_first(s3):
    assert list(s3.elements) == sorted(s3.elements)
    assert s3.elements[s3.identity].is_identity()
    assert s3.order == 6


def test_group_operations(s3):
    for a in range(s3.order):
        assert s3.mul(a, s3.inv(a)) == 0
        assert s3.power(a, s3.element_order(a)) == 0
        for b in range(s3.order):
            assert s3.elements[s3.mul(a, b)] == s3.elements[a] * s3.elements[b]


def test_conjugacy_classes(s3, d4, q8):
    classes = conjugacy_classes(s3)
    assert classes[0] == (0,)
    assert sorted(len(c) for c in classes) == [1, 2, 3]
    assert len(conjugacy_classes(d4)) == 5
    assert len(conjugacy_classes(q8)) == 5


def test_center(s3, d4, q8, v4):
    assert center(s3).order == 1
    assert center(d4).order == 2
    assert center(q8).order == 2
    assert center(v4).order == 4


def test_derived_series(s3, a4):
    series = derived_series(s3)
    assert series.soluble
    assert series.derived_length == 2
    assert series.orders() == [6, 3, 1]
    assert derived_series(a4).orders() == [12, 4, 1]
    a5 = derived_series(alternating(5))
    assert not a5.soluble
    assert a5.derived_length is None


def test_normal_subgroups(s3, d4):
    assert [n.order for n in normal_subgroups(s3)] == [1, 3, 6]
    assert sorted(n.order for n in normal_subgroups(d4)) == [1, 2, 4, 4, 4, 8]
    assert all(n.is_normal for n in normal_subgroups(d4))


def test_quotient_is_a_homomorphism(s3):
    A3 = commutator_subgroup(s3.whole())
    q = quotient(s3, A3)
    assert q.order == 2
    assert q.project(0) == 0
    for a in range(s3.order):
        for b in range(s3.order):
            assert q.project(s3.mul(a, b)) == q.group_structure.mul(q.project(a), q.project(b))
    assert q.preimage(0) == A3.member_ids


def test_quotient_needs_a_normal_subgroup(s3):
    transposition = s3.index_of(Perm((1, 0, 2)))
    H = subgroup_generated(s3, [transposition])
    with pytest.raises(NotNormal):
        quotient(s3, H)
    assert normal_core(s3, H).order == 1


def test_subgroup_check(s3):
    three_cycle = s3.index_of(Perm((1, 2, 0)))
    with pytest.raises(NotASubgroup):
        s3.subgroup([0, three_cycle])
    assert s3.subgroup([0, three_cycle, s3.inv(three_cycle)]).order == 3


def test_relative_and_lift(s3):
    A3 = commutator_subgroup(s3.whole())
    local = A3.relative(A3)
    assert local.order == 3
    assert local.parent is A3.as_group
    assert A3.lift(local).member_ids == A3.member_ids
    assert A3.to_parent(A3.to_local(A3.sorted_ids[1])) == A3.sorted_ids[1]


def test_subgroups_of_index(v4, s3):
    assert len(subgroups_of_index(v4, 2)) == 3
    assert len(subgroups_of_index(s3, 2)) == 1
    assert len(subgroups_of_index(s3, 3)) == 3
    assert subgroups_of_index(s3, 4) == []
    assert subgroups_of_index(s3, 1)[0].order == 6


def test_characteristic_core(v4):
    H = subgroups_of_index(v4, 2)[0]
    assert characteristic_core(v4, H).order == 1


def test_rank(v4, c6, q8, s3):
    assert rank(v4) == 2
    assert rank(c6) == 1
    assert rank(q8) == 2
    assert rank(s3) == 2
    assert min_generators(v4.whole()) == 2


def test_exponent_and_abelian(q8, v4):
    assert exponent(q8) == 4
    assert not is_abelian(q8)
    assert is_abelian(v4)


def test_generate_group_errors():
    with pytest.raises(DegreeMismatch):
        generate_group([Perm((1, 0)), Perm((1, 2, 0))])
    with pytest.raises(ClosureCapExceeded):
        symmetric(4, Settings({'closure_cap': 10}))


def test_backed_by_sympy(s3, d4):
    assert s3.perm_group.order() == s3.order
    assert s3.perm_group.equals(SymmetricGroup(3))
    three_cycle = s3.index_of(Perm((1, 2, 0)))
    transposition = s3.index_of(Perm((1, 0, 2)))
    assert centralizer(s3, three_cycle).order == 3
    assert centralizer(s3, transposition).member_ids == {0, transposition}
    assert normal_closure(s3, [transposition]).order == 6
    assert normal_closure(s3, [three_cycle]).order == 3
    assert center(d4).order == 2
