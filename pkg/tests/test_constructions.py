import pytest

from twisted_link import (GroupError, abelian, center, construct, cyclic, dicyclic, dihedral, direct_product,
                          elementary_abelian, heisenberg, is_abelian, quaternion, symmetric, trivial)


@pytest.mark.parametrize("name,args,order", [
    ('trivial', [], 1),
    ('cyclic', [7], 7),
    ('dihedral', [5], 10),
    ('dihedral', [2], 4),
    ('symmetric', [4], 24),
    ('alternating', [4], 12),
    ('dicyclic', [3], 12),
    ('quaternion', [], 8),
    ('heisenberg', [3], 27),
    ('elementary_abelian', [2, 3], 8),
    ('abelian', [4, 2], 8),
    ('klein_four', [], 4),
    ('direct_product', [['cyclic', [2]], ['symmetric', [3]]], 12),
])
def test_orders(name, args, order):
    assert construct(name, args).order == order


def test_names():
    assert cyclic(5).name == "C5"
    assert elementary_abelian(3, 2).name == "C3^2"
    assert direct_product(cyclic(2), symmetric(3)).name == "C2xS3"
    assert trivial().name == "1"


def test_quaternion_has_one_involution():
    q8 = quaternion()
    assert sum(1 for g in range(q8.order) if q8.element_order(g) == 2) == 1
    assert not is_abelian(q8)


def test_heisenberg_center():
    H = heisenberg(3)
    assert not is_abelian(H)
    assert center(H).order == 3


def test_dicyclic_is_not_dihedral():
    assert len([g for g in range(12) if dicyclic(3).element_order(g) == 2]) == 1
    assert len([g for g in range(12) if dihedral(6).element_order(g) == 2]) == 7


def test_abelian_drops_trivial_factors():
    assert abelian(1, 1).order == 1
    assert abelian(1, 6).name == "C6"


@pytest.mark.parametrize("name,args", [
    ('nope', []),
    ('cyclic', [0]),
    ('cyclic', [2, 3]),
    ('direct_product', [['cyclic']]),
])
def test_construct_errors(name, args):
    with pytest.raises(GroupError):
        construct(name, args)


def test_generators_follow_sympy_named_groups():
    assert [g.cycle_string() for g in symmetric(3).generators] == ["(0 1 2)", "(0 1)"]
    assert [g.cycle_string() for g in cyclic(5).generators] == ["(0 1 2 3 4)"]
    assert dihedral(5).perm_group.order() == 10
    assert direct_product(cyclic(2), cyclic(3)).degree == 5
