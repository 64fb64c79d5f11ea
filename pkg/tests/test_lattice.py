import pytest

from twisted_link import (INFINITE, AbelianError, IllFormedEndo, InfiniteReidemeister, LatticeAbelianEndo,
                          LatticeAbelianGroup, class_bijection_check, fin_fix_check, fixed_abelian, fixed_abelian_bruteforce,
                          fixed_on_torsion_check, is_finite, primary_fixed_orders, reidemeister_abelian,
                          reidemeister_abelian_bruteforce, tbft_witness_abelian, torsion_decompose)


def z6():
    return LatticeAbelianGroup(1, [[6]])


def z4_z2():
    return LatticeAbelianGroup(2, [[4, 0], [0, 2]])


def z_z6():
    return LatticeAbelianGroup(2, [[0, 6]])


def test_group_shape():
    assert z6().order == 6
    assert z6().invariant_factors == (6,)
    assert z4_z2().invariant_factors == (2, 4)
    assert z_z6().free_rank == 1
    assert z_z6().order is INFINITE
    assert str(INFINITE) == "infinite"
    # Z^2 / (1, 2) is free of rank 1
    G = LatticeAbelianGroup(2, [[1, 2]])
    assert G.free_rank == 1
    assert G.invariant_factors == ()


def test_normal_form_and_orders():
    G = z6()
    assert G.normal_form([7]) == (1,)
    assert G.contains([12])
    assert not G.contains([3])
    assert G.element_order((4,)) == 3
    assert LatticeAbelianGroup(1).element_order((2,)) is INFINITE
    assert len(z4_z2().elements()) == 8


def test_bad_groups():
    with pytest.raises(AbelianError):
        LatticeAbelianGroup(2, [[1, 2, 3]])
    with pytest.raises(AbelianError):
        LatticeAbelianGroup(1).elements()


def test_endo_must_preserve_relations():
    with pytest.raises(IllFormedEndo):
        LatticeAbelianEndo(LatticeAbelianGroup(2, [[2, 0], [0, 4]]), [[1, 0], [1, 1]])
    with pytest.raises(IllFormedEndo):
        LatticeAbelianEndo(z6(), [[1, 0], [0, 1]])


def test_quarter_turn():
    e = LatticeAbelianEndo(LatticeAbelianGroup(2), [[0, -1], [1, 0]])
    assert reidemeister_abelian(e) == 2
    assert fixed_abelian(e).order == 1
    assert e.is_automorphism
    witness = tbft_witness_abelian(e)
    assert witness.F_order == 2
    assert witness.checked_points == 25
    assert witness.bijection_ok


def test_identity_on_z():
    e = LatticeAbelianEndo(LatticeAbelianGroup(1), [[1]])
    assert reidemeister_abelian(e) is INFINITE
    assert fixed_abelian(e).order is INFINITE
    assert not is_finite(reidemeister_abelian(e))
    assert fin_fix_check(e).ok
    report = fixed_on_torsion_check(e)
    assert not report.applicable
    assert report.ok
    with pytest.raises(InfiniteReidemeister):
        tbft_witness_abelian(e)


def test_negation_on_z():
    e = LatticeAbelianEndo(LatticeAbelianGroup(1), [[-1]])
    assert reidemeister_abelian(e) == 2
    assert fixed_abelian(e).order == 1


def test_negation_on_z6():
    e = LatticeAbelianEndo(z6(), [[5]])
    assert reidemeister_abelian(e) == 2
    fixed = fixed_abelian(e)
    assert fixed.order == 2
    assert fixed.invariant_factors == (2,)
    assert sorted(fixed_abelian_bruteforce(e)) == [(0,), (3,)]
    assert reidemeister_abelian_bruteforce(e) == 2
    witness = tbft_witness_abelian(e)
    assert witness.F_order == 2
    assert witness.checked_points == 6
    assert witness.bijection_ok
    primary = primary_fixed_orders(e)
    assert primary.by_prime == {2: 2}
    assert primary.ok


def test_z4_z2():
    e = LatticeAbelianEndo(z4_z2(), [[1, 2], [1, 1]])
    assert reidemeister_abelian(e) == 2
    assert reidemeister_abelian_bruteforce(e) == 2
    assert fixed_abelian(e).order == len(fixed_abelian_bruteforce(e)) == 2
    assert fixed_on_torsion_check(e).ok
    assert tbft_witness_abelian(e).bijection_ok


def test_hyperbolic():
    e = LatticeAbelianEndo(LatticeAbelianGroup(2), [[2, 1], [1, 1]])
    assert reidemeister_abelian(e) == 1
    assert fixed_abelian(e).order == 1
    assert e.is_automorphism


def test_z_cross_z6():
    e = LatticeAbelianEndo(z_z6(), [[-1, 0], [0, 5]])
    assert reidemeister_abelian(e) == 4
    assert fixed_abelian(e).order == 2
    report = fixed_on_torsion_check(e)
    assert report.applicable
    assert report.fixed_torsion == 2
    assert report.ok
    witness = tbft_witness_abelian(e)
    assert witness.F_order == 4
    assert witness.bijection_ok


def test_class_bijection_rejects_a_wrong_quotient():
    negate = LatticeAbelianEndo(LatticeAbelianGroup(1), [[-1]])
    assert class_bijection_check(negate, LatticeAbelianGroup(1, [[2]])) == (True, 5)
    # 0 and 2 share a class
    assert not class_bijection_check(negate, LatticeAbelianGroup(1, [[4]]))[0]
    # 1 is in no class of the single representative
    assert not class_bijection_check(negate, LatticeAbelianGroup(1, [[1]]))[0]
    assert class_bijection_check(negate, LatticeAbelianGroup(1)) == (False, 0)

    turn = LatticeAbelianEndo(LatticeAbelianGroup(2), [[0, -1], [1, 0]])
    assert class_bijection_check(turn, LatticeAbelianGroup(2, [[2, 0], [0, 2]]))[0] is False
    assert class_bijection_check(turn, tbft_witness_abelian(turn).F) == (True, 25)

    shifted = LatticeAbelianEndo(z_z6(), [[-1, 0], [0, 5]])
    assert not class_bijection_check(shifted, LatticeAbelianGroup(2, [[2, 0], [0, 6]]))[0]


def test_not_an_automorphism():
    e = LatticeAbelianEndo(LatticeAbelianGroup(1), [[2]])
    assert not e.is_automorphism
    assert reidemeister_abelian(e) == 1


def test_torsion_decompose():
    assert torsion_decompose(z6()).parts == ((2, (1,)), (3, (1,)))
    assert torsion_decompose(z4_z2()).parts == ((2, (2, 1)),)
    data = torsion_decompose(z_z6()).to_json()
    assert data == {'free_rank': 1, 'parts': [[2, [1]], [3, [1]]]}


@pytest.mark.parametrize("matrix", [[[1]], [[5]], [[-1]], [[7]]])
def test_fixed_agrees_with_enumeration_on_z6(matrix):
    e = LatticeAbelianEndo(z6(), matrix)
    assert fixed_abelian(e).order == len(fixed_abelian_bruteforce(e))
    assert reidemeister_abelian(e) == reidemeister_abelian_bruteforce(e)
