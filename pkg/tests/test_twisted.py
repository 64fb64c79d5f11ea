import pytest

from twisted_link import (Automorphism, NotNormal, OracleMismatch, Perm, all_automorphisms, center,
                          commutator_subgroup, fixed_subgroup, identity_automorphism, jabara_alpha, jabara_check,
                          reidemeister_classes, reidemeister_classes_bruteforce, reidemeister_number,
                          semidirect_coset_oracle, sigma_witness, symmetric, verify_characteristic_quotient,
                          verify_extension, verify_shift)

from .util import power_map

GROUPS = ['c5', 'c6', 's3', 'v4', 'd4', 'q8', 'a4']


@pytest.mark.parametrize("fixture,classes", [('s3', 3), ('d4', 5), ('q8', 5), ('a4', 4), ('c6', 6)])
def test_identity_gives_conjugacy_classes(request, fixture, classes):
    G = request.getfixturevalue(fixture)
    assert reidemeister_number(G, identity_automorphism(G)) == classes


def test_cyclic_power_maps(c5, c6):
    assert reidemeister_number(c5, power_map(c5, 2)) == 1
    assert reidemeister_number(c6, power_map(c6, 5)) == 2


@pytest.mark.parametrize("fixture", GROUPS)
def test_union_find_matches_bruteforce(request, fixture):
    G = request.getfixturevalue(fixture)
    for phi in all_automorphisms(G):
        part = reidemeister_classes(G, phi)
        assert part.classes == reidemeister_classes_bruteforce(G, phi).classes
        assert sum(part.sizes) == G.order
        assert all(part.class_containing(g)[0] == part.representatives()[part.class_of[g]] for g in range(G.order))


@pytest.mark.parametrize("fixture", ["c5", "c6", "v4"])
def test_abelian_count_equals_fixed_points(request, fixture):
    G = request.getfixturevalue(fixture)
    for phi in all_automorphisms(G):
        assert reidemeister_number(G, phi) == fixed_subgroup(phi).order


@pytest.mark.parametrize("fixture", GROUPS)
def test_oracle_and_shift(request, fixture):
    G = request.getfixturevalue(fixture)
    for phi in all_automorphisms(G):
        R = reidemeister_number(G, phi)
        assert semidirect_coset_oracle(G, phi) == R
        assert jabara_check(G, phi)
        assert all(verify_shift(G, phi, x) for x in range(G.order))


def test_oracle_raises_on_a_bad_model(c5, monkeypatch):
    phi = identity_automorphism(c5)
    # C5 acting regularly together with a transposition generates S5, not C5 x| <id>
    monkeypatch.setattr(Automorphism, "as_perm", lambda self: Perm.from_cycles([(1, 2)], 5))
    with pytest.raises(OracleMismatch, match="order 120, expected 5"):
        semidirect_coset_oracle(c5, phi)


@pytest.mark.parametrize("fixture", ['s3', 'd4', 'q8', 'a4'])
def test_sigma_witness(request, fixture):
    G = request.getfixturevalue(fixture)
    for phi in all_automorphisms(G):
        witness = sigma_witness(G, phi)
        assert witness.bijection_ok
        assert witness.R_quotient == reidemeister_number(G, phi)
        assert witness.kernel.is_normal


def test_sigma_witness_identity_on_s3(s3):
    witness = sigma_witness(s3, identity_automorphism(s3))
    assert witness.kernel.order == 1
    assert witness.quotient.order == 6


def test_extension_over_derived_subgroup(s3):
    A3 = commutator_subgroup(s3.whole())
    report = verify_extension(s3, A3, identity_automorphism(s3))
    assert (report.R_total, report.R_quotient, report.R_restricted) == (3, 2, 3)
    assert report.fixed_quotient_size == 2
    assert not report.intersection_applicable
    assert report.ok


def test_extension_over_center(d4, q8):
    for G in (d4, q8):
        Z = center(G)
        for phi in all_automorphisms(G):
            assert verify_extension(G, Z, phi).ok


def test_extension_needs_normal(s3):
    H = s3.subgroup([0, s3.index_of(Perm((1, 0, 2)))])
    with pytest.raises(NotNormal):
        verify_extension(s3, H, identity_automorphism(s3))


def test_jabara_alpha():
    assert jabara_alpha(1) == 4
    assert jabara_alpha(3) == 256


def test_characteristic_quotient(v4):
    report = verify_characteristic_quotient(v4, identity_automorphism(v4), 2)
    assert report.applicable
    assert report.core_order == 1
    assert report.R_quotient == 4
    assert report.ok


def test_characteristic_quotient_without_subgroups(s3):
    report = verify_characteristic_quotient(s3, identity_automorphism(s3), 5)
    assert not report.applicable
    assert report.ok


def test_sigma_witness_on_s4():
    S4 = symmetric(4)
    for phi in all_automorphisms(S4):
        assert sigma_witness(S4, phi).bijection_ok
