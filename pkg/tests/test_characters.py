import pytest

from twisted_link import (CapExceeded, Settings, all_automorphisms, character_table, class_permutation,
                          dixon_prime, dual_map, identity_automorphism, symmetric, verify_tbft_finite)


def test_dixon_prime():
    assert dixon_prime(6, 6) == 7
    assert dixon_prime(5, 5) == 11
    p = dixon_prime(60, 30)
    assert (p - 1) % 30 == 0 and p * p > 240


@pytest.mark.parametrize("fixture,degrees", [
    ('c5', (1, 1, 1, 1, 1)),
    ('v4', (1, 1, 1, 1)),
    ('s3', (1, 1, 2)),
    ('d4', (1, 1, 1, 1, 2)),
    ('q8', (1, 1, 1, 1, 2)),
    ('a4', (1, 1, 1, 3)),
])
def test_tables(request, fixture, degrees):
    G = request.getfixturevalue(fixture)
    table = character_table(G)
    assert table.degrees == degrees
    assert table.rows[0] == tuple([1] * table.class_count)
    assert table.check_orthogonality()


def test_s4_table():
    table = character_table(symmetric(4))
    assert table.degrees == (1, 1, 2, 3, 3)
    assert table.check_orthogonality()
    assert sum(table.class_sizes) == 24


def test_to_json(s3):
    data = character_table(s3).to_json()
    assert data['prime'] == 7
    assert data['degrees'] == [1, 1, 2]
    assert sorted(data['class_sizes']) == [1, 2, 3]


def test_cap(s3):
    with pytest.raises(CapExceeded):
        character_table(s3, Settings({'table_cap': 5}))


def test_identity_fixes_every_character(q8):
    table = character_table(q8)
    cp = class_permutation(q8, table, identity_automorphism(q8))
    assert cp.is_identity()
    assert dual_map(table, cp) == tuple(range(table.class_count))


@pytest.mark.parametrize("fixture", ['c5', 'c6', 'v4', 's3', 'd4', 'q8', 'a4'])
def test_fixed_characters_count_twisted_classes(request, fixture):
    G = request.getfixturevalue(fixture)
    for phi in all_automorphisms(G):
        result = verify_tbft_finite(G, phi)
        assert result.ok, (phi, result)
        assert bool(result)
