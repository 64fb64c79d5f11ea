import threading
from concurrent.futures import ThreadPoolExecutor

import pytest

from twisted_link import (GroupWorkspace, NotSoluble, QuotientNotAbelian, Settings, abelian_rank, all_automorphisms,
                          alternating, center, class_coset_union, commutator_subgroup, construct, derived_reduction,
                          identity_automorphism, inner_bound_check, reduction_witness, soluble_profile,
                          soluble_radical, subgroup_counting_check, symmetric)


def test_reduction_on_s3(s3):
    trace = derived_reduction(s3, identity_automorphism(s3))
    assert len(trace.levels) == 2
    top, bottom = trace.levels
    assert (top.R, top.R_next, top.fixed_alpha) == (3, 3, 2)
    assert (bottom.R, bottom.R_next, bottom.fixed_alpha) == (3, 1, 3)
    assert top.R_beta == 2
    assert trace.ok


@pytest.mark.parametrize("fixture", ['d4', 'q8', 'a4'])
def test_reduction_for_every_automorphism(request, fixture):
    G = request.getfixturevalue(fixture)
    for phi in all_automorphisms(G):
        assert derived_reduction(G, phi).ok


def test_reduction_needs_soluble():
    A5 = alternating(5)
    with pytest.raises(NotSoluble):
        derived_reduction(A5, identity_automorphism(A5))


def test_inner_bound(d4, s3):
    report = inner_bound_check(d4, center(d4))
    assert report.inner_order == 4
    assert report.quotient_rank == 2
    assert report.bound == 8
    assert report.ok
    with pytest.raises(QuotientNotAbelian):
        inner_bound_check(s3, s3.trivial_subgroup())


def test_abelian_rank(v4, c6):
    assert abelian_rank(v4) == 2
    assert abelian_rank(c6) == 1


def test_soluble_radical():
    assert soluble_radical(alternating(5)).index == 60
    assert soluble_radical(construct('direct_product', [['alternating', [5]], ['cyclic', [2]]])).order == 2
    assert soluble_radical(symmetric(4)).index == 1


def test_soluble_profile(s3):
    profile = soluble_profile(s3, identity_automorphism(s3))
    assert profile.to_json() == {
        'fixed': 6,
        'rank': 2,
        'radical_order': 6,
        'radical_index': 1,
        'radical_derived_length': 2,
    }


def test_class_coset_union(s3):
    ident = identity_automorphism(s3)
    assert class_coset_union(s3, ident, s3.trivial_subgroup())
    assert not class_coset_union(s3, ident, commutator_subgroup(s3.whole()))


def test_reduction_witness_on_s3(s3):
    witness = reduction_witness(s3, identity_automorphism(s3))
    assert witness.H_order == 3
    assert witness.core.order == 1
    assert witness.R == witness.R_quotient == 3
    assert witness.ok


@pytest.mark.parametrize("fixture", ['v4', 'd4', 'q8', 'a4'])
def test_reduction_witness_keeps_classes_apart(request, fixture):
    G = request.getfixturevalue(fixture)
    for phi in all_automorphisms(G):
        assert reduction_witness(G, phi).ok


def test_subgroup_counting(v4):
    report = subgroup_counting_check(v4, 2)
    assert report.rank == 2
    assert report.counts == {1: (1, 1), 2: (3, 4)}
    assert report.ok


def test_workspace(s3):
    workspace = GroupWorkspace()
    workspace.add_group("S3", s3)
    assert len(workspace.classes("S3")) == 3
    assert len(workspace.automorphisms("S3")) == 6
    assert workspace.rank("S3") == 2
    assert workspace.table("S3").degrees == (1, 1, 2)
    assert [n.order for n in workspace.normal_subgroups("S3")] == [1, 3, 6]
    with pytest.raises(KeyError):
        workspace.group("S4")


def test_workspace_entries_fill_concurrently(s3):
    workspace = GroupWorkspace()
    workspace.add_group("S3", s3)
    other_started = threading.Event()

    def slow():
        # finishes only once the other entry has started computing
        assert other_started.wait(timeout=10)
        return "slow"

    def fast():
        other_started.set()
        return "fast"

    with ThreadPoolExecutor(2) as pool:
        first = pool.submit(workspace._cached, "S3", "slow", slow)
        second = pool.submit(workspace._cached, "S3", "fast", fast)
        assert (first.result(timeout=20), second.result(timeout=20)) == ("slow", "fast")


def test_workspace_computes_each_entry_once(s3):
    workspace = GroupWorkspace()
    workspace.add_group("S3", s3)
    calls = []

    def compute():
        calls.append(1)
        return len(workspace.group("S3").elements)

    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(lambda _: workspace._cached("S3", "size", compute), range(32)))
    assert results == [6] * 32
    assert len(calls) == 1


def test_workspace_rank_over_cap():
    workspace = GroupWorkspace(Settings({'rank_cap': 10}))
    workspace.add_group("S4", symmetric(4))
    assert workspace.rank("S4") is None
