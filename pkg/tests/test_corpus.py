import logging

import pytest

from twisted_link import (DEFAULT_CORPUS, INFINITE, ConfigError, Settings, VerificationReport, construct, jsonable,
                          parse_abelian, parse_prufer, run_corpus)

SMALL = {
    "groups": [{"name": "C4", "constructor": "cyclic", "args": [4]}],
    "abelian": [{"name": "Z6-negation", "ambient_rank": 1, "relations": [[6]], "matrix": [[5]]}],
    "prufer": [{"name": "p2", "p": 2, "d": 1, "matrix": [[3]], "subgroups": [{"finite": [["1/4"]]}]}],
    "settings": {"truncation_level": 3},
}


def test_empty_config():
    assert run_corpus({}) == []


@pytest.mark.parametrize("config", [
    "not a dict",
    {"groups": [{"name": "X", "constructor": "nope"}]},
    {"groups": [{"name": "X"}]},
    {"groups": [{"name": "X", "constructor": "cyclic", "args": [2]},
                {"name": "X", "constructor": "cyclic", "args": [3]}]},
    {"abelian": ["oops"]},
    {"prufer": "p2"},
    {"groups": [["cyclic", [2]]]},
])
def test_bad_config(config):
    with pytest.raises(ConfigError):
        run_corpus(config)


@pytest.mark.parametrize("p", ["a", 4.0, True])
def test_malformed_prufer_is_captured(p):
    config = {
        "abelian": [{"name": "Z6", "ambient_rank": 1, "relations": [[6]], "matrix": [[5]]}],
        "prufer": [{"name": "bad", "p": p, "d": 1, "matrix": [[1]]}],
    }
    good, bad = run_corpus(config)
    assert good.passed
    assert bad.case_id == "prufer/bad"
    assert bad.error.startswith("SpecParseError: p must be an integer")
    assert not bad.passed


def test_small_corpus():
    reports = run_corpus(SMALL)
    assert [r.case_id for r in reports] == ["C4/group", "C4/0", "C4/1", "abelian/Z6-negation", "prufer/p2"]
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]
    perm = reports[1]
    assert perm.kind == 'perm'
    assert perm.group == {'order': 4, 'classes': 4}
    assert {'shift', 'oracle', 'tbft', 'sigma', 'jabara'} <= set(perm.checks)
    abelian = reports[3]
    assert abelian.values['R'] == 2
    assert abelian.values['fixed'] == 2
    assert abelian.checks['tbft_witness']
    prufer = reports[4]
    assert prufer.values['fixed'] == 2
    assert prufer.values['quotients'][0]['order'] == 4


def test_corpus_is_deterministic():
    first = [r.to_dict() for r in run_corpus(SMALL)]
    second = [r.to_dict() for r in run_corpus(SMALL, Settings({'workers': 3}))]
    assert first == second


def test_bad_automorphism_is_reported(caplog):
    config = {"groups": [{
        "name": "S3", "constructor": "symmetric", "args": [3],
        "automorphisms": [{"images": ["(0 1 2)", "(0 1 2)"]}, {"images": ["(0 1 2)", "(1 2)"]}],
    }]}
    with caplog.at_level(logging.WARNING, logger="twisted_link.corpus"):
        reports = run_corpus(config)
    bad, good = reports[1], reports[2]
    assert bad.error.startswith("NotAHomomorphism")
    assert not bad.passed
    assert good.error is None
    assert good.passed
    assert good.values['R'] == 3
    assert "NotAHomomorphism" in caplog.text


def test_report_dict():
    report = VerificationReport("x/0", "perm", checks={'b': True, 'a': False}, values={'R': INFINITE})
    report.timings['total'] = 0.5
    data = report.to_dict()
    assert list(data['checks']) == ['a', 'b']
    assert data['values'] == {'R': 'infinite'}
    assert not data['passed']
    assert 'timings' not in data
    assert report.to_dict(timings=True)['timings'] == {'total': 0.5}


def test_jsonable():
    assert jsonable(INFINITE) == "infinite"
    assert jsonable(2 ** 70) == str(2 ** 70)
    assert jsonable((1, (2, 3))) == [1, [2, 3]]
    assert jsonable({1: True, 'n': None}) == {'1': True, 'n': None}


def test_default_corpus_entries_parse():
    names = [entry['name'] for entry in DEFAULT_CORPUS['groups']]
    assert len(names) == len(set(names))
    for entry in DEFAULT_CORPUS['groups'][:20]:
        assert construct(entry['constructor'], entry['args']).order >= 1
    for entry in DEFAULT_CORPUS['abelian']:
        parse_abelian(entry)
    for entry in DEFAULT_CORPUS['prufer']:
        parse_prufer(entry)
