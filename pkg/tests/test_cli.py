import json

import pytest

from twisted_link import ReportDb
from twisted_link.cli import build_parser, main

S3 = {"constructor": "symmetric", "args": [3], "automorphism": {"images": ["(0 1 2)", "(1 2)"]}}
Z6 = {"ambient_rank": 1, "relations": [[6]], "matrix": [[5]]}
PRUFER = {"prufer": {"p": 2, "d": 1, "matrix": [[3]], "subgroups": [{"finite": [["1/8"]]}]}}
CORPUS = {
    "groups": [{"name": "C3", "constructor": "cyclic", "args": [3]}],
    "abelian": [dict(Z6, name="Z6")],
    "settings": {"truncation_level": 2},
}


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return write


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys, write_json):
    code, out, _ = run(capsys, ["info", write_json("s3.json", S3)])
    assert code == 0
    assert json.loads(out) == {'order': 6, 'classes': 3, 'derived_length': 2, 'rank': 2}


def test_info_prufer(capsys, write_json):
    code, out, _ = run(capsys, ["info", write_json("p.json", PRUFER)])
    assert code == 0
    assert json.loads(out) == {'p': 2, 'd': 1, 'order': 'infinite'}


def test_twisted(capsys, write_json):
    code, out, _ = run(capsys, ["twisted", write_json("s3.json", S3)])
    assert code == 0
    data = json.loads(out)
    assert data['R'] == 3
    assert data['fixed'] == 3
    assert data['oracle'] and data['tbft']


def test_twisted_abelian(capsys, write_json):
    code, out, _ = run(capsys, ["twisted", write_json("z6.json", Z6)])
    assert code == 0
    assert json.loads(out) == {'R': 2, 'fixed': 2, 'witness_order': 2}


def test_chartable_pretty(capsys, write_json):
    code, out, _ = run(capsys, ["chartable", write_json("s3.json", S3), "--pretty"])
    assert code == 0
    assert "degrees" in out
    assert "orthogonality  True" in out


def test_abelian(capsys, write_json):
    code, out, _ = run(capsys, ["abelian", write_json("z6.json", Z6)])
    assert code == 0
    data = json.loads(out)
    assert data['torsion'] == {'free_rank': 0, 'parts': [[2, [1]], [3, [1]]]}
    assert data['fixed_invariants'] == [2]
    assert data['witness_ok']


def test_prufer(capsys, write_json):
    code, out, _ = run(capsys, ["prufer", write_json("p.json", PRUFER), "--truncation-level", "3"])
    assert code == 0
    data = json.loads(out)
    assert data['R'] == 1
    assert data['fixed'] == 2
    assert data['levels'] == {'2': 2, '3': 2}
    assert data['quotients'][0]['order'] == 8


def test_wrong_kind(capsys, write_json):
    code, _, err = run(capsys, ["abelian", write_json("s3.json", S3)])
    assert code == 2
    assert err.startswith("SpecParseError")


def test_missing_spec(capsys, tmp_path):
    code, _, err = run(capsys, ["info", str(tmp_path / "missing.json")])
    assert code == 2
    assert "cannot read" in err


def test_out_file(capsys, write_json, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, _ = run(capsys, ["info", write_json("s3.json", S3), "--out", str(out_file)])
    assert code == 0
    assert out == ""
    assert json.loads(out_file.read_text())['order'] == 6


def test_corpus(capsys, write_json, tmp_path):
    db_file = tmp_path / "runs.db"
    config = write_json("corpus.json", CORPUS)
    code, out, _ = run(capsys, ["corpus", config, "--pretty", "--db", str(db_file), "--run-name", "ci"])
    assert code == 0
    assert out.splitlines() == ["PASS C3/group", "PASS C3/0", "PASS C3/1", "PASS abelian/Z6"]
    with ReportDb(str(db_file)) as db:
        assert db.run_names() == ["ci"]
        assert len(db.load_reports("ci")) == 4


def test_corpus_json_timings(capsys, write_json):
    code, out, _ = run(capsys, ["corpus", write_json("corpus.json", CORPUS), "--timings", "--workers", "2"])
    assert code == 0
    data = json.loads(out)
    assert [case['case_id'] for case in data] == ["C3/group", "C3/0", "C3/1", "abelian/Z6"]
    assert all('total' in case['timings'] for case in data)


def test_corpus_failure_exit_code(capsys, write_json):
    config = {"groups": [{"name": "S3", "constructor": "symmetric", "args": [3],
                          "automorphisms": [{"images": ["(0 1 2)", "(0 1 2)"]}]}]}
    code, out, _ = run(capsys, ["corpus", write_json("bad.json", config), "--pretty"])
    assert code == 1
    assert "FAIL S3/0  NotAHomomorphism" in out


def test_corpus_bad_config(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("[")
    code, _, err = run(capsys, ["corpus", str(path)])
    assert code == 2
    assert err.startswith("ConfigError")


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
