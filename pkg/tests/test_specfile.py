import json

import pytest

from twisted_link import (LatticeAbelianEndo, QuasicyclicEndo, Settings, SpecParseError, load_spec, parse_element,
                          parse_spec)


def test_constructor_spec():
    spec = parse_spec({"constructor": "symmetric", "args": [3]})
    assert spec.kind == 'perm'
    assert spec.group.order == 6
    assert spec.automorphism is None


def test_generator_spec():
    spec = parse_spec({"degree": 3, "generators": ["(0 1)", [1, 2, 0]], "name": "S3"})
    assert spec.group.order == 6
    assert spec.group.name == "S3"


def test_automorphism_images():
    spec = parse_spec({"constructor": {"name": "cyclic", "args": [5]},
                       "automorphism": {"images": ["(0 2 4 1 3)"]}})
    assert spec.automorphism.order == 4
    by_id = parse_spec({"constructor": "cyclic", "args": [5], "automorphism": [1]})
    assert by_id.automorphism.group.order == 5
    with pytest.raises(SpecParseError, match="^NotBijective"):
        parse_spec({"constructor": "cyclic", "args": [5], "automorphism": [0]})


def test_parse_element():
    assert parse_element([1, 0, 2], 3).images == (1, 0, 2)
    assert parse_element("(0 2)", 3).images == (2, 1, 0)


@pytest.mark.parametrize("data", [
    [1, 2],
    {"kind": "weird"},
    {"generators": []},
    {"degree": 0},
    {"degree": 3, "generators": ["(0 1"]},
    {"degree": 3, "generators": [[1, 0]]},
    {"degree": 3, "generators": [7]},
    {"constructor": "nope"},
    {"constructor": {"args": [3]}},
    {"degree": 3, "generators": ["(0 1 2)"], "automorphism": {"images": ["(0 1)"]}},
    {"degree": 3, "generators": ["(0 1 2)"], "automorphism": {"images": "(0 1 2)"}},
    {"ambient_rank": 1, "relations": [[6]]},
    {"ambient_rank": 1, "matrix": [[0.5]]},
    {"ambient_rank": 2, "matrix": [[1, 0], [0]]},
    {"ambient_rank": 1, "relations": [[6]], "matrix": [[1, 0], [0, 1]]},
    {"kind": "prufer", "p": 4, "d": 1, "matrix": [[3]]},
    {"prufer": {"p": 2, "matrix": [[3]]}},
    {"prufer": "p2"},
    {"kind": "prufer", "p": 2.0, "d": 1, "matrix": [[3]]},
    {"kind": "prufer", "p": 2, "d": True, "matrix": [[3]]},
])
def test_rejected(data):
    with pytest.raises(SpecParseError):
        parse_spec(data)


def test_homomorphism_errors_are_wrapped():
    with pytest.raises(SpecParseError, match="^NotAHomomorphism"):
        parse_spec({"constructor": "symmetric", "args": [3],
                    "automorphism": {"images": ["(0 1 2)", "(0 1 2)"]}})


def test_closure_cap_is_a_parse_error():
    with pytest.raises(SpecParseError):
        parse_spec({"constructor": "symmetric", "args": [5]}, Settings({'closure_cap': 50}))


def test_abelian_spec():
    spec = parse_spec({"ambient_rank": 1, "relations": [[6]], "matrix": [[5]]})
    assert spec.kind == 'abelian'
    assert isinstance(spec.endo, LatticeAbelianEndo)
    assert spec.endo.group.order == 6


def test_prufer_specs():
    nested = parse_spec({"prufer": {"p": 2, "d": 1, "matrix": [[3]], "subgroups": [{"finite": [["1/8"]]}]}})
    assert nested.kind == 'prufer'
    assert isinstance(nested.endo, QuasicyclicEndo)
    assert nested.subgroups == ({"finite": [["1/8"]]},)
    flat = parse_spec({"kind": "prufer", "p": 3, "d": 1, "matrix": [[4]]})
    assert flat.endo.p == 3
    assert flat.subgroups == ()


def test_load_spec(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps({"constructor": "symmetric", "args": [3]}))
    assert load_spec(str(path)).group.order == 6
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(SpecParseError):
        load_spec(str(broken))
    with pytest.raises(SpecParseError):
        load_spec(str(tmp_path / "missing.json"))
