import io
import json

import pytest

from profmackey import mackey as mk
from profmackey.cli import emit, run
from profmackey.finite_group import builtin


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def js(*argv):
    code, out, _ = call(*argv)
    assert code == 0
    return json.loads(out)


def test_cb():
    r = js("cb", "(P*P)")
    assert r["rank"] == 3 and r["injective_dimension"] == 2


def test_burnside_idempotents():
    r = js("burnside", "--group", "C4", "--idempotents")
    rows = r["idempotents"]
    assert len(rows) == 3
    for i, row in enumerate(rows):
        assert row["marks"] == ["1/1" if j == i else "0/1" for j in range(3)]


def test_burnside_table_format():
    code, out, _ = call("burnside", "--group", "C3", "--idempotents", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    head = lines.index("idempotents:")
    assert len(lines[head + 3:]) == 2
    assert "-1/3" in lines[head + 4]


def test_mackey_check():
    assert js("mackey-check", "--group", "S3", "--functor", "burnside")["status"] == "all axioms pass"


def test_mackey_check_file(tmp_path):
    G = builtin("S3")
    M = mk.fixed_point_functor(G)
    f = tmp_path / "m.json"
    f.write_text(json.dumps(mk.to_json(M)))
    assert js("mackey-check", "--functor", str(f))["status"] == "all axioms pass"
    f.write_text("{not json")
    code, out, _ = call("mackey-check", "--functor", str(f))
    assert code == 1 and json.loads(out)["error"]["type"] == "InvalidInput"


def test_group():
    r = js("group", "--group", "S4")
    assert r["subgroups"] == 30 and r["conjugacy_classes"] == 11


def test_split_and_roundtrip():
    r = js("split", "--group", "S3", "--seed", "5")
    assert len(r["family"]) == 4
    r = js("roundtrip", "--group", "S3", "--seed", "5")
    assert r["ok"]
    r = js("roundtrip", "--tower", "Zp:2", "--depth", "2", "--functor", "zp")
    assert r["ok"]


def test_split_tower_is_domain_error():
    code, out, _ = call("split", "--tower", "Zp:2", "--depth", "2")
    assert code == 1 and json.loads(out)["error"]["type"] == "NotFinite"


def test_tower_and_stalk():
    r = js("tower", "--tower", "Zp:3", "--depth", "2")
    assert r["orders"] == [1, 3, 9]
    r = js("stalk", "--tower", "Zp:2", "--depth", "3", "--thread", "e")
    assert r["stalk"]["dims"] == [1, 1, 1, 1]


def test_ext():
    r = js("ext", "P")
    assert r["degrees"] == {"0": "zero", "1": "nonzero", "2": "zero"}


def test_domain_errors():
    code, out, err = call("cb", "(P*P")
    assert code == 1
    e = json.loads(out)["error"]
    assert e["type"] == "SpaceSyntaxError" and e["offset"] == 4
    code, out, _ = call("group", "--group", "Q8")
    assert code == 1 and json.loads(out)["error"]["type"] == "UnknownGroup"
    assert "Traceback" not in out


@pytest.mark.parametrize("argv", [
    [], ["nope"], ["cb"], ["group", "--group", "S3", "--bogus"], ["tower", "--tower", "Zp:2", "--depth", "0"],
    ["group", "--group", "S3", "--format", "xml"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and err.startswith("usage error")


def test_deterministic_output():
    a = call("burnside", "--group", "S3", "--idempotents")
    b = call("burnside", "--group", "S3", "--idempotents")
    assert a == b


def test_emit():
    assert emit({}) == "{}"
    assert emit({"a": [{"x": 1}, {"x": 22}]}, "table").splitlines() == ["a:", "  x", "  --", "  1", "  22"]
    with pytest.raises(ValueError):
        emit({}, "xml")
