import json

import jsonschema
import pytest

from dihedral_blocks.cli import DEFAULT_CORPUS, REPORT_SCHEMA, UsageProblem, parse_corpus, run


def report(tmp_path, *args):
    path = tmp_path / "r.json"
    code = run(["--json", str(path), *args])
    data = json.loads(path.read_text()) if path.exists() else None
    if data is not None:
        jsonschema.validate(data, REPORT_SCHEMA)
    return code, data


def test_group_info(tmp_path):
    code, data = report(tmp_path, "group", "info", "psl2:7")
    assert code == 0 and data["overall"] == "pass"
    assert data["tool"] and data["command"] == "group info psl2:7"


@pytest.mark.parametrize("args", [["group", "info", "psl2:4"], ["group", "info", "nonsense"],
                                  ["gendec", "build", "--case", "c", "--n", "3", "--q", "7"],
                                  ["transport", "psl2:7"], ["no-such-command"]])
def test_usage_errors_exit_2(args):
    assert run(args) == 2


def test_gendec_build_prints_matrix(capsys):
    assert run(["gendec", "build", "--case", "d", "--n", "3", "--q", "7"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("d 3 7 4\n1,0,0,1,1\n")


def test_gendec_verify_wrong_case_fails(tmp_path):
    code, data = report(tmp_path, "gendec", "verify", "--case", "c", "--group", "pgl2:5", "--q", "9")
    assert code == 1 and data["overall"] == "fail"


def test_gendec_verify_passes(tmp_path):
    code, data = report(tmp_path, "gendec", "verify", "--case", "e", "--group", "pgl2:5")
    assert code == 0
    sources = json.dumps(data)
    assert "verified" in sources


def test_scott_and_brauer(tmp_path):
    code, data = report(tmp_path, "scott", "psl2:7", "--at", "borel")
    assert code == 0, data
    code, data = report(tmp_path, "brauer", "psl2:7")
    assert code == 0, data


def test_transport_verdicts(tmp_path):
    code, data = report(tmp_path, "transport", "prod(s:4,s:5)")
    assert code == 0
    assert "stable-only" in json.dumps(data)


def test_corpus_filter_is_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run(["--json", str(a), "corpus", "run", "--filter", "fusion,blocks"]) == 0
    assert run(["--json", str(b), "corpus", "run", "--filter", "fusion,blocks"]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert all(c["timing"] is None for c in data["checks"])
    assert data["overall"] == "pass"


def test_unknown_filter_is_an_empty_run(tmp_path):
    code, data = report(tmp_path, "corpus", "run", "--filter", "no-such-tag")
    assert code == 0
    assert data["checks"] == []


def test_fusion_mismatch_is_a_skip(tmp_path):
    code, data = report(tmp_path, "brauer", "prod(pgl2:3,psl2:7)")
    assert code == 0
    assert data["overall"] == "skip"
    assert "FusionMismatch" in json.dumps(data)


def test_custom_corpus(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# comment\nmine psl2:7 CASE3_PSL d 3\n")
    out = tmp_path / "r.json"
    assert run(["--corpus", str(path), "--json", str(out), "corpus", "run", "--filter", "fusion"]) == 0
    assert "mine" in out.read_text()


def test_corpus_parsing():
    entries = parse_corpus(DEFAULT_CORPUS)
    assert [e.id for e in entries] == sorted(e.id for e in entries)
    with pytest.raises(UsageProblem):
        parse_corpus("broken line\n")


def test_schema_and_version(capsys):
    assert run(["schema"]) == 0
    assert json.loads(capsys.readouterr().out) == REPORT_SCHEMA
    assert run(["--version"]) == 0
