import json

import pytest

from qhk.cli import main


def _strip(o):
    if isinstance(o, dict):
        return {k: _strip(v) for k, v in o.items() if k != "elapsed"}
    if isinstance(o, list):
        return [_strip(v) for v in o]
    return o


def test_lemma2_json(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--n", "2,3,4", "--check", "lemma2", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"version", "config", "reports", "kernel"}
    assert [r["actual"]["coefficient of h e_2"] for r in doc["reports"]] == ["16/5", "56/15", "288/65"]
    assert doc["kernel"] == []


def test_json_is_deterministic(tmp_path):
    docs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        main(["--n", "2", "--check", "traces", "--format", "json", "--out", str(out), "--seed", "7"])
        docs.append(_strip(json.loads(out.read_text())))
    assert json.dumps(docs[0], sort_keys=True) == json.dumps(docs[1], sort_keys=True)


def test_all_at_n2_passes(capsys):
    assert main(["--n", "2", "--check", "all"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 8 and all(line.startswith(("PASS", "VACUOUS")) for line in lines)


def test_mutation_fails(capsys):
    assert main(["--n", "2", "--check", "lemma2", "--mutate", "coef-a"]) == 1
    assert capsys.readouterr().out.startswith("FAIL")


@pytest.mark.parametrize("argv", [
    ["--check", "nonsense"],
    ["--n", "1"],
    ["--n", "two"],
    ["--format", "xml"],
    ["--n", "5", "--check", "kernel"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
