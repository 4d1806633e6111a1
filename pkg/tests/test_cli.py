import csv
import io
import json

import pytest

from toeplitz_words.cli import main
from toeplitz_words.errors import SpecError
from toeplitz_words.spec_io import BUNDLED, parse_spec_file, parse_spec_text, spec_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- spec files ----------------------------------------------------------------


def test_bundled_grigorchuk():
    spec = parse_spec_file("grigorchuk")
    assert spec.tail.period == 3
    assert {spec.alphabet.name(x) for x in spec.tail.period_a} == {"b", "c", "d"}


@pytest.mark.parametrize("name", BUNDLED)
def test_roundtrip(name):
    spec = parse_spec_file(name)
    assert parse_spec_text(spec_to_json(spec)) == spec


@pytest.mark.parametrize("body,needle", [
    ('{"alphabet": ["a","b"], "a": ["a","b"], "n": [1, 2]}', "n[0]: n_k >= 2 required"),
    ('{"alphabet": ["a","b"], "a": ["a","a"], "n": [2, 2]}', "a[1]: a_k != a_(k+1) required"),
    ('{"alphabet": ["a","b"], "a": ["a","x"], "n": [2, 2]}', "a[1]: 'x' is not in the alphabet"),
    ('{"a": ["a"], "n": [2]}', "alphabet: missing field"),
    ('{"alphabet": ["a","b"], "a": ["a"], "n": [2], "tail": {"kind": "spiral"}}', "tail.kind"),
    ('{"alphabet": ["a","b"], "a": ["a"], "n": [2.5]}', "n[0]: expected an integer"),
])
def test_spec_errors(body, needle):
    with pytest.raises(SpecError) as exc:
        parse_spec_text(body, "x.json")
    assert needle in str(exc.value)


def test_json_syntax_position():
    with pytest.raises(SpecError) as exc:
        parse_spec_text('{\n  "alphabet": ["a",\n}', "bad.json")
    assert str(exc.value).startswith("bad.json:3:")


# -- commands --------------------------------------------------------------------


def test_verify_grigorchuk(capsys):
    code, out, _ = run(capsys, "verify", "--spec", "grigorchuk", "--depth", "5")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("0 failed, 0 skipped")


def test_verify_fibonacci(capsys):
    code, out, _ = run(capsys, "verify", "--spec", "fibonacci", "--depth", "8")
    assert code == 0 and "FAIL" not in out


def test_complexity_table(capsys):
    code, out, _ = run(capsys, "complexity", "--spec", "period_doubling", "--max-L", "64", "--mode", "both")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    header, body = rows[0], rows[1:]
    assert len(body) == 65
    f, o = header.index("formula"), header.index("oracle")
    assert all(r[f] == r[o] for r in body)


def test_debruijn_dot(capsys, tmp_path):
    target = tmp_path / "g1.dot"
    code, _, _ = run(capsys, "debruijn", "--spec", "grigorchuk", "--L", "1", "--format", "dot", "--out", str(target))
    assert code == 0
    lines = target.read_text().splitlines()
    assert sum("->" in x for x in lines) == 6
    assert sum("[label=" in x and "->" not in x for x in lines) == 4


@pytest.mark.parametrize("argv", [
    ("blocks", "--spec", "grigorchuk", "--k", "5"),
    ("complexity", "--spec", "nonb", "--max-L", "40", "--format", "json"),
    ("palindromes", "--spec", "gen_grigorchuk", "--max-L", "40"),
    ("repetitivity", "--spec", "period_doubling", "--max-L", "30"),
    ("debruijn", "--spec", "period_doubling", "--L", "5", "--format", "json"),
    ("verdicts", "--spec", "nonb"),
    ("spectrum", "--spec", "period_doubling", "--k", "4", "--method", "bands"),
    ("spectrum", "--spec", "period_doubling", "--k", "3", "--curve", "--grid", "50"),
    ("tracemap", "--spec", "period_doubling", "--k-max", "8", "--samples", "10", "--nest-grid", "500"),
    ("lyapunov", "--spec", "grigorchuk", "--E", "0.3", "--j-max", "2000"),
    ("gordon", "--spec", "grigorchuk", "--letter", "c", "--max-l", "40", "--samples", "3"),
    ("pq", "--spec", "fibonacci", "--j-level", "4", "--L-level", "9"),
    ("sturmian", "--spec", "fibonacci", "--k", "6"),
])
def test_deterministic_output(capsys, tmp_path, argv):
    outs = []
    for i in range(2):
        target = tmp_path / f"out{i}"
        code, _, err = run(capsys, *argv, "--out", str(target))
        assert code == 0, err
        outs.append(target.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_json_outputs_parse(capsys):
    _, out, _ = run(capsys, "verdicts", "--spec", "nonb")
    data = json.loads(out)
    assert data
    _, out, _ = run(capsys, "spectrum", "--spec", "period_doubling", "--k", "2", "--method", "eigen")
    data = json.loads(out)
    assert len(data["intervals"]) == 8


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"alphabet": ["a","b"], "a": ["a","b"], "n": [1, 2]}')
    assert run(capsys, "complexity", "--spec", str(bad))[0] == 2
    code, _, err = run(capsys, "complexity", "--spec", "grigorchuk", "--bogus")
    assert code == 2 and "unrecognized" in err
    assert run(capsys, "complexity", "--spec", str(tmp_path / "missing.json"))[0] == 5
    finite = tmp_path / "finite.json"
    finite.write_text('{"alphabet": ["a","b"], "a": ["a","b","a"], "n": [2, 2, 2], "r": [0, 0, 0]}')
    assert run(capsys, "blocks", "--spec", str(finite), "--k", "6")[0] == 3
    assert run(capsys, "debruijn", "--spec", "grigorchuk", "--L", "1", "--out", str(tmp_path / "no" / "dir.dot"))[0] == 5


def test_sturmian_commands(capsys):
    code, out, _ = run(capsys, "debruijn", "--spec", "fibonacci", "--L", "2", "--format", "stats")
    stats = json.loads(out)
    assert code == 0 and (stats["vertices"], stats["edges"]) == (3, 4)
    assert run(capsys, "spectrum", "--spec", "fibonacci")[0] == 2
