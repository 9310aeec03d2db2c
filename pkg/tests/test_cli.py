"""Exit codes, output formats and determinism of the command line interface."""

import json
import random

import pytest

from schubert3.cli import run_cli
from schubert3.oracle import PlueckerLine, lines_meeting_four, random_four_lines


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_text_output(capsys):
    code, out, _ = run(capsys, "eval", "--space", "G", "g^4")
    assert code == 0
    assert out == "2*G = 2\n"


def test_eval_monomial_basis(capsys):
    code, out, _ = run(capsys, "eval", "--space", "G", "--basis", "monomial", "g^4")
    assert code == 0
    assert out == "2*c2^2 = 2\n"


def test_eval_without_top_value(capsys):
    code, out, _ = run(capsys, "eval", "--space", "PS", "p*g")
    assert code == 0
    assert out == "p^2 + g_e\n"


def test_eval_zero(capsys):
    code, out, _ = run(capsys, "eval", "--space", "G", "g_p*g_e")
    assert code == 0
    assert out == "0\n"


def test_eval_json_schema(capsys):
    code, out, _ = run(capsys, "eval", "--space", "G", "--json", "g^4")
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "space": "G",
        "input": "g^4",
        "monomial": "2*c2^2",
        "schubert": "2*G",
        "top": 2,
    }
    assert isinstance(payload["top"], int)


def test_eval_json_omits_missing_top(capsys):
    code, out, _ = run(capsys, "eval", "--space", "G", "--json", "g^2")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"space", "input", "monomial", "schubert"}
    assert payload["schubert"] == "g_p + g_e"


def test_eval_unknown_symbol_is_usage_error(capsys):
    code, out, err = run(capsys, "eval", "--space", "P3", "eps")
    assert code == 2
    assert "unknown symbol" in err
    assert "available" in err


def test_eval_parse_error(capsys):
    code, _, err = run(capsys, "eval", "--space", "G", "g^-1")
    assert code == 2
    assert "parse error" in err


def test_eval_rejects_unknown_space(capsys):
    code, _, err = run(capsys, "eval", "--space", "X", "g")
    assert code == 2


def test_usage_error_without_arguments(capsys):
    assert run(capsys, )[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_verify_formulas_table(capsys):
    code, out, _ = run(capsys, "verify-formulas")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 27
    assert all(line.endswith("ok") for line in lines)
    labels = {line.split()[0] for line in lines}
    assert labels == {str(k) for k in range(1, 15)} | {"I", "II", "III"}


def test_verify_formulas_single_space(capsys):
    code, out, _ = run(capsys, "verify-formulas", "--space", "G")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 13
    assert all(" G " in line for line in lines)


def test_tangent_count_output(capsys):
    code, out, _ = run(capsys, "tangent-count", "4")
    assert code == 0
    assert out == "12\n"
    code, out, _ = run(capsys, "tangent-count", "4", "--trace")
    assert out.splitlines()[0] == "12"
    assert any("excess" in line for line in out.splitlines())
    code, out, _ = run(capsys, "tangent-count", "4", "--json")
    payload = json.loads(out)
    assert payload["n"] == 4 and payload["count"] == 12
    assert isinstance(payload["trace"], list) and payload["trace"]


def test_bitangent_count_output(capsys):
    code, out, _ = run(capsys, "bitangent-count", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "28"
    assert lines[1:] == [
        "2*eps22 = (p1 + p2 - g)*(p3 + p4 - g)",
        "2*eps22 = 4*p1*p3 - 4*g*p1 + g_e + g_p",
        "2*eps22*g_e = 4*p1*p3*g_e - 4*p1^3*g - 3*G",
    ]


def test_bitangent_count_trace_adds_interpretation(capsys):
    code, out, _ = run(capsys, "bitangent-count", "7", "--trace")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "700"
    assert "G -> n*(n-1)*(n-2)*(n-3)" in lines
    assert lines[-1] == "count = 700"


def test_bitangent_count_json(capsys):
    code, out, _ = run(capsys, "bitangent-count", "4", "--json")
    payload = json.loads(out)
    assert payload["n"] == 4 and payload["count"] == 28
    assert len(payload["trace"]) == 8
    assert payload["trace"][-1] == "count = 28"


def test_bitangent_count_rejects_nonpositive(capsys):
    assert run(capsys, "bitangent-count", "0")[0] == 2
    assert run(capsys, "tangent-count", "0")[0] == 2


def test_oracle_four_lines_seeded(capsys):
    code, first, _ = run(capsys, "oracle", "four-lines", "--seed", "42")
    assert code == 0
    payload = json.loads(first)
    assert payload["seed"] == 42
    assert len(payload["lines"]) == 4
    assert payload["total_multiplicity"] == 2
    code, second, _ = run(capsys, "oracle", "four-lines", "--seed", "42")
    assert second == first


def test_oracle_four_lines_matches_library(capsys):
    lines = random_four_lines(random.Random(42))
    result = lines_meeting_four(*lines)
    _, out, _ = run(capsys, "oracle", "four-lines", "--seed", "42")
    payload = json.loads(out)
    assert payload["infinite"] == result.infinite
    got = [tuple(entry["coords"]) for entry in payload["solutions"]]
    want = [
        tuple(c if isinstance(c, int) else str(c) for c in line.coords)
        for line, _ in result.solutions
    ]
    assert got == want


def test_oracle_four_lines_from_file(capsys, tmp_path):
    path = tmp_path / "tetrahedron.json"
    path.write_text(
        json.dumps(
            {
                "lines": [
                    [1, 0, 0, 0, 0, 0],
                    [0, 0, 0, 0, 0, 1],
                    [0, 0, 0, 1, 0, 0],
                    [0, 0, 1, 0, 0, 0],
                ]
            }
        )
    )
    code, out, _ = run(capsys, "oracle", "four-lines", "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert "seed" not in payload
    assert not payload["infinite"]
    coords = {tuple(entry["coords"]) for entry in payload["solutions"]}
    assert coords == {(0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0)}
    assert all(entry["multiplicity"] == 1 for entry in payload["solutions"])


def test_oracle_four_lines_file_errors(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"lines": [[1, 0, 0, 0, 0, 0]]}))
    assert run(capsys, "oracle", "four-lines", "--input", str(path))[0] == 2
    path.write_text(json.dumps({"lines": [[1, 0, 0, 1, 0, 0]] * 4}))
    assert run(capsys, "oracle", "four-lines", "--input", str(path))[0] == 2
    assert run(capsys, "oracle", "four-lines", "--input", str(tmp_path / "nope"))[0] == 2


def test_oracle_four_lines_rational_file_input(capsys, tmp_path):
    path = tmp_path / "scaled.json"
    path.write_text(
        json.dumps(
            {
                "lines": [
                    ["1/2", 0, 0, 0, 0, 0],
                    [0, 0, 0, 0, 0, "3"],
                    [0, 0, 0, "2/3", 0, 0],
                    [0, 0, 1, 0, 0, 0],
                ]
            }
        )
    )
    code, out, _ = run(capsys, "oracle", "four-lines", "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["lines"][0] == [1, 0, 0, 0, 0, 0]
    assert payload["total_multiplicity"] == 2


def test_oracle_pencil(capsys):
    code, out, _ = run(capsys, "oracle", "pencil", "--degree", "2", "--seed", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 2
    assert payload["degree"] == 2 and payload["seed"] == 1
    assert len(payload["plane"]) == 4 and len(payload["vertex"]) == 4
    assert payload["surface"]
    code, again, _ = run(capsys, "oracle", "pencil", "--degree", "2", "--seed", "1")
    assert again == out


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10
    assert all(line.startswith("ok ") for line in lines)
