"""Command-line interface: output schemas, determinism, exit codes."""
import json

import pytest

from schubpull.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pullback_g2_json(capsys):
    code, out, _ = run_cli(
        capsys, "pullback", "--type", "G2", "--p", "2", "--degree", "6", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["quotient_dim"] == 1
    assert payload["cartan_type"] == "G2"
    assert payload["classes"] == [
        {"label": "+x6^1", "word": [1, 2, 1]},
        {"label": "+x6^1", "word": [2, 1, 2]},
    ]


def test_json_round_trips_byte_identical(capsys):
    code, out, _ = run_cli(
        capsys, "pullback", "--type", "F4", "--p", "3", "--degree", "8", "--format", "json"
    )
    assert code == 0
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


def test_comodule_g2_longest_word(capsys):
    code, out, _ = run_cli(
        capsys,
        "comodule", "--type", "G2", "--p", "2", "--word", "1 2 1 2 1 2", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["word"] == [1, 2, 1, 2, 1, 2]
    assert payload["terms"] == [
        {"label": "1", "v": [1, 2, 1, 2, 1, 2]},
        {"label": "+x6^1", "v": [1, 2, 1]},
        {"label": "+x6^1", "v": [2, 1, 2]},
    ]


def test_dims_g2(capsys):
    code, out, _ = run_cli(
        capsys, "dims", "--type", "G2", "--p", "2", "--max-degree", "12", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["dims"] == {str(d): (1 if d == 6 else 0) for d in range(2, 13, 2)}
    assert payload["expected_dims"] == {"0": 1, "6": 1}


def test_verify_single_case(capsys):
    code, out, _ = run_cli(capsys, "verify", "--case", "g2_p2_d6_x6", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["reports"][0]["case"] == "g2_p2_d6_x6"


def test_verify_threaded_output_identical(capsys):
    args = ["verify", "--case", "g2_p2_d6_x6", "--case", "f4_p2_d6_x6", "--format", "json"]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args, "--threads", "4")
    assert (code1, out1) == (code2, out2)


def test_verify_failure_exit_code(capsys, tmp_path, monkeypatch):
    from schubpull.verify import fixture_dir

    text = (fixture_dir() / "g2_p2_d6_x6.txt").read_text().splitlines()
    (tmp_path / "bad.txt").write_text("\n".join(text[:-1]) + "\n")
    code, out, _ = run_cli(capsys, "verify", "--all", "--fixtures", str(tmp_path))
    assert code == 1
    assert "FAIL bad" in out


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["pullback", "--type", "G2"])  # missing required flags
    assert exc.value.code == 2
    code, _, err = run_cli(capsys, "pullback", "--type", "G2", "--p", "2", "--degree", "7")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "pullback", "--type", "Z9", "--p", "2", "--degree", "6")
    assert code == 2
    code, _, err = run_cli(capsys, "verify", "--case", "no_such_case")
    assert code == 2


def test_sc_alias(capsys):
    code, out, _ = run_cli(
        capsys,
        "pullback", "--type", "E6", "--p", "2", "--degree", "6",
        "--lattice", "sc", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["lattice"] == "simply_connected"
    assert len(payload["classes"]) == 12


def test_text_output_mentions_classes(capsys):
    code, out, _ = run_cli(capsys, "pullback", "--type", "G2", "--p", "2", "--degree", "6")
    assert code == 0
    assert "+x6^1" in out and "1 2 1" in out
