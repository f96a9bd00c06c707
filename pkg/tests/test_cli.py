import json

import pytest

from qweyl.cli.qweyl_cli import build_parser, main


def _stderr_payload(err: str) -> dict:
    line = next(l for l in reversed(err.splitlines()) if l.startswith("{"))
    return json.loads(line)


def test_build_algebra(capsys):
    assert main(["build-algebra", "--n", "2"]) == 0
    dump = json.loads(capsys.readouterr().out)
    assert len(dump["labels"]) == 8
    assert dump["dims"] == {"even": 4, "odd": 4}
    assert dump["coefficient_algebra"] is None


def test_build_current_algebra(capsys):
    assert main(["build-algebra", "--n", "2", "--coeff", "poly:2"]) == 0
    dump = json.loads(capsys.readouterr().out)
    assert dump["dims"] == {"even": 8, "odd": 8}
    assert dump["coefficient_algebra"]["labels"] == ["1", "t"]


def test_local_weyl_trivial(capsys):
    assert main(["local-weyl", "--lambda", "0,0"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["character"] == [{"weight": [0, 0], "even": 1, "odd": 0}]
    assert report["module"]["dims"] == {"even": 1, "odd": 0}


def test_character_csv(capsys):
    assert main(["irreducible", "--lambda", "1,0", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["lambda_1,lambda_2,even,odd", "1,0,1,1", "0,1,1,1"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "nested" / "w.json"
    assert main(["local-weyl", "--lambda", "1,0", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["dims"] == {"even": 2, "odd": 2}


def test_psi_file(tmp_path, capsys):
    psi = tmp_path / "psi.json"
    psi.write_text(json.dumps([["1", "0"], ["0", "0"]]))
    assert main(["local-weyl", "--coeff", "poly:2", "--psi", str(psi)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["highest_weight"] == [1, 0]


def test_invalid_rank_exits_with_input_error(capsys):
    assert main(["build-algebra", "--n", "1"]) == 2
    payload = _stderr_payload(capsys.readouterr().err)
    assert payload["exit_code"] == 2


def test_unknown_coefficient_algebra(capsys):
    assert main(["local-weyl", "--coeff", "poly:x", "--lambda", "1,0"]) == 2
    assert _stderr_payload(capsys.readouterr().err)["error"] == "InvalidJobError"


def test_non_dominant_weight(capsys):
    assert main(["local-weyl", "--lambda", "0,1"]) == 2
    assert _stderr_payload(capsys.readouterr().err)["error"] == "NonDominantWeightError"


def test_tensor_check_needs_second_weight(capsys):
    assert main(["tensor-check", "--coeff", "sum:C+C", "--lambda", "1,0"]) == 2


def test_bad_lambda_is_rejected_by_the_parser():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["local-weyl", "--lambda", "one,zero"])


def test_verify_presentation_suite(capsys):
    assert main(["verify", "--suite", "presentation", "--n", "3"]) == 0
    results = json.loads(capsys.readouterr().out)
    assert [r["suite"] for r in results] == ["presentation"]
    assert results[0]["passed"]
