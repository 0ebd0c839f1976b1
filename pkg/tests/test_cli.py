"""Command-line interface: output formats, exit codes and round trips."""

import json

import pytest

from nilclose.cli import main
from nilclose.field import rationals
from nilclose.matrices import ExactMatrix, dump_matrix, matrix_from_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_criterion_human(capsys):
    code, out, _ = run(capsys, "criterion", "--n", "6", "--char", "0",
                       "--q", "2,3,5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "reject"
    assert "m0=4 (half_n): missing_prefix, offending size 4" in lines[1]
    code, out, _ = run(capsys, "criterion", "--n", "6", "--char", "3",
                       "--q", "2,3,5")
    assert code == 0
    assert out.strip() == "accept (m0=3, char_power)"


def test_criterion_json(capsys):
    code, out, _ = run(capsys, "criterion", "--n", "4", "--char", "0",
                       "--q", "2,3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data == {"verdict": "accept", "m0": 3, "branch": "half_n"}


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--char", "2")
    assert code == 0
    assert out.splitlines() == ["-", "2", "2,3", "2,3,4", "2,4"]


def test_witness_json_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "--n", "4", "--char", "0",
                       "--q", "2,4", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["construction"] == "neighbor"
    # the emitted matrices feed back into partition and member
    for key, expected_member in (("x", "true"), ("y", "true")):
        path = tmp_path / f"{key}.json"
        path.write_text(json.dumps(record[key]))
        code, out, _ = run(capsys, "member", "--input", str(path),
                           "--q", "2,4")
        assert code == 0 and out.strip() == expected_member
    x = matrix_from_json(record["x"])
    y = matrix_from_json(record["y"])
    spec = x.spec
    combo = x.scale(spec.parse_scalar(record["a"])) \
        + y.scale(spec.parse_scalar(record["b"]))
    path = tmp_path / "combo.json"
    from nilclose.matrices import matrix_to_json
    path.write_text(json.dumps(matrix_to_json(combo)))
    code, out, _ = run(capsys, "partition", "--input", str(path))
    assert code == 0
    assert out.strip() == "[" + ",".join(
        str(p) for p in record["combo_partition"]) + "]"


def test_witness_accept(capsys):
    code, out, _ = run(capsys, "witness", "--n", "4", "--char", "0",
                       "--q", "2,3")
    assert code == 0 and "accept" in out


def test_partition_golden(capsys, tmp_path):
    Q = rationals()
    x = ExactMatrix.jordan_cell(Q, Q.zero(), 7).power(3)
    path = tmp_path / "mat.json"
    dump_matrix(x, str(path))
    code, out, _ = run(capsys, "partition", "--input", str(path))
    assert code == 0 and out.strip() == "[3,2,2]"


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "--field", "GF(2)",
                       "--q", "2")
    assert code == 0 and "pass" in out
    code, out, _ = run(capsys, "verify", "--n", "4", "--field", "GF(3)",
                       "--q", "2")
    assert code == 2 and "violation" in out
    code, _, err = run(capsys, "verify", "--n", "4", "--field", "GF(3)",
                       "--q", "2", "--budget", "10")
    assert code == 3 and "BudgetExceeded" in err


def test_verify_sampled_json(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "--field", "GF(3)",
                       "--q", "2,3", "--mode", "sampled", "--samples", "20",
                       "--seed", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["mode"] == "sampled" and data["seed"] == 5


def test_decompose(capsys, tmp_path):
    Q = rationals()
    x = ExactMatrix.from_ints(Q, [[1, 1], [0, 1]])
    path = tmp_path / "mat.json"
    dump_matrix(x, str(path))
    code, out, _ = run(capsys, "decompose", "--input", str(path), "--json")
    assert code == 0
    data = json.loads(out)
    assert matrix_from_json(data["semisimple"]) == ExactMatrix.identity(Q, 2)
    assert matrix_from_json(data["nilpotent"]) == \
        ExactMatrix.from_ints(Q, [[0, 1], [0, 0]])


def test_cross_validate_cli(capsys):
    code, out, _ = run(capsys, "cross-validate", "--n", "4", "--char", "2",
                       "--degrees", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["accepted"]) == 5 and data["witnesses"] == 3


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["criterion", "--n", "4"])          # missing required flags
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["criterion", "--n", "4", "--char", "0", "--q", "2",
              "--frog"])                         # unknown flag is an error
    assert exc.value.code == 64


def test_domain_error_exit(capsys):
    code, _, err = run(capsys, "criterion", "--n", "4", "--char", "6",
                       "--q", "2")
    assert code == 1 and "NonPrimeChar" in err
    code, _, err = run(capsys, "witness", "--n", "4", "--char", "0",
                       "--q", "7")
    assert code == 1 and "InvalidQ" in err


def test_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in ("criterion", "enumerate", "partition", "member", "witness",
                 "verify", "decompose", "cross-validate"):
        assert name in out
