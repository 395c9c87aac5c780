import csv
import io
import json

import pytest

from lsseq.cli import EXIT_IO, EXIT_MISMATCH, EXIT_OK, EXIT_PARAMS, main
from lsseq.partition import EquivalenceReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


class TestGen:
    def test_single_row(self, capsys):
        code, out, _ = run(capsys, "gen", "--L", "1", "--S", "1", "--count", "1")
        assert code == EXIT_OK
        assert out.splitlines() == ["index,n,digits,exact,float", "1,0,0,0/1+0/1*g,0.0"]

    def test_golden_integers_and_digits(self, capsys):
        _, out, _ = run(capsys, "gen", "--L", "1", "--S", "1", "--count", "12")
        rows = rows_of(out)[1:]
        assert [int(r[1]) for r in rows] == [0, 1, 2, 4, 5, 8, 9, 10, 16, 17, 18, 20]
        assert [r[2] for r in rows] == ["0", "1", "10", "100", "101", "1000", "1001", "1010",
                                        "10000", "10001", "10010", "10100"]
        assert rows[1][3] == "0/1+1/1*g"

    def test_binary(self, capsys):
        _, out, _ = run(capsys, "gen", "--L", "2", "--S", "0", "--count", "4")
        assert [float(r[4]) for r in rows_of(out)[1:]] == [0.0, 0.5, 0.25, 0.75]

    def test_float_mode_and_json(self, capsys):
        code, out, _ = run(capsys, "gen", "--L", "2", "--S", "1", "--count", "5", "--mode", "float", "--format", "json")
        data = json.loads(out)
        assert code == 0 and len(data) == 5
        assert data[0] == {"index": 1, "n": 0, "digits": "0", "exact": None, "float": 0.0}
        _, exact_out, _ = run(capsys, "gen", "--L", "2", "--S", "1", "--count", "5", "--format", "json")
        for a, b in zip(data, json.loads(exact_out)):
            assert a["float"] == pytest.approx(b["float"], abs=1e-15)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "g.csv"
        code, out, _ = run(capsys, "gen", "--L", "1", "--S", "1", "--count", "3", "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_bytes().count(b"\n") == 4 and b"\r" not in target.read_bytes()


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["gen", "--L", "0", "--S", "1", "--count", "3"],
        ["gen", "--L", "1", "--S", "0", "--count", "3"],
        ["gen", "--L", "1", "--S", "1", "--count", "0"],
        ["partition", "--L", "1", "--S", "1", "--depth", "-1"],
        ["verify", "--L", "2", "--S", "-1", "--depth", "3"],
        ["regime", "--L", "1", "--S", "1", "--max-depth", "3"],
    ])
    def test_bad_params(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == EXIT_PARAMS and out == "" and err

    def test_argparse_errors_use_param_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--L", "x", "--S", "1", "--count", "1"])
        assert exc.value.code == EXIT_PARAMS
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--L", "1", "--S", "1", "--count", "1", "--format", "xml"])
        assert exc.value.code == EXIT_PARAMS

    def test_io_failure(self, capsys, tmp_path):
        code, _, err = run(capsys, "gen", "--L", "1", "--S", "1", "--count", "2", "--out", str(tmp_path / "no" / "such.csv"))
        assert code == EXIT_IO and "cannot write" in err

    def test_mismatch_exit(self, capsys, monkeypatch):
        bad = EquivalenceReport(depth=3, params=None, count=5, equal=False, first_mismatch=4, expected=None, actual=None)
        monkeypatch.setattr("lsseq.cli.verify_equivalence", lambda depth, params: bad)
        code, out, _ = run(capsys, "verify", "--L", "1", "--S", "1", "--depth", "3")
        assert code == EXIT_MISMATCH
        assert "4" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--L", "1", "--S", "1", "--depth", "10")
    assert code == 0 and out == "t_10=144 points equal\n"
    code, out, _ = run(capsys, "verify", "--L", "3", "--S", "2", "--depth", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["equal"] and data["count"] == 217 and data["first_mismatch"] is None


def test_partition(capsys):
    code, out, _ = run(capsys, "partition", "--L", "1", "--S", "1", "--depth", "3")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 1 + 5
    assert [r[3] for r in rows[1:]] == ["L", "S", "L", "L", "S"]
    _, out, _ = run(capsys, "partition", "--L", "2", "--S", "0", "--depth", "2", "--format", "json")
    assert [d["left_float"] for d in json.loads(out)] == [0.0, 0.25, 0.5, 0.75]


def test_disc_binary(capsys):
    code, out, _ = run(capsys, "disc", "--L", "2", "--S", "0", "--count", "16")
    rows = rows_of(out)
    assert code == 0 and rows[0] == ["N", "D", "D_star", "N_D", "N_D_over_log_N"]
    assert len(rows) == 17 and rows[1][4] == ""
    for r in rows[2:]:
        assert float(r[4]) <= 3.0
    assert float(rows[16][1]) == pytest.approx(1 / 16)


def test_regime(capsys):
    code, out, _ = run(capsys, "regime", "--L", "1", "--S", "3", "--max-depth", "12")
    data = json.loads(out)
    assert code == 0
    assert data["predicted_exponent"] == pytest.approx(0.317, abs=1e-3)
    assert data["classification"] == "power"
    assert [r["n"] for r in data["rows"]] == list(range(1, 13))
    code, out, _ = run(capsys, "regime", "--L", "1", "--S", "1", "--max-depth", "6", "--format", "csv")
    assert rows_of(out)[0] == ["n", "t_n", "D", "t_n_D"]


def test_qmc(capsys):
    code, out, _ = run(capsys, "qmc", "--L", "1", "--S", "1", "--count", "100", "--seed", "7")
    rows = rows_of(out)
    assert code == 0
    assert rows[0][-1] == "seed"
    gens = {r[0] for r in rows[1:]}
    assert gens == {"ls", "vdc", "knapowski", "random_reorder", "random"}
    assert {r[4] for r in rows[1:]} == {"10", "100"}
    assert all(r[9] == "7" for r in rows[1:])
    _, out, _ = run(capsys, "qmc", "--L", "1", "--S", "1", "--count", "20", "--format", "json")
    assert json.loads(out)[0]["rows"][0]["N"] == 10
