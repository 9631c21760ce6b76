"""Tests for the command-line interface and its exit-code contract."""

import numpy as np
import pytest

from pcaforge.artifact_io import read_array, write_array
from pcaforge.cli import main
from pcaforge.core import Array
from pcaforge.coverage import is_pca
from pcaforge.galois import constant_rows


def full_factorial_file(tmp_path):
    rows = [[0, 0], [0, 1], [1, 0], [1, 1]]
    path = tmp_path / "full.pca"
    write_array(Array(np.array(rows), 2), path)
    return path


class TestBoundsCommand:
    def test_all_table(self, capsys):
        assert main(["bounds", "--t", "2", "--k", "4", "--v", "2", "--m", "4", "--all"]) == 0
        out = capsys.readouterr().out
        lines = {line.split()[0]: line.split() for line in out.splitlines()[1:]}
        assert lines["union"][2] == "12"
        assert lines["lll"][2] == "16"

    def test_missing_flag_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["bounds", "--t", "2", "--k", "4", "--v", "2", "--all"])
        assert err.value.code == 2

    def test_validation_failure_exit_2(self, capsys):
        code = main(["bounds", "--t", "2", "--k", "4", "--v", "2", "--m", "5", "--all"])
        assert code == 2
        assert "MOutOfRange" in capsys.readouterr().err

    def test_eq8_variant_flag(self, capsys):
        main(["bounds", "--t", "6", "--k", "20", "--v", "4", "--m", "4092",
              "--formula", "eq8", "--eq8-variant", "with-t"])
        out = capsys.readouterr().out
        assert "cyclic-pca-t" in out and "eq8-t" in out

    def test_single_formula(self, capsys):
        main(["bounds", "--t", "2", "--k", "4", "--v", "2", "--m", "4",
              "--formula", "union"])
        out = capsys.readouterr().out
        assert "union" in out and "lll" not in out


class TestGenerateCommand:
    def test_mt_writes_verified_array(self, tmp_path, capsys):
        out = tmp_path / "a.pca"
        code = main(["generate", "--alg", "mt", "--t", "2", "--k", "4", "--v", "2",
                     "--m", "4", "--seed", "42", "--out", str(out)])
        assert code == 0
        array, _ = read_array(out)
        assert is_pca(array, 2, 4).ok

    def test_not_prime_power_exit_2(self, tmp_path, capsys):
        code = main(["generate", "--alg", "frobenius", "--t", "2", "--k", "6",
                     "--v", "6", "--epsilon", "0.25", "--seed", "1",
                     "--out", str(tmp_path / "x.pca")])
        assert code == 2
        assert "NotPrimePower" in capsys.readouterr().err

    def test_same_seed_identical_files(self, tmp_path, capsys):
        a, b = tmp_path / "a.pca", tmp_path / "b.pca"
        ra, rb = tmp_path / "a.json", tmp_path / "b.json"
        for out, rep in ((a, ra), (b, rb)):
            main(["generate", "--alg", "apca", "--t", "2", "--k", "8", "--v", "2",
                  "--m", "4", "--epsilon", "0.1", "--seed", "7",
                  "--out", str(out), "--report", str(rep)])
        assert a.read_bytes() == b.read_bytes()
        assert ra.read_bytes() == rb.read_bytes()

    def test_env_seed_default(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("PCAFORGE_SEED", "55")
        a, b = tmp_path / "a.pca", tmp_path / "b.pca"
        main(["generate", "--alg", "mt", "--t", "2", "--k", "4", "--v", "2",
              "--m", "4", "--out", str(a)])
        main(["generate", "--alg", "mt", "--t", "2", "--k", "4", "--v", "2",
              "--m", "4", "--seed", "55", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_full_coverage_default_m(self, tmp_path, capsys):
        out = tmp_path / "c.pca"
        code = main(["generate", "--alg", "cyclic", "--t", "2", "--k", "5", "--v", "2",
                     "--epsilon", "0.25", "--seed", "3", "--out", str(out)])
        assert code == 0

    def test_mt_requires_m(self, tmp_path, capsys):
        code = main(["generate", "--alg", "mt", "--t", "2", "--k", "4", "--v", "2",
                     "--seed", "1", "--out", str(tmp_path / "x.pca")])
        assert code == 2

    @pytest.mark.parametrize(
        "alg,extra",
        [
            ("mt", ["--m", "4"]),
            ("apca", ["--m", "4", "--epsilon", "0.1"]),
            ("cyclic", ["--epsilon", "0.25"]),
            ("frobenius", ["--epsilon", "0.25"]),
            ("concat", ["--m", "3", "--epsilon", "0.25"]),
            ("derand", ["--epsilon", "0.5"]),
        ],
    )
    def test_every_algorithm_round_trips(self, tmp_path, capsys, alg, extra):
        out = tmp_path / f"{alg}.pca"
        code = main(["generate", "--alg", alg, "--t", "2", "--k", "5", "--v", "2",
                     "--seed", "11", "--out", str(out), *extra])
        assert code == 0
        array, header = read_array(out)
        assert array.cols == 5 and header.claims["t"] == 2


class TestVerifyCommand:
    def test_full_factorial_passes(self, tmp_path, capsys):
        path = full_factorial_file(tmp_path)
        code = main(["verify", "--in", str(path), "--t", "2", "--m", "4"])
        assert code == 0
        out = capsys.readouterr().out
        assert "min_count=4" in out and "pca(m=4): pass" in out

    def test_constant_rows_fail_with_witness(self, tmp_path, capsys):
        path = tmp_path / "const.pca"
        write_array(constant_rows(4, 2), path)
        code = main(["verify", "--in", str(path), "--t", "2", "--m", "3"])
        assert code == 1
        out = capsys.readouterr().out
        assert "FAIL at t-set (0, 1) covering 2" in out

    def test_completeness_line(self, tmp_path, capsys):
        path = full_factorial_file(tmp_path)
        code = main(["verify", "--in", str(path), "--t", "2", "--q", "0.5"])
        assert code == 0
        out = capsys.readouterr().out
        assert "completeness(q=0.5)=1" in out

    def test_apca_mode(self, tmp_path, capsys):
        path = tmp_path / "const.pca"
        write_array(constant_rows(4, 2), path)
        code = main(["verify", "--in", str(path), "--t", "2", "--m", "3",
                     "--epsilon", "1.0"])
        assert code == 0
        assert "apca(m=3, epsilon=1.0): pass" in capsys.readouterr().out

    def test_parse_error_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.pca"
        path.write_text("garbage\n")
        code = main(["verify", "--in", str(path), "--t", "2", "--m", "4"])
        assert code == 2

    def test_defects_csv_written(self, tmp_path, capsys):
        path = tmp_path / "const.pca"
        write_array(constant_rows(4, 2), path)
        csv_path = tmp_path / "d.csv"
        main(["verify", "--in", str(path), "--t", "2", "--m", "3",
              "--defects-csv", str(csv_path)])
        assert csv_path.read_text().splitlines()[0] == "tset_indices,count,missing"


class TestCompareCommand:
    def test_figure_1a(self, capsys):
        assert main(["compare", "--figure", "1a"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "axis,formula,real_bound,n_rows,feasible"
        values = {}
        for line in lines[1:]:
            m, formula, real, _, _ = line.split(",")
            values.setdefault(int(m), {})[formula] = float(real)
        assert set(values) == set(range(4073, 4097))
        for m, row in values.items():
            if m == 4096:
                assert row["eq8"] < row["eq6"]
            else:
                assert row["eq6"] < row["eq8"]

    def test_figure_1b(self, capsys):
        assert main(["compare", "--figure", "1b"]) == 0
        lines = capsys.readouterr().out.splitlines()[1:]
        values = {}
        for line in lines:
            k, formula, real, _, _ = line.split(",")
            values.setdefault(int(k), {})[formula] = float(real)
        assert set(values) == set(range(12, 61, 4))
        for row in values.values():
            assert row["eq6"] < row["eq8"]

    def test_custom_single_point(self, capsys):
        code = main(["compare", "--axis", "m", "--values", "4", "--t", "2",
                     "--k", "4", "--v", "2", "--formulas", "eq5"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert lines[1] == "4,eq5,11.0471,12,1"

    def test_output_file_deterministic(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["compare", "--figure", "1b", "--out", str(p1)])
        main(["compare", "--figure", "1b", "--out", str(p2)])
        assert p1.read_bytes() == p2.read_bytes()

    def test_custom_needs_axis(self, capsys):
        assert main(["compare", "--t", "2", "--v", "2"]) == 2

    def test_figure_conflicts_with_custom_flags(self, capsys):
        assert main(["compare", "--figure", "1a", "--axis", "m"]) == 2
