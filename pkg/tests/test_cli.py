import csv
import io
import json
import os

from cpcshuffle.cli import main

WORKED = ["--K", "6", "--N", "20", "--Q", "6", "--r", "3", "--Kr", "3", "--t", "2", "--B", "48"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConstruct:
    def test_worked_example_dump(self, capsys):
        code, out, _ = run(capsys, "construct", *WORKED)
        assert code == 0
        dump = json.loads(out)
        assert len(dump["partitions"]) == 20
        assert len(dump["messages"]) == 180
        assert dump["messages"][0]["p"] == 1
        assert all(len(m["segments"]) == 2 for m in dump["messages"])
        assert "payload" not in dump["messages"][0]

    def test_payload_flag(self, capsys):
        code, out, _ = run(capsys, "construct", *WORKED, "--with-payloads")
        dump = json.loads(out)
        assert len(bytes.fromhex(dump["messages"][0]["payload"])) == 1

    def test_full_load_is_empty(self, capsys):
        code, out, _ = run(capsys, "construct", "--K", "4", "--r", "4")
        assert code == 0
        assert json.loads(out)["messages"] == []

    def test_invalid_config_exits_two(self, capsys):
        code, _, err = run(capsys, "construct", "--K", "6", "--N", "20", "--Q", "6",
                           "--r", "3", "--Kr", "2", "--t", "1")
        assert code == 2
        assert "s <= K_r" in err

    def test_reruns_byte_identical(self, capsys):
        _, a, _ = run(capsys, "construct", *WORKED, "--with-payloads", "--seed", "5")
        _, b, _ = run(capsys, "construct", *WORKED, "--with-payloads", "--seed", "5")
        assert a == b

    def test_byte_identical_across_processes(self):
        import subprocess
        import sys

        cmd = [sys.executable, "-m", "cpcshuffle", "construct", *WORKED,
               "--with-payloads", "--seed", "9"]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert a == b and len(a) > 1000


class TestVerify:
    def test_channel_path(self, capsys):
        code, out, _ = run(capsys, "verify", *WORKED)
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_ideal_path(self, capsys):
        code, out, _ = run(capsys, "verify", *WORKED, "--ideal")
        assert code == 0

    def test_fault_exits_one(self, capsys):
        code, out, _ = run(capsys, "verify", *WORKED, "--fault")
        assert code == 1
        assert json.loads(out)["failures"]

    def test_wide_cooperation_instance(self, capsys):
        code, out, _ = run(capsys, "verify", "--K", "8", "--N", "56", "--Q", "8",
                           "--r", "5", "--Kr", "4", "--t", "2", "--B", "80")
        assert code == 0

    def test_full_load_trivial(self, capsys):
        code, out, _ = run(capsys, "verify", "--K", "4", "--r", "4")
        assert code == 0

    def test_defaults_fill_in(self, capsys):
        # no N/Q/B/Kr/t: optimizer picks the split, B auto-aligns
        code, out, _ = run(capsys, "verify", "--K", "5", "--r", "2", "--ideal")
        assert code == 0

    def test_pinned_t_only(self, capsys):
        code, out, _ = run(capsys, "construct", "--K", "6", "--r", "3", "--t", "2")
        assert code == 0
        dump = json.loads(out)
        assert dump["params"]["t"] == 2
        assert dump["params"]["B"] % 8 == 0

    def test_pinned_kr_only(self, capsys):
        code, out, _ = run(capsys, "construct", "--K", "6", "--r", "3", "--Kr", "4")
        assert code == 0
        assert json.loads(out)["params"]["K_r"] == 4

    def test_default_b_supports_time_division_chunks(self, capsys):
        # t = 2 in the time-division regime needs the payload to split into
        # C(K_r-s, t-1) chunks; the auto-sized B must account for it
        code, out, _ = run(capsys, "simulate", "--K", "9", "--r", "3",
                           "--Kr", "6", "--t", "2", "--partition", "1")
        assert code == 0
        assert json.loads(out)["measured_dof"] == "1/2"


class TestSimulate:
    def test_partition_report(self, capsys):
        code, out, _ = run(capsys, "simulate", *WORKED, "--partition", "1")
        assert code == 0
        rep = json.loads(out)
        assert rep["measured_dof"] == "1"
        assert rep["max_residual"] < 1e-9

    def test_snr_mode(self, capsys):
        code, out, _ = run(capsys, "simulate", *WORKED, "--snr", "30")
        assert code == 0
        assert json.loads(out)["noise_mse"] > 0


class TestNdtCommand:
    def test_csv_schema_and_values(self, capsys):
        code, out, _ = run(capsys, "ndt", "--r", "2", "--K", "50")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["scheme", "K", "r", "K_r", "t", "value"]
        by_scheme = {row[0]: row for row in rows[1:]}
        assert by_scheme["CDC"][5] == "12/25"
        assert by_scheme["CPC"][3] == "29"
        assert set(by_scheme) == {
            "UncodedTDMA", "CDC", "OSL_FD", "OSL_HD", "BW_FD", "BW_HD",
            "CPC", "LowerBound",
        }

    def test_fractional_load(self, capsys):
        code, out, _ = run(capsys, "ndt", "--r", "5/2", "--K", "6", "--format", "json")
        assert code == 0
        assert any(row["scheme"] == "CPC" for row in json.loads(out))


class TestSweep:
    def test_explicit_grid_row_count(self, capsys):
        code, out, _ = run(capsys, "sweep", "--r-range", "1:3", "--K-range", "4:6")
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert len(rows) == 8 * 3 * 3  # schemes x r x K

    def test_fig2_spot_values(self, capsys):
        code, out, _ = run(capsys, "sweep", "--preset", "fig2")
        rows = list(csv.reader(io.StringIO(out)))[1:]
        cell = {(r[0], r[2]): r[5] for r in rows}
        assert cell[("CDC", "2")] == "12/25"
        from fractions import Fraction
        assert abs(float(Fraction(cell[("CPC", "2")])) - 0.0544) < 5e-4

    def test_fig4_tracks_only_the_scheme(self, capsys):
        code, out, _ = run(capsys, "sweep", "--preset", "fig4")
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert {r[0] for r in rows} == {"CPC"}
        assert len(rows) == sum(50 - r for r in (2, 3, 4, 5))

    def test_fig5_has_three_cooperation_sizes(self, capsys):
        code, out, _ = run(capsys, "sweep", "--preset", "fig5")
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert {r[4] for r in rows} == {"1", "2", "3"}

    def test_thread_cap_is_deterministic(self, capsys):
        _, serial, _ = run(capsys, "sweep", "--preset", "fig3")
        os.environ["CPC_THREADS"] = "4"
        try:
            _, threaded, _ = run(capsys, "sweep", "--preset", "fig3")
        finally:
            del os.environ["CPC_THREADS"]
        assert serial == threaded

    def test_missing_grid_exits_two(self, capsys):
        code, _, _ = run(capsys, "sweep")
        assert code == 2


class TestOptimizeAndBounds:
    def test_optimize_point(self, capsys):
        code, out, _ = run(capsys, "optimize", "--r", "5", "--K", "8")
        rep = json.loads(out)
        assert rep["agree"] is True
        assert rep["brute"] == "21/320"

    def test_optimize_grid(self, capsys):
        code, out, _ = run(capsys, "optimize", "--K-max", "8")
        assert code == 0
        assert all(cell["agree"] for cell in json.loads(out))

    def test_bounds(self, capsys):
        code, out, _ = run(capsys, "bounds", "--r", "3", "--K", "6")
        rep = json.loads(out)
        assert rep["bound"] == "1/10"
        assert rep["gap_ratio"] == "35/24"


class TestFigures:
    def test_writes_all_presets(self, tmp_path, capsys):
        code, _, _ = run(capsys, "figures", "--out-dir", str(tmp_path))
        assert code == 0
        for name in ("fig2", "fig3", "fig4", "fig5"):
            assert (tmp_path / f"{name}.csv").exists()
