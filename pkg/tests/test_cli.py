"""Command-line front-end tests: CSV schemas, manifests, presets,
reproducibility, exit codes, and the selfcheck negative control."""

import json
import math

import numpy as np
import pytest

from hellinger_bandits.bounds import (
    best_epsilon,
    expected_pulls_bound_terms,
    regret_lower_bound,
    regret_upper_bound,
)
from hellinger_bandits.cli import PRESETS, main
from hellinger_bandits.reward_models import RewardFamily
from hellinger_bandits.simulator import BanditInstance

B = RewardFamily.BERNOULLI

SMALL_RUN = [
    "simulate",
    "--preset",
    "bernoulli-paper",
    "--horizon",
    "300",
    "--epochs",
    "3",
    "--seed",
    "42",
]


def read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestSimulate:
    def test_writes_all_csvs_and_manifest(self, tmp_path):
        out = tmp_path / "run"
        assert main(SMALL_RUN + ["--out-dir", str(out)]) == 0
        names = {p.name for p in out.iterdir()}
        assert names == {
            "regret_mean.csv",
            "regret_q25.csv",
            "regret_q75.csv",
            "final_regret.csv",
            "pulls.csv",
            "bounds.csv",
            "manifest.json",
        }
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "simulate"
        assert manifest["master_seed"] == 42
        assert set(manifest["outputs"]) == names - {"manifest.json"}
        assert manifest["config"]["means"] == PRESETS["bernoulli-paper"]["means"]

    def test_csv_schemas(self, tmp_path):
        out = tmp_path / "run"
        main(SMALL_RUN + ["--out-dir", str(out)])
        header, rows = read_csv(out / "regret_mean.csv")
        assert header == ["t", "hellinger-ucb", "kl-ucb", "ucb1"]
        ts = [int(r[0]) for r in rows]
        assert ts == sorted(ts)
        assert ts[0] >= 11 and ts[-1] == 300

        header, rows = read_csv(out / "final_regret.csv")
        assert header == ["policy", "epoch", "regret"]
        assert len(rows) == 3 * 3

        header, rows = read_csv(out / "pulls.csv")
        assert header == ["policy", "arm", "mean_pulls"]
        assert len(rows) == 3 * 10

        header, rows = read_csv(out / "bounds.csv")
        assert header == ["t", "upper_bound", "lower_bound"]

    def test_reproducible_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(SMALL_RUN + ["--out-dir", str(a)])
        main(SMALL_RUN + ["--out-dir", str(b)])
        for name in ["regret_mean.csv", "regret_q25.csv", "regret_q75.csv",
                     "final_regret.csv", "pulls.csv", "bounds.csv"]:
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_rerun_from_manifest(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(SMALL_RUN + ["--out-dir", str(a)])
        rc = main(
            [
                "simulate",
                "--config",
                str(a / "manifest.json"),
                "--out-dir",
                str(b),
            ]
        )
        assert rc == 0
        assert (a / "regret_mean.csv").read_bytes() == (b / "regret_mean.csv").read_bytes()

    def test_flags_override_config_file(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"horizon": 120, "epochs": 2, "seed": 1}))
        out = tmp_path / "run"
        rc = main(
            [
                "simulate",
                "--config",
                str(cfg),
                "--means",
                "0.05,0.1",
                "--epochs",
                "4",
                "--no-bounds",
                "--out-dir",
                str(out),
            ]
        )
        assert rc == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["horizon"] == 120  # from file
        assert manifest["config"]["epochs"] == 4  # flag wins
        assert not (out / "bounds.csv").exists()

    def test_degenerate_run_has_init_phase_rows(self, tmp_path):
        out = tmp_path / "run"
        rc = main(
            [
                "simulate",
                "--means",
                "0.1,0.2",
                "--horizon",
                "2",
                "--epochs",
                "1",
                "--seed",
                "0",
                "--no-bounds",
                "--out-dir",
                str(out),
            ]
        )
        assert rc == 0
        _, rows = read_csv(out / "regret_mean.csv")
        assert [int(r[0]) for r in rows] == [1, 2]

    def test_invalid_config_leaves_no_partial_output(self, tmp_path, capsys):
        out = tmp_path / "run"
        rc = main(SMALL_RUN + ["--means", "0.5,1.7", "--out-dir", str(out)])
        assert rc == 1
        assert "error" in capsys.readouterr().err
        assert not out.exists()

    def test_unknown_policy_rejected(self, tmp_path):
        rc = main(
            SMALL_RUN + ["--policies", "thompson", "--out-dir", str(tmp_path / "x")]
        )
        assert rc == 1

    def test_hb_threads_does_not_change_output(self, tmp_path, monkeypatch):
        a, b = tmp_path / "a", tmp_path / "b"
        main(SMALL_RUN + ["--out-dir", str(a)])
        monkeypatch.setenv("HB_THREADS", "3")
        main(SMALL_RUN + ["--out-dir", str(b)])
        assert (a / "regret_mean.csv").read_bytes() == (b / "regret_mean.csv").read_bytes()
        assert (a / "final_regret.csv").read_bytes() == (b / "final_regret.csv").read_bytes()

    def test_poisson_preset(self, tmp_path):
        out = tmp_path / "run"
        rc = main(
            [
                "simulate",
                "--preset",
                "poisson-paper",
                "--horizon",
                "100",
                "--epochs",
                "2",
                "--seed",
                "1",
                "--no-bounds",
                "--out-dir",
                str(out),
            ]
        )
        assert rc == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["family"] == "poisson"
        assert len(manifest["config"]["means"]) == 7


class TestBound:
    def test_table_matches_library_values(self, tmp_path, capsys):
        out = tmp_path / "bound.csv"
        rc = main(
            [
                "bound",
                "--family",
                "bernoulli",
                "--means",
                ",".join(str(m) for m in PRESETS["bernoulli-paper"]["means"]),
                "--c",
                "0.26",
                "--horizon",
                "10000",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        header, rows = read_csv(out)
        instance = BanditInstance(
            family=B, means=tuple(PRESETS["bernoulli-paper"]["means"])
        )
        assert len(rows) == 9  # sub-optimal arms only
        for row in rows:
            record = dict(zip(header, row))
            mu_i = float(record["mu_i"])
            eps, _ = best_epsilon(B, 0.1, mu_i, 0.26, 10_000)
            terms = expected_pulls_bound_terms(B, 0.1, mu_i, 0.26, eps, 10_000)
            assert float(record["epsilon"]) == eps
            assert float(record["C1"]) == terms.constants.C1
            assert float(record["pulls_bound"]) == terms.total
        text = capsys.readouterr().out
        upper = regret_upper_bound(instance, 0.26, None, 10_000)
        lower = regret_lower_bound(instance, 10_000)
        assert f"regret_upper_bound: {upper!r}" in text
        assert f"regret_lower_bound: {lower!r}" in text

    def test_pair_mode_horizon_one(self, capsys):
        rc = main(
            [
                "bound",
                "--family",
                "bernoulli",
                "--mu-star",
                "0.1",
                "--mu-i",
                "0.05",
                "--horizon",
                "1",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        row = [line for line in out.splitlines() if line.startswith("1 ")][0]
        leading = row.split()[7]
        assert float(leading) == 0.0

    def test_suboptimal_above_optimal_is_input_error(self, capsys):
        rc = main(
            [
                "bound",
                "--family",
                "bernoulli",
                "--mu-star",
                "0.05",
                "--mu-i",
                "0.1",
            ]
        )
        assert rc == 1
        assert "error" in capsys.readouterr().err


class TestRankBench:
    def test_report_and_csv(self, tmp_path, capsys):
        out = tmp_path / "bench"
        rc = main(
            [
                "rank-bench",
                "--num-arms",
                "400",
                "--k",
                "10",
                "--repetitions",
                "5",
                "--seed",
                "3",
                "--out-dir",
                str(out),
            ]
        )
        assert rc == 0
        text = capsys.readouterr().out
        assert "median_ms" in text
        assert "PASS" in text or "FAIL" in text
        header, rows = read_csv(out / "latency.csv")
        assert header == ["repetition", "ms"]
        assert len(rows) == 5


class TestTrafficCompare:
    def test_writes_cumulative_reward(self, tmp_path):
        out = tmp_path / "traffic"
        rc = main(
            [
                "traffic-compare",
                "--arms",
                "5",
                "--horizon",
                "200",
                "--seed",
                "11",
                "--out-dir",
                str(out),
            ]
        )
        assert rc == 0
        header, rows = read_csv(out / "cumulative_reward.csv")
        assert header == ["t", "hellinger-ucb", "kl-ucb", "ucb1"]
        assert len(rows) == 200
        for col in range(1, 4):
            series = [float(r[col]) for r in rows]
            assert all(a <= b for a, b in zip(series, series[1:]))
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "traffic-compare"
        assert manifest["outputs"] == ["cumulative_reward.csv"]

    def test_rerun_is_byte_identical(self, tmp_path):
        args = ["traffic-compare", "--arms", "4", "--horizon", "120", "--seed", "2"]
        a, b = tmp_path / "a", tmp_path / "b"
        main(args + ["--out-dir", str(a)])
        main(args + ["--out-dir", str(b)])
        assert (a / "cumulative_reward.csv").read_bytes() == (
            b / "cumulative_reward.csv"
        ).read_bytes()


class TestSelfcheck:
    def test_fresh_build_passes(self, capsys):
        assert main(["selfcheck"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 4
        assert "FAIL" not in out

    def test_perturbed_quadratic_fails_named_check(self, capsys):
        assert main(["selfcheck", "--perturb-quadratic", "1e-4"]) == 2
        out = capsys.readouterr().out
        assert "FAIL closed-form-vs-bisection" in out


class TestExitCodes:
    def test_usage_error_is_input_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["simulate"])  # missing required --out-dir
        assert exc.value.code == 1
