import json

import numpy as np
import pytest

from stbc_papr.config import SimConfig, load_config
from stbc_papr.errors import ConfigurationError
from stbc_papr.harness import load_results_config, results_csv, run_ccdf_experiment, write_results

FAST = {"n": 64, "oversample": 2, "symbols": 60, "slm_routes": 4, "pts_subblocks": 4}


class TestLoadConfig:
    def test_defaults(self):
        cfg = load_config()
        assert (cfg.n, cfg.n_used, cfg.oversample) == (512, 301, 6)
        assert (cfg.n_tx, cfg.n_rx) == (2, 2)
        assert (cfg.slm_routes, cfg.pts_subblocks, cfg.cr_db, cfg.symbols) == (8, 8, 4.0, 1000)
        assert cfg.methods == ("none", "clip", "slm", "pts")
        assert cfg.pts_strategy == "greedy" and cfg.pts_scheme == "adjacent"
        assert cfg.rcf_iterations == 1 and cfg.cr_interpretation == "dB"
        assert cfg.thresholds_db[0] == 4.0 and cfg.thresholds_db[-1] == 13.0

    def test_n1024_default_used(self):
        assert load_config(overrides={"n": 1024}).n_used == 601

    def test_n_used_too_large(self):
        with pytest.raises(ConfigurationError) as err:
            load_config(overrides={"n": 512, "n_used": 600})
        assert err.value.key == "n_used"

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError, match="bogus"):
            load_config(overrides={"bogus": 1})

    @pytest.mark.parametrize("key,value", [("n", 600), ("oversample", 0), ("methods", "none,foo"),
                                           ("symbols", 0), ("n_tx", 4), ("pts_scheme", "random"),
                                           ("seed", "abc"), ("threads", 0)])
    def test_invalid_values(self, key, value):
        with pytest.raises(ConfigurationError):
            load_config(overrides={key: value})

    def test_file(self, tmp_path):
        path = tmp_path / "sim.cfg"
        path.write_text("# paper setup, larger FFT\nn = 1024\npts-strategy=greedy\nmethods=none,slm\n"
                        "cr-linear=2.0\n", encoding="utf-8")
        cfg = load_config(path, {"seed": 9})
        assert cfg.n == 1024 and cfg.n_used == 601 and cfg.seed == 9
        assert cfg.methods == ("none", "slm")
        assert cfg.cr_interpretation == "linear"
        assert cfg.cr_db == pytest.approx(6.0206, abs=1e-4)

    def test_bad_line(self, tmp_path):
        path = tmp_path / "sim.cfg"
        path.write_text("n 1024\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_exhaustive_gate(self):
        with pytest.raises(ConfigurationError) as err:
            load_config(overrides={"pts_strategy": "exhaustive"})
        assert err.value.key == "pts_strategy"
        assert load_config(overrides={"pts_strategy": "exhaustive", "allow_exhaustive": "true"}).pts_plan.n_candidates == 4**7
        assert load_config(overrides={"pts_strategy": "exhaustive", "pts_subblocks": 4}).pts_strategy == "exhaustive"

    def test_both_clip_ratios(self):
        with pytest.raises(ConfigurationError):
            load_config(overrides={"cr_db": 4, "cr_linear": 2})

    @pytest.mark.parametrize("overrides", [{}, {"cr_linear": 1.5, "n": 1024}, {"occupied": "1,2,3", "n": 8, "pts_subblocks": 2}])
    def test_echo_round_trip(self, overrides):
        cfg = load_config(overrides=overrides)
        again = load_config(overrides=json.loads(json.dumps(cfg.to_dict())))
        assert again == cfg


@pytest.fixture(scope="module")
def rx_result():
    return run_ccdf_experiment(load_config(overrides={**FAST, "receive": True}))


@pytest.fixture(scope="module")
def result():
    return run_ccdf_experiment(load_config(overrides=FAST))


class TestRunExperiment:
    @pytest.fixture
    def result(self, rx_result):
        return rx_result

    def test_curves(self, result):
        cfg = result.config
        for curves in (result.tx_curves, result.rx_curves):
            assert set(curves) == set(cfg.methods)
            for curve in curves.values():
                assert curve.n_samples == cfg.symbols
                np.testing.assert_array_equal(curve.thresholds_db, result.thresholds_db)
                assert curve.counts[0] <= cfg.symbols
                assert np.all(np.diff(curve.counts) <= 0)
                assert np.all((curve.probs >= 0) & (curve.probs <= 1))

    def test_metadata(self, result):
        assert result.metadata["cr_interpretation"] == "dB"
        assert "receive_model" in result.metadata
        assert result.metadata["reliable_probability_floor"] == pytest.approx(10 / 60)

    def test_reduction_dominates_unmodified(self, result):
        none = result.tx_papr_db["none"]
        for method in ("slm", "pts"):
            assert np.all(result.tx_papr_db[method] <= none + 1e-9)

    def test_threads_do_not_change_output(self):
        base = load_config(overrides=FAST)
        one = results_csv(run_ccdf_experiment(base))
        four = results_csv(run_ccdf_experiment(base.replace(threads=4)))
        assert one == four

    def test_seed_changes_output(self):
        base = load_config(overrides=FAST)
        assert results_csv(run_ccdf_experiment(base)) != results_csv(run_ccdf_experiment(base.replace(seed=2)))


class TestWriteResults:
    def test_csv_header(self, result, tmp_path):
        path = tmp_path / "out.csv"
        write_results(result, "csv", path)
        lines = path.read_text().splitlines()
        assert lines[0] == "threshold_db,ccdf_theory,ccdf_none,ccdf_clip,ccdf_slm,ccdf_pts"
        assert len(lines) == 1 + result.thresholds_db.size
        assert lines[1].startswith("4,")

    def test_rx_columns(self):
        rs = run_ccdf_experiment(load_config(overrides={**FAST, "methods": "none,slm", "receive": True}))
        header = results_csv(rs).splitlines()[0]
        assert header == "threshold_db,ccdf_theory,ccdf_none,ccdf_slm,rx_ccdf_none,rx_ccdf_slm"

    def test_six_significant_digits(self, result):
        for line in results_csv(result).splitlines()[1:]:
            for field in line.split(","):
                digits = field.replace("-", "").replace(".", "").split("e")[0].lstrip("0")
                assert len(digits) <= 6

    def test_byte_identical_rerun(self, tmp_path):
        cfg = load_config(overrides=FAST)
        write_results(run_ccdf_experiment(cfg), "csv", tmp_path / "a.csv")
        write_results(run_ccdf_experiment(cfg), "csv", tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_json_round_trip(self, result, tmp_path):
        path = tmp_path / "out.json"
        write_results(result, "json", path)
        doc = json.loads(path.read_text())
        assert doc["seed"] == result.config.seed
        assert doc["metadata"]["cr_interpretation"] == "dB"
        assert doc["tx"]["pts"]["counts"] == result.tx_curves["pts"].counts.tolist()
        assert load_results_config(path) == result.config

    def test_unwritable(self, result, tmp_path):
        with pytest.raises(OSError):
            write_results(result, "csv", tmp_path / "missing" / "out.csv")


def test_single_antenna_theory_column():
    rs = run_ccdf_experiment(SimConfig(n=64, n_used=64, oversample=1, n_tx=1, n_rx=1, methods=("none",),
                                       symbols=10, threshold_start=0, threshold_stop=1))
    assert rs.theory[0] == pytest.approx(1 - (1 - np.exp(-1.0)) ** 64)
