import json
import math

import pytest

ca = pytest.importorskip("_coassim")


def test_version_string():
    assert ca.__version__.startswith("co-assim ")


def test_default_config_parses():
    cfg = json.loads(ca.default_config_json())
    assert cfg["time"]["n_steps"] == 32
    assert len(cfg["grid"]["levels"]) == 5


def test_matern_reference_value():
    s5 = math.sqrt(5.0)
    want = (1.0 + s5 + 5.0 / 3.0) * math.exp(-s5)
    assert ca.matern_cov(1.0, 1.0, 1.0) == pytest.approx(want, abs=1e-12)
    assert ca.matern_cov(0.0, 2.5, 3.0) == pytest.approx(2.5)


def test_scenario_id_depends_on_seed():
    assert ca.scenario_id("", 1) != ca.scenario_id("", 2)
    assert ca.scenario_id("", 1) == ca.scenario_id("", 1)


def test_pipeline_round_trip(tmp_path):
    cfg = json.loads(ca.default_config_json())
    cfg["grid"].update(lon_min=231.5, lon_max=238.5, lat_min=33.5,
                       lat_max=39.5, levels=[850.0, 750.0])
    cfg["time"]["n_steps"] = 6
    cfg["winds"]["base_speed"] = [6.0, 9.0]
    cfg["truth"]["plumes"] = [cfg["truth"]["plumes"][0]]
    cfg["truth"]["plumes"][0]["center_lon"] = 234.0
    cfg["truth"]["plumes"][0]["center_lat"] = 36.0
    cfg["truth"]["plumes"][0]["level_scale"] = [1.0, 1.3]
    cfg["sampler"].update(n_iter=120, burn_in=20, thin=2)
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(cfg))

    scen = tmp_path / "scenario"
    ca.simulate(str(cfg_path), 7, scen)
    assert (scen / "truth.csv").exists()
    ca.observe(str(cfg_path), 7, scen)
    assert (scen / "observations.csv").exists()

    summary = ca.fit_bhm(str(cfg_path), 7, scen, tmp_path / "bhm",
                         n_chains=1, coupled=True)
    assert summary["n_retained"] > 0
    assert any(name.startswith("m") for name in summary["params"])

    ca.fit_kriging(str(cfg_path), 7, scen, tmp_path / "krig")
    report = ca.evaluate(scen, [tmp_path / "bhm", tmp_path / "krig"], 1,
                         tmp_path / "eval")
    assert set(report) == {"bhm-coupled", "kriging"}
    for method in report.values():
        assert method["rmse_all"] > 0


def test_missing_artifact_raises(tmp_path):
    with pytest.raises(ca.MissingArtifactError):
        ca.observe("", 1, tmp_path / "nope")


def test_bad_config_raises(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"grid": {"d_lon": "one"}}')
    with pytest.raises(ca.ConfigError):
        ca.simulate(str(bad), 1, tmp_path / "out")
