import pytest

from pbcrtree.bench import RunConfig, report_json, report_text, run_benchmark


def test_report_is_deterministic():
    cfg = RunConfig(n=200, queries=40, seed=3)
    a, _ = run_benchmark(cfg)
    b, _ = run_benchmark(cfg)
    assert report_json(a) == report_json(b)


def test_report_contents():
    report, timings = run_benchmark(RunConfig(n=200, queries=40, seed=3, layout="seam-cluster"))
    for mode in ("periodic", "unbounded"):
        r = report[mode]
        assert r["oracle_agreement"] == "pass"
        assert r["count"] == 200 and r["violations"] == 0
        assert r["mean_node_visits"] >= 1
        assert set(r["level_volumes"]) == {str(k) for k in range(r["depth"])}
    assert report["periodic"]["root_volume"] < report["unbounded"]["root_volume"]
    assert "build_seconds" not in report_json(report)
    assert "periodic" in report_text(report, timings)


@pytest.mark.parametrize("kw", [dict(layout="spiral"), dict(cell_size=0), dict(min_entries=5),
                                dict(max_radius_fraction=0.9)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        run_benchmark(RunConfig(n=10, queries=1, **kw))
