import csv

import pytest

from linkcert.harness import (
    ENGINES,
    CampaignSpec,
    construct,
    random_embedding,
    resolve_engine,
    run_campaign,
    worker_count,
)


def test_resolve_engine_aliases_and_defaults():
    assert resolve_engine("K6-nonsplit")[0] == "nonsplit(mode=odd)"
    assert resolve_engine("mod4-K10")[0] == "mod4"
    tid, eng, params = resolve_engine("mod2-whitehead")
    assert tid == "mod2-whitehead(r=2)" and eng.min_vertices(params) == 90
    with pytest.raises(KeyError):
        resolve_engine("nope")
    with pytest.raises(ValueError):
        resolve_engine("mod3(r=1)")


def test_spec_validation():
    with pytest.raises(ValueError, match="trial count"):
        CampaignSpec("K6-nonsplit", 0)
    with pytest.warns(UserWarning, match="below"):
        CampaignSpec("mod3", 1, n=20)


def test_k6_campaign():
    report = run_campaign(CampaignSpec("K6-nonsplit", 100, seed=0))
    assert report.counts == {"certificate": 100, "exhaustion": 0, "error": 0}


def test_mod4_campaign_persists(tmp_path):
    report = run_campaign(CampaignSpec("mod4-K10", 10, seed=3, out_dir=tmp_path))
    assert report.ok and len(report.trials) == 10
    rows = list(csv.reader(open(tmp_path / "report.csv")))
    assert rows[0] == ["index", "outcome", "millis", "certPath"]
    assert [r[0] for r in rows[1:]] == [str(i) for i in range(10)]
    assert all((tmp_path / f"trial{i:04d}.cert.json").exists() for i in range(10))


def test_errors_are_recorded_not_raised():
    with pytest.warns(UserWarning):
        spec = CampaignSpec("mod3", 3, n=12)
    report = run_campaign(spec)
    assert report.counts["error"] == 3 and "insufficient" in report.trials[0].message


def test_parallel_runs_are_identical():
    spec = CampaignSpec("mod3", 4, seed=9)
    a = run_campaign(spec, workers=1)
    b = run_campaign(spec, workers=2)
    assert [t.certificate for t in a.trials] == [t.certificate for t in b.trials]
    assert all(t.certificate for t in a.trials)


def test_worker_env(monkeypatch):
    monkeypatch.setenv("LINKCERT_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("LINKCERT_WORKERS", "x")
    with pytest.raises(ValueError):
        worker_count()


@pytest.mark.parametrize("name", sorted(ENGINES))
def test_registry_requirements_are_consistent(name):
    _, eng, params = resolve_engine(name)
    assert eng.min_vertices(params) >= 6


def test_construct_records_seed():
    cert = construct("nonsplit", random_embedding(6, 4), seed=4)
    assert cert.seed == 4
