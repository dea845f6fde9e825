import json

import pytest

import s2o


def test_standard_scenes_are_listed():
    names = s2o.standard_scenarios()
    assert len(names) == 8
    assert len(set(names)) == 8


def test_simulated_case_evaluates():
    text = s2o.simulate(s2o.standard_scenarios()[0], "conservative")
    report = s2o.evaluate_case(text)
    assert 0.0 <= report["final"] <= 100.0
    assert report["segment"] in ("low", "mid", "high")
    assert report["frames"] == len(text.strip().splitlines()) - 1


def test_reckless_crash_scores_zero():
    for name in s2o.standard_scenarios():
        report = s2o.evaluate_case(s2o.simulate(name, "reckless"))
        if report["crash"]:
            assert report["final"] == 0.0
            return
    pytest.fail("no reckless drive crashed")


def test_score_terms_crash_veto():
    clean = s2o.score_terms(0.01, 0.1, 0.5, 1.0)
    assert clean["final"] > 0.0
    assert s2o.score_terms(0.01, 0.1, 0.5, 1.0, crash=True)["final"] == 0.0


def test_stream_matches_batch():
    text = s2o.simulate(s2o.standard_scenarios()[1], "idm")
    lines = text.strip().splitlines()
    stream = s2o.StreamEvaluator()
    last = None
    for line in lines[1:]:
        out = stream.push(line)
        if out is not None:
            last = out
    batch = s2o.evaluate_case(text)
    assert last["final"] == pytest.approx(batch["final"], abs=1e-9)


def test_heatmap_shape():
    text = s2o.simulate(s2o.standard_scenarios()[0], "idm")
    grid = s2o.risk_heatmap(text, frame=3, extent=10.0, cell=1.0)
    assert len(grid) == 20
    assert all(len(row) == 20 for row in grid)
    assert all(v >= 0.0 for row in grid for v in row)


def test_errors_are_typed():
    with pytest.raises(s2o.ParseError):
        s2o.evaluate_case('{"t": 0, "ego": ')
    with pytest.raises(ValueError):
        s2o.simulate("no_such_scene")


def test_default_model_is_plain_data():
    model = s2o.default_model()
    json.dumps(model)
    assert set(model["weights"]) >= {"high", "mid", "low"}
