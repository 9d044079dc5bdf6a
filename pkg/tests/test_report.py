"""Report assembly, predictor comparison, caching, and the survey."""

import json

import pytest

from fusionsys.cache import ReportCache
from fusionsys.errors import PreconditionError
from fusionsys.report import (ReportOptions, build_report, run_survey,
                              survey_text)


def test_report_fields(shared):
    rep = shared.report("S4", 2)
    assert rep["schema_version"] == 1
    assert rep["group_order"] == "24"
    assert rep["sylow_order"] == "8"
    assert rep["counts"]["f_classes"] == 7
    assert rep["gamma"]["order"] == 1
    assert rep["saturation"]["verdict"] == "saturated"
    assert rep["simplicity"]["verdict"] == "not simple"
    # no prediction rule exists for a symmetric group: vacuous match
    assert rep["comparison"]["match"] is True
    assert rep["comparison"]["checked"] == {}
    assert "timing_seconds" not in rep
    json.dumps(rep)  # must serialize


def test_report_json_roundtrip(shared):
    rep = shared.report("SL2(3)", 2)
    assert json.loads(json.dumps(rep)) == rep


def test_rigidity_block(shared):
    rep = shared.report("S4", 2)
    rig = rep["rigidity_h1"]
    assert rig is not None
    assert rig["h1_invariants"] == []
    assert rig["rigid"] is True


def test_weakly_closed_block(shared):
    # the quaternion Sylow group has no qualifying abelian subgroup, so the
    # shortcut runs through the largest weakly closed one (S itself)
    rep = shared.report("SL2(3)", 2)
    sc = rep["weakly_closed_shortcut"]
    assert sc is not None and not sc["A_abelian"]
    assert sc["gamma_via_A"] == rep["gamma"]["order"] == 3
    assert sc["agrees_with_gamma"]


def test_predictor_comparison_abelian(shared):
    rep = shared.report("M11", 3)
    assert rep["sylow_abelian"]
    assert rep["predictor"]["abelian_sylow"] is True
    assert rep["comparison"]["match"]
    assert "gamma_order" not in rep["comparison"]["checked"]


def test_cache_roundtrip(tmp_path):
    cache = ReportCache(tmp_path)
    options = ReportOptions()
    assert cache.load("S4", 2, options) is None
    rep = build_report("S4", 2, options)
    cache.store("S4", 2, options, rep)
    assert cache.load("S4", 2, options) == rep
    # different options miss
    assert cache.load("S4", 2, ReportOptions(seed=1)) is None
    disabled = ReportCache(tmp_path, enabled=False)
    assert disabled.load("S4", 2, options) is None


def test_survey_subset_and_text(tmp_path):
    result = run_survey(ReportOptions(), rows=[("S4", 2), ("SL2(3)", 2)],
                        cache=ReportCache(tmp_path))
    assert len(result["rows"]) == 2
    text = survey_text(result)
    assert "mismatches:" in text
    # S4 and SL2(3) have no prediction rule; rows still render
    assert "S4" in text


def test_deep_report_has_bounds(shared):
    opts = ReportOptions(deep=True)
    rep = build_report("S4", 2, opts)
    sc = rep["weakly_closed_shortcut"]
    assert sc is not None and sc["A_abelian"] and "bounds" in sc
    b = sc["bounds"]
    assert b["lower"] <= rep["gamma"]["order"] <= b["upper"]


def test_aut_trivial_rejected(shared):
    F = shared.fusion("S4", 2)
    with pytest.raises(PreconditionError):
        F.aut_F(F.lattice.trivial_id)
