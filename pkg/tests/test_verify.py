"""Verification campaign plumbing: reports, determinism, campaign outcomes."""

import json

import pytest

from coxbalance.rootsys import build_root_system
from coxbalance.verify import (
    VerificationReport,
    classify_fc_equality,
    run_campaign,
    verify_conjecture,
    verify_counterexamples,
    verify_equality_cases,
    verify_exit_witnesses,
    verify_params_table,
)


def test_report_json_shape():
    rep = VerificationReport("demo")
    rep.check("first", 1, 1)
    rep.check("second", 2, 3)
    data = json.loads(rep.to_json())
    assert data["schema"] == 1
    assert data["summary"] == {"total": 2, "passed": 1, "failed": 1}
    assert data["records"][0]["instance"] == "first"
    assert not rep.all_passed
    assert "FAIL" in rep.table()


def test_reports_byte_identical():
    a = verify_params_table().to_json()
    b = verify_params_table().to_json()
    assert a == b
    c = verify_counterexamples().to_json()
    d = verify_counterexamples().to_json()
    assert c == d


def test_duration_not_serialized():
    rep = verify_params_table()
    assert rep.duration > 0
    assert "duration" not in rep.to_json()


def test_params_table_campaign():
    rep = verify_params_table()
    assert rep.all_passed
    assert rep.total >= 21


def test_conjecture_campaign_small():
    for family, rank in [("A", 2), ("B", 2), ("G", 2)]:
        rep = verify_conjecture(build_root_system(family, rank))
        assert rep.all_passed, rep.table()


def test_equality_campaign():
    rep = verify_equality_cases()
    assert rep.all_passed, rep.table()


def test_counterexamples_campaign():
    rep = verify_counterexamples()
    assert rep.all_passed, rep.table()


def test_exit_witness_campaign():
    rep = verify_exit_witnesses()
    assert rep.all_passed, rep.table()


def test_classify_campaign_a3():
    rep = classify_fc_equality(build_root_system("A", 3))
    assert rep.all_passed
    # in A3 every equality heap is a single 2-chain component, so nothing
    # lands outside the reference list
    outside = [r for r in rep.records if "outside" in r.instance]
    assert outside and outside[0].value == "0"


def test_classify_campaign_reports_dual_claws():
    """Inverse elements carry the dual heaps, which match no figure shape.

    These are reported as findings (still passing records).
    """
    rep = classify_fc_equality(build_root_system("B", 3))
    assert rep.all_passed
    outside = [r for r in rep.records if "outside" in r.instance]
    assert outside and int(outside[0].value) >= 1


def test_unknown_campaign():
    with pytest.raises(ValueError, match="unknown campaign"):
        run_campaign("nope")
