import json
import math
from functools import lru_cache

import numpy as np
import pytest

from summakit.corpus import KNOWN_VALUES, corpus_get, corpus_names
from summakit.equivalence import (DISAGREE, EQUIVALENT, VIOLATED, agreement, corpus_rows, run_cesaro_riesz,
                                  run_claim_monotone, run_prop1, run_tauberian, run_theorem4)
from summakit.limits import LimitEstimate
from summakit.series import MethodInapplicableError, from_values


@lru_cache(maxsize=None)
def equiv_report(name):
    return run_theorem4(corpus_get(name))


def test_equivalence_method_panel():
    rep = equiv_report("log2")
    assert set(rep.estimates) == {"lebesgue", "gamma[1]", "gamma[2]", "gamma[3]", "riesz[1]", "riesz[2]",
                                  "cesaro[1]", "cesaro[2]", "abel"}
    assert rep.conditions[0].condition_id == "T1_2_6"


def test_equivalence_panel_without_cesaro_for_general_nodes():
    s = from_values([1.0, -0.5, 0.25], nodes=[0.0, 0.7, 1.9])
    rep = run_theorem4(s)
    assert not any(k.startswith("cesaro") for k in rep.estimates)
    assert rep.verdict == EQUIVALENT


def test_equivalence_grandi_values():
    # every method sums grandi to 1/2, but sum_{n <= x} n is not O(x): the
    # T1 hypothesis fails and the report says so
    rep = equiv_report("grandi")
    for label, est in rep.estimates.items():
        assert est.converged, label
        assert abs(est.value - 0.5) < 1e-3, label
    assert rep.conditions[0].verdict == "fails"
    assert rep.verdict == VIOLATED


def test_equivalence_abel_only_negative_control():
    rep = equiv_report("abel_only")
    assert rep.verdict == VIOLATED
    assert rep.estimates["abel"].converged
    assert abs(rep.estimates["abel"].value + 0.25) < 1e-3
    assert not rep.estimates["cesaro[1]"].converged


def test_equivalence_zero():
    rep = equiv_report("zero")
    assert rep.verdict == EQUIVALENT
    assert all(e.value == 0 for e in rep.estimates.values())


@pytest.mark.parametrize("name", ["log2", "basel", "sawtooth_quarter"])
def test_equivalence_positive(name):
    rep = equiv_report(name)
    assert rep.verdict == EQUIVALENT
    for est in rep.estimates.values():
        assert abs(est.value - KNOWN_VALUES[name]) < 1e-3


def test_equivalence_soundness_suite():
    for name in corpus_names():
        rep = equiv_report(name)
        converged = [e for e in rep.estimates.values() if e.converged]
        if rep.conditions[0].verdict == "holds" and len(converged) >= 2:
            assert rep.max_disagreement <= 2e-3, name


def test_agreement_matrix_symmetric():
    m = equiv_report("basel").agreement_matrix
    for a in m:
        for b in m[a]:
            assert m[a][b] == m[b][a]


def test_agreement_skips_unconverged():
    est = {"a": LimitEstimate(1.0, 0, True, 4, "raw"), "b": LimitEstimate(5.0, 1, False, 4, "raw")}
    assert agreement(est) == {"a": {}}


def test_disagreement_verdict():
    # x -> infinity means of a series whose partial sums drift slowly never settle
    s = from_values(np.full(50, 1.0))  # terminating: every mean converges to 50, fine
    assert run_theorem4(s).verdict == EQUIVALENT
    rep = run_theorem4(corpus_get("log2"), tol=1e-15)
    assert rep.verdict == DISAGREE


def test_report_json_roundtrip():
    d = equiv_report("abel_only").to_dict()
    text = json.dumps(d, allow_nan=False)
    back = json.loads(text)
    assert back["verdict"] == VIOLATED
    assert back["estimates"]["abel"]["value"][0] == pytest.approx(-0.25, abs=1e-3)


def test_sawtooth_shadow():
    rep = run_prop1(corpus_get("sawtooth_quarter"))
    ids = {c.condition_id: c for c in rep.conditions}
    assert ids["rho_1_4"].verdict == "holds" and ids["moricz_1_5"].verdict == "holds"
    assert abs(rep.estimates["lebesgue"].value - math.pi / 4) < 1e-3
    assert rep.estimates["lebesgue"].side_certified


# --- pointwise trig, order monotonicity, cesaro-riesz, tauberian ----------------------------------------

@pytest.mark.parametrize("name", ["sawtooth_quarter", "zero", "log2", "basel"])
def test_lebesgue_vs_gamma1_pass(name):
    rep = run_prop1(corpus_get(name))
    assert rep.outcome == "pass", rep.detail


def test_lebesgue_vs_gamma1_grandi_not_applicable():
    rep = run_prop1(corpus_get("grandi"))
    assert rep.outcome == "not-applicable"
    assert abs(rep.estimates["lebesgue"].value - 0.5) < 1e-3
    assert abs(rep.estimates["gamma[1]"].value - 0.5) < 1e-3


@pytest.mark.parametrize("name,k,t,value", [("log2", 1, 3, math.log(2)), ("zero", 1, 2, 0.0),
                                            ("zero", 2, 3.5, 0.0), ("basel", 2, 3, math.pi**2 / 6)])
def test_order_monotone(name, k, t, value):
    rep = run_claim_monotone(corpus_get(name), k, t)
    assert rep.outcome == "pass", rep.detail
    for est in rep.estimates.values():
        assert abs(est.value - value) < 1e-3


def test_order_monotone_grandi_values():
    rep = run_claim_monotone(corpus_get("grandi"), 1, 2)
    assert rep.outcome == "not-applicable"  # T1 fails
    for est in rep.estimates.values():
        assert abs(est.value - 0.5) < 1e-6


def test_order_monotone_preconditions():
    with pytest.raises(ValueError):
        run_claim_monotone(corpus_get("zero"), 2, 1)
    with pytest.raises(ValueError):
        run_claim_monotone(corpus_get("zero"), 0.5, 1)


@pytest.mark.parametrize("name", ["grandi", "log2", "zero"])
def test_cesaro_riesz(name):
    rep = run_cesaro_riesz(corpus_get(name), 1)
    assert rep.outcome == "pass"
    for est in rep.estimates.values():
        assert abs(est.value - KNOWN_VALUES[name]) < 1e-3


def test_cesaro_riesz_both_diverge():
    rep = run_cesaro_riesz(corpus_get("abel_only"), 1)
    assert rep.outcome == "pass" and "neither" in rep.detail


def test_cesaro_riesz_needs_integer_nodes():
    with pytest.raises(MethodInapplicableError):
        run_cesaro_riesz(from_values([1, 2], nodes=[0.0, 0.5]), 1)


def test_tauberian_log2():
    rep = run_tauberian(corpus_get("log2"))
    assert rep.outcome == "pass"
    ids = {c.condition_id: c.verdict for c in rep.conditions}
    assert ids["ratio_3_1"] == "holds"
    assert abs(rep.estimates["gamma[1]"].value - math.log(2)) < 1e-3
    assert abs(rep.estimates["riesz[0]"].value - math.log(2)) < 1e-3


def test_tauberian_basel():
    rep = run_tauberian(corpus_get("basel"))
    assert rep.outcome == "pass"
    assert {c.condition_id: c.verdict for c in rep.conditions}["ratio_3_1"] == "holds"
    for est in rep.estimates.values():
        assert abs(est.value - math.pi**2 / 6) < 1e-3


def test_tauberian_zero():
    assert run_tauberian(corpus_get("zero")).outcome == "pass"


def test_tauberian_grandi_not_applicable():
    assert run_tauberian(corpus_get("grandi")).outcome == "not-applicable"


def test_corpus_rows():
    rows = corpus_rows([equiv_report("zero")])
    assert len(rows) == 9
    assert rows[0][0] == "zero"
