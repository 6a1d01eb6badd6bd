import math

import numpy as np
import pytest

from summakit.corpus import KNOWN_VALUES, corpus_get, corpus_names, sawtooth
from summakit.series import (HorizonError, NodeSequence, PartialSumTable, SeriesSpec, TrigSeries,
                             default_horizon, from_values, partial_sum, trig_to_series)


def test_partial_sum_examples():
    assert partial_sum(corpus_get("grandi"), 3) == 0
    assert partial_sum(corpus_get("zero"), 100) == 0
    assert partial_sum(corpus_get("basel"), 3) == pytest.approx(49 / 36, abs=1e-15)


def test_partial_sum_inclusive_boundary():
    s = corpus_get("grandi")
    assert partial_sum(s, 2.0) == 1
    assert partial_sum(s, 1.999) == 0
    assert partial_sum(s, -0.5) == 0


def test_partial_sum_beyond_horizon_raises():
    s = SeriesSpec(NodeSequence.integers(), lambda n: np.ones(np.shape(n)), horizon=100)
    with pytest.raises(HorizonError):
        partial_sum(s, 150)
    with pytest.raises(HorizonError):
        partial_sum(s, 99)  # the last node itself: tail unknown
    assert partial_sum(s, 98.5) == 99


def test_terminating_series_sums_everything():
    s = from_values([1.0, 2.0, 3.0])
    assert partial_sum(s, 1e9) == 6


def test_partial_sum_table_steps():
    s = corpus_get("basel")
    tab = PartialSumTable.from_series(s, 50)
    assert tab(-1.0) == 0
    assert tab(0.5) == 0  # c_0 = 0
    assert tab(3.0) == pytest.approx(49 / 36)
    diffs = np.diff(tab.sums)
    _, c = s.terms_upto(50)
    # equal up to the rounding of the running sum
    np.testing.assert_allclose(diffs, c[1:], rtol=0, atol=4 * np.finfo(float).eps * 2)


def test_trig_adapter_sawtooth_quarter():
    s = trig_to_series(sawtooth(math.pi / 2))
    _, c = s.head(6)
    np.testing.assert_allclose(c.real, [0, 1, 0, -1 / 3, 0, 1 / 5], atol=1e-15)


def test_trig_adapter_constant_term_halved():
    t = TrigSeries(lambda n: np.where(np.asarray(n) == 0, 2.0, 0.0), lambda n: np.zeros(np.shape(n)), 0.7)
    _, c = t.series.head(5)
    np.testing.assert_array_equal(c, [1, 0, 0, 0, 0])


def test_trig_adapter_zero():
    z = lambda n: np.zeros(np.shape(n))  # noqa: E731
    _, c = TrigSeries(z, z, 1.3).series.head(10)
    assert not np.any(c)


def test_corpus_entries():
    assert set(corpus_names()) >= {"grandi", "log2", "basel", "abel_only", "sawtooth_quarter", "zero"}
    _, c = corpus_get("grandi").head(4)
    np.testing.assert_array_equal(c.real, [1, -1, 1, -1])
    with pytest.raises(KeyError):
        corpus_get("no_such_series")


def test_corpus_log2_partial_sum_average():
    s = corpus_get("log2")
    # mean of two consecutive partial sums cancels the leading oscillation
    avg = 0.5 * (partial_sum(s, 10**5) + partial_sum(s, 10**5 + 1))
    assert abs(avg - math.log(2)) < 1e-9


def test_corpus_abel_only_at_ln2():
    lam, c = corpus_get("abel_only").head(200)
    assert np.sum(c * 2.0**-lam).real == pytest.approx(-2 / 9, abs=1e-14)


def test_corpus_determinism():
    a = corpus_get("log2").coeffs(np.arange(1000))
    b = corpus_get("log2").coeffs(np.arange(1000))
    assert np.array_equal(a, b)
    assert corpus_get("log2") is corpus_get("log2")


def test_known_values_cover_corpus():
    assert set(KNOWN_VALUES) == set(corpus_names())


def test_nodes_must_increase_strictly():
    with pytest.raises(ValueError, match="strictly increasing"):
        NodeSequence.explicit([0, 1, 1, 2])
    with pytest.raises(ValueError):
        NodeSequence(lambda n: np.minimum(np.asarray(n, float), 10.0))


def test_nodes_must_be_declared_unbounded_and_grow():
    with pytest.raises(ValueError):
        NodeSequence(lambda n: np.asarray(n, float), declared_unbounded=False)
    with pytest.raises(ValueError, match="grow"):
        NodeSequence(lambda n: 1 - 1 / (np.asarray(n, float) + 2))
    with pytest.raises(ValueError):
        NodeSequence(lambda n: np.asarray(n, float) - 1)


def test_general_nodes_count():
    ns = NodeSequence(lambda n: np.sqrt(np.asarray(n, float)) * 3)
    s = SeriesSpec(ns, lambda n: np.ones(np.shape(n)), horizon=10**5)
    assert s.count_upto(30.0) == 101  # 3 sqrt(n) <= 30  <=>  n <= 100
    assert partial_sum(s, 30.0) == 101


def test_horizon_env(monkeypatch):
    monkeypatch.setenv("SUMMAKIT_HORIZON", "5000")
    assert default_horizon() == 5000
    assert SeriesSpec(NodeSequence.integers(), lambda n: np.zeros(np.shape(n))).horizon == 5000
    monkeypatch.setenv("SUMMAKIT_HORIZON", "1")
    with pytest.raises(ValueError):
        default_horizon()


def test_from_values_with_nodes():
    s = from_values([1, 1j, -1], nodes=[0.0, 0.5, 2.5])
    assert s.terminates
    assert partial_sum(s, 1.0) == 1 + 1j
    with pytest.raises(ValueError):
        from_values([1, 2], nodes=[0.0, 1.0, 2.0])
