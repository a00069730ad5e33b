import random

import pytest
from hypothesis import given, settings, strategies as st

from config import RunConfig
from errors import HypothesisError, PrecisionError
from padic.padic_num import PadicNum
from qcomb.laurent import Q
from qlog.element import QLogReport, eigenspace_check, mu, qlog_element, qlog_working_precision, verify_additivity
from qlog.formal import (inverse_x_taylor_coefficients, qlog_formal, qlog_taylor_coefficients, round_trip,
                         taylor_difference, verify_characterization, verify_taylor_coefficients, verify_uniqueness)
from qlog.trace_model import TateExponent, TraceModelReport, trace_map_model, trace_model_precision
from series.bivar import BivarSeries
from series.tower import TowerSeries
from suites.qlog_suite import ROUND_TRIP_SAMPLES, trace_evidence, build_checks, trace_model_random
from suites.series_suite import random_bivar


@pytest.mark.parametrize("orders", [(6, 6), (8, 8), (5, 9), (9, 5)])
def test_characterization(orders):
    report = verify_characterization(*orders)
    assert report.nabla_is_inverse_x
    assert report.vanishes_at_x1
    assert report.log_ratio_holds


def test_qlog_starts_with_x_minus_one():
    log_q = qlog_formal(6, 6)
    assert log_q.coefficient(0, 1) == 1
    assert log_q.coefficient(0, 0) == 0
    with pytest.raises(ValueError):
        qlog_formal(0, 4)


def test_taylor_coefficients():
    assert verify_taylor_coefficients(15, 16, 16)


def test_taylor_coefficient_closed_forms():
    coeffs = qlog_taylor_coefficients(4, 6, 6)
    assert coeffs[0].is_zero()
    assert coeffs[1] == BivarSeries.constant(1, 6, 6)
    assert coeffs[2] == BivarSeries.from_laurent(-Q ** -1, 6, 6)
    assert coeffs[3] == BivarSeries.from_laurent((1 + Q) * Q ** -3, 6, 6)
    # the coefficients of 1/x sit one index lower
    assert inverse_x_taylor_coefficients(3, 6, 6) == coeffs[1:]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_taylor_round_trip(seed):
    f = random_bivar(random.Random(seed), 8, 8)
    assert round_trip(f)
    assert taylor_difference(f).is_zero()


def test_uniqueness():
    report = verify_uniqueness(BivarSeries.x(6, 6))
    assert report.vacuous
    report = verify_uniqueness(BivarSeries(6, 6))
    assert not report.vacuous
    assert report.passed


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [1, 2, 3, -1])
def test_qlog_of_q_powers(p, m):
    precision, order = 4, 8
    working = qlog_working_precision(p, precision, order)
    result, report = qlog_element(TowerSeries.q(p, 0, working, order) ** m, f"q^{m}")
    assert report.passed
    assert len(report.certificates) == 2
    assert report.terms_used == order - 1
    assert result.precision >= precision
    assert result.agrees_with(mu(p, precision, order) * m)


def test_qlog_hypotheses():
    p, order = 3, 8
    with pytest.raises(HypothesisError):
        qlog_element(1 + mu(p, 60, order) ** 2)
    with pytest.raises(HypothesisError):
        qlog_element(TowerSeries.constant(-1, p, 0, 60, order))


def test_qlog_of_one_is_zero():
    p, order = 2, 8
    one = TowerSeries.constant(1, p, 0, qlog_working_precision(p, 4, order), order)
    result, report = qlog_element(one, "1")
    assert result.is_zero()
    assert report.passed


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("value", [0, 1, -1, 7])
def test_trace_model(p, value):
    precision, order = 4, 8
    exponent = TateExponent.from_int(value, p, trace_model_precision(p, precision, order))
    result, report = trace_map_model(exponent, precision, order)
    assert report.passed
    assert result.agrees_with(mu(p, precision, order) * PadicNum(p, precision, value))


def test_trace_model_needs_digits_of_the_exponent():
    with pytest.raises(PrecisionError):
        trace_map_model(TateExponent.from_int(5, 3, 6), 4, 8)


def test_additivity():
    p, precision, order = 3, 4, 8
    q = TowerSeries.q(p, 0, qlog_working_precision(p, precision, order), order)
    assert verify_additivity(q, q.inverse()).passed
    assert verify_additivity(q ** 2, q ** 3).passed


def test_eigenspace():
    assert eigenspace_check(mu(3, 10, 12)).passed
    report = eigenspace_check(TowerSeries.q(3, 0, 10, 12))
    assert not report.passed
    assert report.first_difference >= 0


def test_suite_sample_counts():
    checks = {check.check_id: check for check in build_checks(RunConfig(prime=3, samples=7))}
    assert checks["qlog/taylor-round-trip"].args[-1] == ROUND_TRIP_SAMPLES
    assert checks["qlog/additivity"].args[-1] == 7
    assert checks["qlog/trace-model/random"].args[-1] == 7
    passed, evidence = trace_model_random(3, 3, 6, 11, 3)
    assert passed
    assert evidence == {"samples": 3}


def test_failing_trace_model_carries_its_certificates():
    certificate = {"kind": "nygaard", "level": 1}
    qlog = QLogReport(input="q^a", prime=3, level=0, terms_used=5, tail_bound={"cutoff": 6}, precision=3, order=6,
                      checks={"nygaard_levels": False}, certificates=[certificate])
    failing = TraceModelReport(exponent="2", matches_a_mu=True, eigenspace=True, qlog=qlog)
    assert trace_evidence(failing)["certificates"] == [certificate]

    passing = TraceModelReport(exponent="2", matches_a_mu=True, eigenspace=True,
                               qlog=qlog.model_copy(update={"checks": {"nygaard_levels": True}}))
    assert "certificates" not in trace_evidence(passing)
