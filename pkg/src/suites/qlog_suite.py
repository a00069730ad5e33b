"""The formal q-logarithm, its q-Taylor coefficients and log_q on the base prism."""
import logging
import random
from typing import Any, Dict, List, Tuple

from config import RunConfig
from padic.padic_num import PadicNum, factorial_valuation
from qlog.element import eigenspace_check, mu, qlog_element, qlog_working_precision, scaled_mu, verify_additivity
from qlog.formal import taylor_difference, verify_characterization, verify_taylor_coefficients, verify_uniqueness
from qlog.trace_model import TateExponent, TraceModelReport, trace_map_model, trace_model_precision
from series.tower import TowerSeries, binomial_qpower
from suites.models import Check
from suites.series_suite import random_bivar

logger = logging.getLogger(__name__)

TAYLOR_COUNT_MAX = 16
ROUND_TRIP_SAMPLES = 50


def characterization(order_q: int, order_x: int) -> Tuple[bool, Dict[str, Any]]:
    """nabla_q L = 1/x, L(1) = 0 and log(q) L = (q - 1) log(x)."""
    report = verify_characterization(order_q, order_x)
    return report.passed, report.model_dump()


def taylor_coefficients(order_q: int, order_x: int) -> Tuple[bool, Dict[str, Any]]:
    count = min(TAYLOR_COUNT_MAX, order_x)
    return verify_taylor_coefficients(count, order_q, order_x), {"count": count}


def taylor_round_trip(order_q: int, order_x: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    """Reconstruction inverts expansion, and f minus its reconstruction has no q-Taylor coefficients."""
    rng = random.Random(f"taylor-{seed}")
    for i in range(samples):
        difference = taylor_difference(random_bivar(rng, order_q, order_x))
        if not difference.is_zero():
            return False, {"sample": i, "law": "reconstruct(expand(f)) = f"}
        report = verify_uniqueness(difference)
        if report.vacuous or not report.passed:
            return False, {"sample": i, "law": "uniqueness", **report.model_dump()}
    return True, {"samples": samples}


def qlog_of_q_powers(p: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    """log_q(q^m) = m (q - 1) for m = 1, 2 and -1, each with its Nygaard certificates."""
    working = qlog_working_precision(p, precision, order)
    for m in (1, 2, -1):
        x = TowerSeries.q(p, 0, working, order) ** m
        result, report = qlog_element(x, f"q^{m}")
        if not report.passed:
            return False, {"m": m, "checks": report.checks, "certificates": report.certificates}
        if not result.truncate(precision).agrees_with(mu(p, precision, order) * m):
            return False, {"m": m, "case": "log_q(q^m) = m mu"}
    return True, {"working_precision": working}


def trace_model_case(p: int, value: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    exponent = TateExponent.from_int(value, p, trace_model_precision(p, precision, order))
    _, report = trace_map_model(exponent, precision, order)
    return report.passed, trace_evidence(report)


def trace_model_random(p: int, precision: int, order: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    """The model case for ``samples`` seeded exponents a in Z_p."""
    digits = trace_model_precision(p, precision, order)
    rng = random.Random(f"trace-{seed}")
    for i in range(samples):
        a = PadicNum(p, digits, rng.randrange(p ** digits))
        _, report = trace_map_model(TateExponent(a), precision, order)
        if not report.passed:
            return False, {"sample": i, **trace_evidence(report)}
    return True, {"samples": samples}


def trace_evidence(report: TraceModelReport) -> Dict[str, Any]:
    evidence = {"exponent": report.exponent, "matches_a_mu": report.matches_a_mu, "eigenspace": report.eigenspace}
    if not report.passed:
        evidence["certificates"] = report.qlog.certificates
    return evidence


def additivity(p: int, precision: int, order: int, seed: int, pairs: int) -> Tuple[bool, Dict[str, Any]]:
    """log_q(xy) = log_q(x) + log_q(y), starting from the pair (q, q^-1)."""
    working = qlog_working_precision(p, precision, order)
    q = TowerSeries.q(p, 0, working, order)
    report = verify_additivity(q, q.inverse())
    if not report.passed:
        return False, {"pair": "q, q^-1"}
    digits = working + factorial_valuation(order, p)
    rng = random.Random(f"additivity-{seed}")
    for i in range(pairs):
        a = PadicNum(p, digits, rng.randrange(p ** digits))
        b = PadicNum(p, digits, rng.randrange(p ** digits))
        report = verify_additivity(binomial_qpower(a, order, working), binomial_qpower(b, order, working))
        if not report.passed:
            return False, {"pair": i, "precision": report.precision}
    return True, {"pairs": pairs + 1}


def eigenspace(p: int, precision: int, order: int, seed: int) -> Tuple[bool, Dict[str, Any]]:
    """a mu satisfies phi(y) = xi~ y, while mu^2 does not."""
    a = PadicNum(p, precision, random.Random(f"eigen-{seed}").randrange(p ** precision))
    if not eigenspace_check(scaled_mu(a, precision, order)).passed:
        return False, {"case": "a mu"}
    square = mu(p, precision, order) ** 2
    if order > 2 and eigenspace_check(square).passed:
        return False, {"case": "mu^2 should not be an eigenvector"}
    return True, {}


def build_checks(config: RunConfig) -> List[Check]:
    p, n, m = config.prime, config.precision, config.order
    mq, mx = config.bivar_order_q, config.bivar_order_x
    seed, samples = config.seed, config.samples
    tower = {"p": p, "N": n, "M": m}
    bivar = {"order_q": mq, "order_x": mx}
    checks = [
        Check("qlog/characterization", "log_q is the unique solution of nabla_q L = 1/x with L(1) = 0",
              bivar, characterization, (mq, mx)),
        Check("qlog/taylor-coefficients", "q-Taylor coefficients of log_q", bivar, taylor_coefficients, (mq, mx)),
        Check("qlog/taylor-round-trip", "q-Taylor expansion determines the series", {**bivar, "seed": seed},
              taylor_round_trip, (mq, mx, seed, ROUND_TRIP_SAMPLES)),
        Check("qlog/q-powers", "log_q(q^m) = m (q - 1)", tower, qlog_of_q_powers, (p, n, m)),
        Check("qlog/additivity", "log_q is a homomorphism on rank-one 1-units", {**tower, "seed": seed},
              additivity, (p, n, m, seed, samples)),
        Check("qlog/eigenspace", "log_q lands in the phi = xi~ eigenspace", {**tower, "seed": seed},
              eigenspace, (p, n, m, seed)),
        Check("qlog/trace-model/random", "eps^a maps to a (q - 1)", {**tower, "seed": seed},
              trace_model_random, (p, n, m, seed, samples)),
    ]
    for value in (0, 1, 1 + p + p * p):
        checks.append(Check(
            f"qlog/trace-model/a={value}", "eps^a maps to a (q - 1)", {**tower, "a": value},
            trace_model_case, (p, value, n, m),
        ))
    return checks
