"""delta-structure, Nygaard certificates, [n]_q! factorizations and q-divided powers."""
import json
import logging
import random
from typing import Any, Dict, List, Tuple

from config import RunConfig
from errors import NotDivisibleError
from padic.padic_num import PadicNum, factorial_valuation
from prism.delta import (delta, is_distinguished, phi_power_xi, rank_one_check, xi_frobenius_check, xi_r,
                         xi_r_matches_q_integer, xi_tilde)
from prism.divided_powers import congruence_check, qdivided_power, qdivided_working_precision
from prism.factorization import factorial_exponents, qfact_factorize
from prism.nygaard import ideal_membership, nygaard_level
from prism.serialization import factorization_from_json, factorization_to_json, nygaard_from_json, nygaard_to_json
from qcomb.laurent import LaurentPoly, Q
from qcomb.qanalogs import q_binomial, q_int
from series.tower import TowerSeries, binomial_qpower, evaluate_q1, frobenius
from suites.models import Check
from suites.series_suite import random_tower

logger = logging.getLogger(__name__)

DIVIDED_POWER_MAX = 6
CLOSED_FORM_MAX = 10


def xi_products(p: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    """xi~_r = [p^r]_q exactly and in the tower, and phi(xi) = xi~ at level 1."""
    for r in range(1, 4):
        if not xi_r_matches_q_integer(r, p):
            return False, {"r": r, "where": "Z[q]"}
        tower = TowerSeries.from_laurent(q_int(p ** r), p, 0, precision, order)
        if xi_r(r, p, precision, order) != tower:
            return False, {"r": r, "where": "tower"}
    if not xi_frobenius_check(p, precision, order):
        return False, {"case": "phi(xi) = xi~"}
    return True, {}


def delta_axioms(p: int, precision: int, order: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    """delta(0) = delta(1) = 0, the sum and product rules, and phi(x) = x^p + p delta(x)."""
    guarded = precision + 1
    zero = TowerSeries.zero(p, 0, guarded, order)
    one = TowerSeries.constant(1, p, 0, guarded, order)
    if not delta(zero).is_zero() or not delta(one).is_zero():
        return False, {"case": "delta(0), delta(1)"}
    rng = random.Random(f"delta-{seed}")
    for i in range(samples):
        # two guard digits: the correction term (x^p + y^p - (x+y)^p)/p is itself divided by p
        f = random_tower(rng, p, 0, precision + 2, order)
        g = random_tower(rng, p, 0, precision + 2, order)
        df, dg = delta(f).truncate(precision), delta(g).truncate(precision)
        correction = _divide_exactly_by_p(f ** p + g ** p - (f + g) ** p).truncate(precision)
        if delta(f + g).truncate(precision) != df + dg + correction:
            return False, {"sample": i, "law": "sum rule"}
        product = (f ** p).truncate(precision) * dg + (g ** p).truncate(precision) * df + df * dg * p
        if delta(f * g).truncate(precision) != product:
            return False, {"sample": i, "law": "product rule"}
        if frobenius(f).truncate(precision) != ((f ** p) + delta(f) * p).truncate(precision):
            return False, {"sample": i, "law": "phi(x) = x^p + p delta(x)"}
    return True, {"samples": samples}


def _divide_exactly_by_p(f: TowerSeries) -> TowerSeries:
    return TowerSeries(f.prime, f.level, f.order, f.precision - 1, tuple(c // f.prime for c in f.coeffs))


def distinguished_elements(p: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    """delta(q) = 0, delta(xi~)(1) = 1 - p^{p-1}, xi~ and its twists are distinguished, 1 is not."""
    guarded = precision + 1
    if not delta(TowerSeries.q(p, 0, guarded, order)).is_zero():
        return False, {"case": "delta(q)"}
    delta_xi = evaluate_q1(delta(xi_tilde(p, guarded, order)))
    if delta_xi != PadicNum(p, precision, 1 - p ** (p - 1)):
        return False, {"case": "delta(xi~)(1)", "value": str(delta_xi)}
    for r in range(4):
        verdict, evidence = is_distinguished(phi_power_xi(r, p, guarded, order))
        if not verdict:
            return False, {"r": r, **evidence}
    verdict, _ = is_distinguished(TowerSeries.constant(1, p, 0, guarded, order))
    return not verdict, {}


def rank_one_examples(p: int, precision: int, order: int, seed: int) -> Tuple[bool, Dict[str, Any]]:
    q = TowerSeries.q(p, 0, precision, order)
    if not rank_one_check(q):
        return False, {"case": "q"}
    digits = precision + factorial_valuation(order, p)
    a = PadicNum(p, digits, random.Random(f"rank-{seed}").randrange(p ** digits))
    if not rank_one_check(binomial_qpower(a, order, precision)):
        return False, {"case": "q^a"}
    mu = q - 1
    if order > 2 and rank_one_check(1 + mu * mu):
        return False, {"case": "1 + mu^2 should not be rank one"}
    return True, {}


def nygaard_examples(p: int, precision: int, order: int, seed: int) -> Tuple[bool, Dict[str, Any]]:
    """mu in N^{>=1} with quotient mu, mu^2 in N^{>=2}, 1 at level 0, and levels add under products."""
    working = precision + 4 * order
    mu = TowerSeries.q(p, 0, working, order) - 1
    first = nygaard_level(mu, 1)
    if first.level != 1 or not first.quotient.agrees_with(mu) or not first.verify():
        return False, {"case": "mu", "certificate": nygaard_to_json(first)}
    if nygaard_level(mu * mu, 2).level != 2:
        return False, {"case": "mu^2"}
    if nygaard_level(TowerSeries.constant(1, p, 0, working, order), 1).level != 0:
        return False, {"case": "1"}
    rng = random.Random(f"nygaard-{seed}")
    f = mu * random_tower(rng, p, 0, working, order)
    g = mu * random_tower(rng, p, 0, working, order)
    level_f, level_g = nygaard_level(f, 1).level, nygaard_level(g, 1).level
    level_fg = nygaard_level(f * g, 2).level
    if level_fg < level_f + level_g:
        return False, {"levels": [level_f, level_g, level_fg]}
    return True, {"levels": [level_f, level_g, level_fg]}


def ideal_examples(p: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    """[p^r m]_q lies in I_r while [p^{r-1}]_q does not (for r >= 2)."""
    for r in (1, 2):
        working = precision + r * order
        member = TowerSeries.from_laurent(q_int(p ** r * 2), p, 0, working, order)
        certificate = ideal_membership(member, r)
        if not certificate.verify():
            return False, {"r": r, "case": "member"}
        if r >= 2:
            outsider = TowerSeries.from_laurent(q_int(p ** (r - 1)), p, 0, working, order)
            try:
                ideal_membership(outsider, r)
                return False, {"r": r, "case": "outsider divided"}
            except NotDivisibleError:
                pass
    return True, {}


def factorization_case(p: int, n: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    """Exponents a_r = floor(n/p^r), re-verification from JSON, and tamper detection."""
    certificate = qfact_factorize(n, p, precision, order)
    if certificate.exponents != factorial_exponents(n, p):
        return False, {"exponents": list(certificate.exponents)}
    data = json.loads(json.dumps(factorization_to_json(certificate)))
    if not factorization_from_json(data).verify():
        return False, {"case": "re-verification", "certificate": data}
    tampered = tamper_unit(data)
    if factorization_from_json(tampered).verify():
        return False, {"case": "tampered certificate accepted", "certificate": tampered}
    return True, {"exponents": list(certificate.exponents), "unit_at_1": str(evaluate_q1(certificate.unit))}


def tamper_unit(data: Dict[str, Any]) -> Dict[str, Any]:
    """Copy of a factorization certificate with u(0) moved by one, a change visible modulo p^N."""
    tampered = json.loads(json.dumps(data))
    unit = tampered["unit"]
    modulus = unit["prime"] ** unit["coeff_precision"]
    unit["coefficients"][0] = str((int(unit["coefficients"][0]) + 1) % modulus)
    return tampered


def divided_power_case(p: int, n: int, precision: int, order: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    """gamma_{n,q}(q^a - 1) exists with a level-n certificate that survives a JSON round trip."""
    working = qdivided_working_precision(p, n, precision, order)
    digits = working + factorial_valuation(order, p)
    rng = random.Random(f"divided-{seed}-{n}")
    for i in range(samples):
        a = PadicNum(p, digits, rng.randrange(p ** digits))
        gamma, certificate = qdivided_power(binomial_qpower(a, order, working), n)
        if certificate.level < n:
            return False, {"sample": i, "level": certificate.level, "certificate": nygaard_to_json(certificate)}
        restored = nygaard_from_json(json.loads(json.dumps(nygaard_to_json(certificate))))
        if not restored.verify():
            return False, {"sample": i, "case": "re-verification", "certificate": nygaard_to_json(certificate)}
    return True, {"samples": samples}


def divided_power_closed_form(p: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    """gamma_{n,q}(q^m - 1) = q^{n(n-1)/2} (q-1)^n binom(m,n)_q, which vanishes at m = 1 for n >= 2."""
    for n in range(1, DIVIDED_POWER_MAX + 1):
        working = qdivided_working_precision(p, n, precision, order)
        if n >= 2:
            gamma, _ = qdivided_power(TowerSeries.q(p, 0, working, order), n)
            if not gamma.is_zero():
                return False, {"n": n, "case": "x = q"}
        for m in range(n, CLOSED_FORM_MAX + 1):
            x = TowerSeries.from_laurent(Q ** m, p, 0, working, order)
            gamma, _ = qdivided_power(x, n)
            oracle: LaurentPoly = q_binomial(m, n).shift(q=n * (n - 1) // 2) * (Q - 1) ** n
            expected = TowerSeries.from_laurent(oracle, p, 0, gamma.precision, order)
            if gamma != expected:
                return False, {"n": n, "m": m}
    return True, {}


def congruence_case(p: int, r: int) -> Tuple[bool, Dict[str, Any]]:
    report = congruence_check(r, p)
    return report.passed, {"unit": report.unit, "residue": report.frobenius_residue[:4]}


def build_checks(config: RunConfig) -> List[Check]:
    p, n, m = config.prime, config.precision, config.order
    seed, samples = config.seed, config.samples
    base = {"p": p, "N": n, "M": m}
    checks = [
        Check("prism/xi-products", "xi~_r = [p^r]_q and phi(xi) = xi~", base, xi_products, (p, n, m)),
        Check("prism/delta-axioms", "delta-ring axioms and phi(x) = x^p + p delta(x)", {**base, "seed": seed},
              delta_axioms, (p, n, m, seed, samples)),
        Check("prism/distinguished", "delta(xi~) is a unit", base, distinguished_elements, (p, n, m)),
        Check("prism/rank-one", "q^a has rank one, 1 + mu^2 does not", {**base, "seed": seed},
              rank_one_examples, (p, n, m, seed)),
        Check("prism/nygaard", "Nygaard filtration certificates", {**base, "seed": seed},
              nygaard_examples, (p, n, m, seed)),
        Check("prism/ideal-membership", "I_r = ([p^r]_q)", base, ideal_examples, (p, n, m)),
        Check("prism/divided-power-closed-form", "gamma_{n,q}(q^m - 1) = q^{n(n-1)/2} (q-1)^n binom(m,n)_q",
              base, divided_power_closed_form, (p, n, m)),
    ]
    for k in range(1, p ** 3 + 1):
        checks.append(Check(
            f"prism/qfact/n={k:03d}", "[n]_q! = u prod phi^{r-1}(xi~)^{a_r} with a unit u", {**base, "n": k},
            factorization_case, (p, k, n, m),
        ))
    for k in range(1, DIVIDED_POWER_MAX + 1):
        checks.append(Check(
            f"prism/divided-power/n={k}", "q-divided powers lie in N^{>=n}", {**base, "n": k, "seed": seed},
            divided_power_case, (p, k, n, m, seed, samples),
        ))
    for prime in (2, 3, 5):
        for r in (1, 2, 3):
            checks.append(Check(
                f"prism/congruence/p={prime}/r={r}", "phi^r(xi~) = p * unit modulo xi~", {"p": prime, "r": r},
                congruence_case, (prime, r),
            ))
    return checks
