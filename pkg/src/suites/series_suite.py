"""Contracts of the tower A_h and of the bivariate ring Q[[q-1, x-1]]."""
import logging
import random
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from config import RunConfig
from errors import NotDivisibleError
from padic.padic_num import PadicNum, factorial_valuation
from prism.delta import require_below_order, xi_tilde
from qcomb.laurent import Q, X
from qcomb.qanalogs import q_int
from series.bivar import BivarSeries, nabla_q, qtaylor_basis, qtaylor_expand, series_log
from series.certificates import distinguished_divide
from series.serialization import bivar_from_json, bivar_to_json, tower_from_json, tower_to_json
from series.tower import TowerSeries, binomial_qpower, embed, frobenius, phi_inverse
from suites.models import Check

logger = logging.getLogger(__name__)


def random_tower(rng: random.Random, p: int, level: int, precision: int, order: int, unit: bool = False) -> TowerSeries:
    modulus = p ** precision
    coeffs = [rng.randrange(modulus) for _ in range(order)]
    if unit and coeffs and coeffs[0] % p == 0:
        coeffs[0] += 1
    return TowerSeries(p, level, order, precision, tuple(coeffs))


def random_bivar(rng: random.Random, order_q: int, order_x: int, terms: int = 12) -> BivarSeries:
    entries = {}
    for _ in range(terms):
        i = rng.randrange(order_q)
        j = rng.randrange(max(order_x - i, 1))
        entries[(i, j)] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return BivarSeries(order_q, order_x, entries)


def frobenius_homomorphism(p: int, level: int, precision: int, order: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    rng = random.Random(f"frobenius-{seed}")
    for i in range(samples):
        f = random_tower(rng, p, level, precision, order)
        g = random_tower(rng, p, level, precision, order)
        if frobenius(f + g) != frobenius(f) + frobenius(g) or frobenius(f * g) != frobenius(f) * frobenius(g):
            return False, {"sample": i}
        if not frobenius(phi_inverse(f)).agrees_with(embed(f, level + 1)):
            return False, {"sample": i, "law": "frobenius after phi_inverse is the embedding"}
    return True, {"samples": samples}


def mu_eigenvector(p: int, level: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    """phi(mu) = xi~ mu, and dividing phi(mu) by xi~ returns mu with a certificate."""
    require_below_order((p - 1) * p ** level, order, "xi~")
    mu = TowerSeries.q(p, level, precision, order) - 1
    xi = xi_tilde(p, precision, order, level)
    if frobenius(mu) != xi * mu:
        return False, {"law": "phi(mu) = xi~ mu"}
    working = precision + order
    big_mu = TowerSeries.q(p, level, working, order) - 1
    certificate = distinguished_divide(frobenius(big_mu), xi_tilde(p, working, order, level))
    if not certificate.verify() or not certificate.quotient.agrees_with(mu):
        return False, {"law": "phi(mu) / xi~ = mu"}
    return True, {"quotient_precision": certificate.precision}


def division_examples(p: int, precision: int, order: int) -> Tuple[bool, Dict[str, Any]]:
    require_below_order(p - 1, order, "xi~")
    working = precision + order
    xi = xi_tilde(p, working, order)
    square = distinguished_divide(xi * xi, xi)
    if not square.quotient.agrees_with(xi) or not square.verify():
        return False, {"case": "xi~^2 / xi~"}
    mu = TowerSeries.q(p, 0, working, order) - 1
    try:
        distinguished_divide(mu, xi)
    except NotDivisibleError as e:
        return True, {"mu_over_xi": e.evidence}
    return False, {"case": "mu / xi~ should not divide"}


def qpower_contracts(p: int, precision: int, order: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    """q^a q^b = q^{a+b}, phi(q^a) = (q^a)^p, q^1 = q and q^{-1} = 1/q."""
    digits = precision + factorial_valuation(order, p)
    rng = random.Random(f"qpower-{seed}")
    q = TowerSeries.q(p, 0, precision, order)
    if binomial_qpower(PadicNum(p, digits, 1), order, precision) != q:
        return False, {"case": "a = 1"}
    if binomial_qpower(PadicNum(p, digits, -1), order, precision) != q.inverse():
        return False, {"case": "a = -1"}
    for i in range(samples):
        a = PadicNum(p, digits, rng.randrange(p ** digits))
        b = PadicNum(p, digits, rng.randrange(p ** digits))
        qa = binomial_qpower(a, order, precision)
        qb = binomial_qpower(b, order, precision)
        if qa * qb != binomial_qpower(a + b, order, precision):
            return False, {"sample": i, "law": "q^a q^b = q^(a+b)"}
        if frobenius(qa) != qa ** p:
            return False, {"sample": i, "law": "phi(q^a) = (q^a)^p"}
    return True, {"samples": samples}


def inverse_contracts(p: int, level: int, precision: int, order: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    rng = random.Random(f"inverse-{seed}")
    one = TowerSeries.constant(1, p, level, precision, order)
    for i in range(samples):
        f = random_tower(rng, p, level, precision, order, unit=True)
        if f * f.inverse() != one:
            return False, {"sample": i}
    return True, {"samples": samples}


def serialization_round_trip(p: int, level: int, precision: int, order: int, seed: int) -> Tuple[bool, Dict[str, Any]]:
    rng = random.Random(f"serialize-{seed}")
    f = random_tower(rng, p, level, precision, order)
    g = random_bivar(rng, 6, 6)
    return tower_from_json(tower_to_json(f)) == f and bivar_from_json(bivar_to_json(g)) == g, {}


def nabla_contracts(order_q: int, order_x: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    """nabla_q(x^n) = [n]_q x^{n-1}, nabla_q mod (q-1) is d/dx, and the q-Leibniz rule."""
    for n in range(-3, 8):
        lhs = nabla_q(BivarSeries.from_laurent(X ** n, order_q, order_x))
        rhs = BivarSeries.from_laurent(q_int(n) * X ** (n - 1), order_q - 1, order_x - 1)
        if lhs != rhs:
            return False, {"power": n}
    rng = random.Random(f"nabla-{seed}")
    for i in range(samples):
        f = random_bivar(rng, order_q, order_x)
        g = random_bivar(rng, order_q, order_x)
        if not nabla_q(f).reduce_mod_q_minus_1().agrees_with(f.partial_x().reduce_mod_q_minus_1()):
            return False, {"sample": i, "law": "reduction to d/dx"}
        leibniz = nabla_q(f) * g.shift_x_to_qx() + f * nabla_q(g)
        if not nabla_q(f * g).agrees_with(leibniz):
            return False, {"sample": i, "law": "q-Leibniz"}
    return True, {"samples": samples}


def log_contracts(order_q: int, order_x: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    """log is additive on 1-units and log(q) = (q-1) - (q-1)^2/2 + ..."""
    log_q = series_log(BivarSeries.q(order_q, order_x))
    if log_q.coefficient(1, 0) != 1 or (order_x > 2 and order_q > 2 and log_q.coefficient(2, 0) != Fraction(-1, 2)):
        return False, {"case": "log(q)"}
    rng = random.Random(f"log-{seed}")
    for i in range(samples):
        f = random_bivar(rng, order_q, order_x)
        g = random_bivar(rng, order_q, order_x)
        u = f - f.coefficient(0, 0) + 1
        v = g - g.coefficient(0, 0) + 1
        if series_log(u * v) != series_log(u) + series_log(v):
            return False, {"sample": i}
    return True, {"samples": samples}


def bivar_inverse_contracts(order_q: int, order_x: int) -> Tuple[bool, Dict[str, Any]]:
    """1/x is the geometric series in 1 - x and the shift sends x to qx."""
    x = BivarSeries.x(order_q, order_x)
    geometric = BivarSeries(order_q, order_x, {(0, j): (-1) ** j for j in range(order_x)})
    if x.inverse() != geometric:
        return False, {"case": "1/x"}
    if x.shift_x_to_qx() != BivarSeries.from_laurent(Q * X, order_q, order_x):
        return False, {"case": "x -> qx"}
    return True, {}


def taylor_basis_contract(order_q: int, order_x: int) -> Tuple[bool, Dict[str, Any]]:
    """Expanding (x,-1;q)_k / [k]_q! gives the k-th unit vector."""
    for k in range(min(order_x, 6)):
        coeffs = qtaylor_expand(qtaylor_basis(k, order_q, order_x))
        for n, a in enumerate(coeffs):
            expected = BivarSeries.constant(1 if n == k else 0, a.order_q, a.order_x)
            if a != expected:
                return False, {"k": k, "n": n}
    return True, {}


def build_checks(config: RunConfig) -> List[Check]:
    p, n, m, h = config.prime, config.precision, config.order, config.level
    mq, mx = config.bivar_order_q, config.bivar_order_x
    seed, samples = config.seed, config.samples
    tower = {"p": p, "N": n, "M": m, "level": h}
    bivar = {"order_q": mq, "order_x": mx}
    return [
        Check("series/frobenius-homomorphism", "phi is a ring map and phi o phi^-1 is the embedding",
              {**tower, "seed": seed}, frobenius_homomorphism, (p, h, n, m, seed, samples)),
        Check("series/mu-eigenvector", "phi(mu) = xi~ mu", tower, mu_eigenvector, (p, h, n, m)),
        Check("series/distinguished-division", "division by distinguished polynomials", tower,
              division_examples, (p, n, m)),
        Check("series/qpower", "q^a is a rank-one exponential in a", {**tower, "seed": seed},
              qpower_contracts, (p, n, m, seed, samples)),
        Check("series/inverse", "units of A_h invert", {**tower, "seed": seed}, inverse_contracts,
              (p, h, n, m, seed, samples)),
        Check("series/serialization", "JSON round trip is exact", {**tower, "seed": seed},
              serialization_round_trip, (p, h, n, m, seed)),
        Check("series/nabla", "q-derivative on Q[[q-1, x-1]]", {**bivar, "seed": seed}, nabla_contracts,
              (mq, mx, seed, samples)),
        Check("series/log", "logarithm of 1-units", {**bivar, "seed": seed}, log_contracts,
              (mq, mx, seed, samples)),
        Check("series/bivar-inverse", "x is invertible in Q[[q-1, x-1]]", bivar, bivar_inverse_contracts, (mq, mx)),
        Check("series/taylor-basis", "q-Taylor expansion of the basis", bivar, taylor_basis_contract, (mq, mx)),
    ]
