"""Contracts of truncated p-adic arithmetic."""
import logging
import math
import random
from typing import Any, Dict, List, Tuple

from config import RunConfig
from errors import NotDivisibleError
from padic.padic_num import (PadicNum, arith, divide_by_p, factorial_valuation, padic_binomial,
                             teichmuller, valuation)
from suites.models import Check

logger = logging.getLogger(__name__)


def teichmuller_lifts(p: int, precision: int) -> Tuple[bool, Dict[str, Any]]:
    """Each lift is a root of x^p = x in its residue class, and lifting is multiplicative."""
    lifts = {a0: teichmuller(a0, p, precision) for a0 in range(p)}
    for a0, x in lifts.items():
        if x.value % p != a0 or x ** p != x:
            return False, {"residue": a0, "lift": str(x)}
    for a in range(p):
        for b in range(p):
            if lifts[a] * lifts[b] != lifts[(a * b) % p]:
                return False, {"product": [a, b]}
    return True, {"residues": p}


def ring_contracts(p: int, precision: int, seed: int, samples: int) -> Tuple[bool, Dict[str, Any]]:
    rng = random.Random(f"padic-{seed}")
    modulus = p ** precision
    for i in range(samples):
        a = PadicNum(p, precision, rng.randrange(modulus))
        b = PadicNum(p, precision, rng.randrange(modulus))
        if arith("sub", arith("add", a, b), b) != a:
            return False, {"sample": i, "law": "(a + b) - b = a"}
        if arith("mul", a, b) != arith("mul", b, a):
            return False, {"sample": i, "law": "ab = ba"}
        if a.is_unit() and arith("mul", a, arith("inv", a)).value != 1:
            return False, {"sample": i, "law": "a a^-1 = 1"}
        shifted = PadicNum(p, precision, a.value * p)
        if divide_by_p(shifted) != a.reduce(precision - 1):
            return False, {"sample": i, "law": "(pa)/p = a"}
    return True, {"samples": samples}


def binomial_contracts(p: int, precision: int, max_k: int) -> Tuple[bool, Dict[str, Any]]:
    """binom(-1, k) = (-1)^k, integer binomials agree with math.comb, and k! costs v_p(k!) digits."""
    minus_one = PadicNum(p, precision, -1)
    for k in range(max_k + 1):
        if factorial_valuation(k, p) >= precision:
            break
        value = padic_binomial(minus_one, k)
        if value.precision != precision - factorial_valuation(k, p):
            return False, {"k": k, "precision": value.precision}
        if value != PadicNum(p, value.precision, (-1) ** k):
            return False, {"k": k, "value": str(value)}
        for m in (k, k + 3, 2 * k + 1):
            exact = PadicNum(p, precision, m)
            if padic_binomial(exact, k).value != math.comb(m, k) % p ** value.precision:
                return False, {"k": k, "m": m}
    return True, {"max_k": max_k}


def valuation_contracts(p: int, precision: int) -> Tuple[bool, Dict[str, Any]]:
    for e in range(precision):
        a = PadicNum(p, precision, p ** e * (1 + p))
        if valuation(a) != e:
            return False, {"exponent": e}
    zero = valuation(PadicNum(p, precision, 0))
    if getattr(zero, "at_least", None) != precision:
        return False, {"zero": str(zero)}
    try:
        divide_by_p(PadicNum(p, precision, 1))
    except NotDivisibleError:
        return True, {"digits": precision}
    return False, {"unit": "divided by p"}


def build_checks(config: RunConfig) -> List[Check]:
    p, n = config.prime, config.precision
    params = {"p": p, "N": n}
    return [
        Check("padic/teichmuller", "Teichmüller lifts are multiplicative roots of x^p = x", params,
              teichmuller_lifts, (p, n)),
        Check("padic/ring", "truncated p-adic ring laws", {**params, "seed": config.seed}, ring_contracts,
              (p, n, config.seed, config.samples)),
        Check("padic/binomial", "binom(a, k) loses v_p(k!) digits", params, binomial_contracts, (p, n, 40)),
        Check("padic/valuation", "valuations and exact division by p", params, valuation_contracts, (p, n)),
    ]
