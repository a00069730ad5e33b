"""Exact q-analog identities and cyclotomic congruences."""
import logging
from typing import Any, Dict, List, Tuple

from config import RunConfig
from qcomb.identities import check_identity
from qcomb.qanalogs import q_binomial, q_binomial_by_division
from suites.models import Check

logger = logging.getLogger(__name__)

PASCAL_MAX = 30
THEOREM_MAX = 20
SHIFT_MAX = 20
CYCLOTOMIC_CASES = [(p, r) for p in (2, 3, 5) for r in (1, 2, 3)]


def identity_range(name: str, param_sets: List[List[int]]) -> Tuple[bool, Dict[str, Any]]:
    """Run one identity over several parameter sets and stop at the first failure."""
    for params in param_sets:
        report = check_identity(name, params)
        if not report.passed:
            return False, {"params": params, "difference": report.difference}
    return True, {"cases": len(param_sets)}


def binomial_oracle(n: int) -> Tuple[bool, Dict[str, Any]]:
    for k in range(n + 1):
        if q_binomial(n, k) != q_binomial_by_division(n, k):
            return False, {"k": k}
    return True, {"cases": n + 1}


def build_checks(config: RunConfig) -> List[Check]:
    checks = []
    for n in range(1, PASCAL_MAX + 1):
        checks.append(Check(
            f"qcomb/pascal/n={n:02d}", "q-Pascal recursion for Gaussian binomials", {"n": n},
            identity_range, ("pascal", [[n, k] for k in range(1, n + 1)]),
        ))
    for n in range(THEOREM_MAX + 1):
        checks.append(Check(
            f"qcomb/binomial-theorem/n={n:02d}", "q-binomial theorem for the Pochhammer symbol", {"n": n},
            identity_range, ("binomial-theorem", [[n]]),
        ))
    for n in range(1, THEOREM_MAX + 1):
        checks.append(Check(
            f"qcomb/pochhammer-derivative/n={n:02d}", "q-derivative of (x,y;q)_n is [n]_q (x,y;q)_{n-1}",
            {"n": n}, identity_range, ("pochhammer-derivative", [[n]]),
        ))
    checks.append(Check(
        "qcomb/addition", "[n+k]_q = q^k [n]_q + [k]_q", {"bound": SHIFT_MAX}, identity_range,
        ("addition", [[n, k] for n in range(-SHIFT_MAX, SHIFT_MAX + 1) for k in range(-SHIFT_MAX, SHIFT_MAX + 1)]),
    ))
    checks.append(Check(
        "qcomb/negation", "[-n]_q = -q^{-n} [n]_q", {"bound": SHIFT_MAX}, identity_range,
        ("negation", [[n] for n in range(-SHIFT_MAX, SHIFT_MAX + 1)]),
    ))
    checks.append(Check(
        "qcomb/leibniz", "q-Leibniz rule for the q-derivative", {"seed": config.seed, "samples": config.samples},
        identity_range, ("leibniz", [[config.seed * 1000 + i] for i in range(config.samples)]),
    ))
    checks.append(Check(
        "qcomb/divisible-relation", "[m]_q = [m/n]_{q^n} [n]_q for n | m", {"bound": 24}, identity_range,
        ("divisible-relation", [[m, n] for m in range(1, 25) for n in range(1, m + 1) if m % n == 0]),
    ))
    for n in range(16):
        checks.append(Check(
            f"qcomb/binomial-oracle/n={n:02d}", "q-binomials agree with the q-factorial quotient", {"n": n},
            binomial_oracle, (n,),
        ))
    for p, r in CYCLOTOMIC_CASES:
        checks.append(Check(
            f"qcomb/cyclotomic-congruence/p={p}/r={r}",
            "x^{p^r} - y^{p^r} = (x-y)(x-qy)...(x-q^{p^r-1}y) modulo phi^{r-1}(xi~)", {"p": p, "r": r},
            identity_range, ("cyclotomic-congruence", [[p, r]]),
        ))
    return checks
