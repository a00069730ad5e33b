import os
import sys
import json
import logging
import argparse
from typing import Any, Dict, List, Optional

# Add the src directory to the path
current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(current_dir, "src")
sys.path.append(src_dir)

from pydantic import ValidationError

from config import create_directories, LOG_FORMAT, LOG_LEVEL, RunConfig
from errors import PrecisionError, QPrismError
from padic.padic_num import factorial_valuation
from prism.divided_powers import qdivided_power, qdivided_working_precision
from prism.factorization import qfact_factorize
from prism.serialization import factorization_to_json, nygaard_to_json
from qcomb.qanalogs import q_binomial, q_int
from qlog.element import qlog_element, qlog_working_precision
from qlog.trace_model import TateExponent, trace_map_model, trace_model_precision
from recheck import recheck_file
from series.serialization import tower_to_json
from series.tower import binomial_qpower
from verifier import Verifier

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

EVAL_TARGETS = ("qint", "qbinom", "qfact-factorize", "qdivided", "qlog", "trace-model")


class UsageError(Exception):
    pass


def setup_argparse(argv: Optional[List[str]] = None):
    """Set up command line arguments"""
    parser = argparse.ArgumentParser(
        description="qprism - exact q-analogs, p-adic series and certificates over the q-de Rham prism"
    )

    parser.add_argument('--verify', action='store_true', help='Run the verification suites and write a JSON report')
    parser.add_argument('--eval', type=str, metavar='WHAT', choices=EVAL_TARGETS,
                        help=f"Evaluate one construction: {', '.join(EVAL_TARGETS)}")
    parser.add_argument('--param', action='append', default=[], metavar='KEY=VALUE',
                        help='Integer parameter for --eval (repeatable), e.g. n=5')
    parser.add_argument('--recheck', type=str, metavar='FILE', help='Re-verify the certificates in a JSON file')
    parser.add_argument('--prime', type=int, help='The prime p')
    parser.add_argument('--precision', type=int, help='Coefficient precision N (digits of p)')
    parser.add_argument('--order', type=int, help='Series order M in s = q - 1')
    parser.add_argument('--level', type=int, help='Tower level h for the series suite')
    parser.add_argument('--bivar-order', type=int, help='Truncation order of Q[[q-1, x-1]]')
    parser.add_argument('--seed', type=int, help='Seed for randomized checks')
    parser.add_argument('--suite', action='append', help='Suite to run (repeatable); default all')
    parser.add_argument('--workers', type=int, help='Worker processes for --verify')
    parser.add_argument('--out', type=str, help='Output file for the report or evaluation')

    return parser.parse_args(argv)


def parse_params(pairs: List[str]) -> Dict[str, int]:
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {pair!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--param {key} must be an integer, got {value!r}")
    return params


def build_config(args) -> RunConfig:
    return RunConfig.from_env(
        prime=args.prime,
        precision=args.precision,
        order=args.order,
        level=args.level,
        bivar_order_q=args.bivar_order,
        bivar_order_x=args.bivar_order,
        seed=args.seed,
        workers=args.workers,
        suites=args.suite,
        out=args.out,
    )


def _require(params: Dict[str, int], key: str, default: Optional[int] = None) -> int:
    if key in params:
        return params[key]
    if default is None:
        raise UsageError(f"--eval needs --param {key}=...")
    return default


def evaluate(what: str, params: Dict[str, int], config: RunConfig) -> Dict[str, Any]:
    """
    Evaluate one construction at the configured prime and precision.

    Args:
        what (str): One of EVAL_TARGETS
        params (dict): n, k or a as the target needs
        config (RunConfig): Supplies p, N and M

    Returns:
        dict: JSON-ready result with a ``passed`` flag
    """
    p, n_digits, order = config.prime, config.precision, config.order
    if what == "qint":
        n = _require(params, "n")
        poly = q_int(n)
        return {"what": what, "n": n, "value": str(poly), "terms": poly.to_json(), "passed": True}
    if what == "qbinom":
        n, k = _require(params, "n"), _require(params, "k")
        if not 0 <= k <= n:
            raise UsageError("qbinom needs 0 <= k <= n")
        poly = q_binomial(n, k)
        return {"what": what, "n": n, "k": k, "value": str(poly), "terms": poly.to_json(), "passed": True}
    if what == "qfact-factorize":
        n = _require(params, "n")
        certificate = qfact_factorize(n, p, n_digits, order)
        return {"what": what, "certificate": factorization_to_json(certificate), "passed": certificate.verify()}
    if what == "qdivided":
        n, a = _require(params, "n"), _require(params, "a", 1)
        working = qdivided_working_precision(p, n, n_digits, order)
        x = binomial_qpower(TateExponent.from_int(a, p, working + factorial_valuation(order, p)).a, order, working)
        gamma, certificate = qdivided_power(x, n)
        return {
            "what": what, "n": n, "a": a,
            "result": tower_to_json(gamma.truncate(min(gamma.precision, n_digits))),
            "certificate": nygaard_to_json(certificate),
            "passed": certificate.level >= n and certificate.verify(),
        }
    if what == "qlog":
        a = _require(params, "a", 1)
        working = qlog_working_precision(p, n_digits, order)
        x = binomial_qpower(TateExponent.from_int(a, p, working + factorial_valuation(order, p)).a, order, working)
        result, report = qlog_element(x, descriptor=f"q^{a}")
        return {
            "what": what, "a": a,
            "result": tower_to_json(result.truncate(min(result.precision, n_digits))),
            "report": report.model_dump(),
            "passed": report.passed,
        }
    if what == "trace-model":
        a = _require(params, "a", 1)
        exponent = TateExponent.from_int(a, p, trace_model_precision(p, n_digits, order))
        result, report = trace_map_model(exponent, n_digits, order)
        return {"what": what, "a": a, "result": tower_to_json(result), "report": report.model_dump(),
                "passed": report.passed}
    raise UsageError(f"unknown --eval target {what!r}")


def write_output(document: Dict[str, Any], out: Optional[str]):
    text = json.dumps(document, indent=2, ensure_ascii=False)
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text + "\n")
        print(f"Wrote {out}")
    else:
        print(text)


def cmd_verify(config: RunConfig) -> int:
    """Run the selected suites"""
    print(f"Verifying suites {', '.join(config.suites)} at p={config.prime}, N={config.precision}, M={config.order}...")
    verifier = Verifier(config)
    code = verifier.verify()
    stats = verifier.stats
    print(f"Verification {'passed' if code == EXIT_OK else 'FAILED'}: "
          f"{stats['pass']} passed, {stats['fail']} failed, {stats['skip']} skipped.")
    return code


def cmd_eval(what: str, params: Dict[str, int], config: RunConfig) -> int:
    """Evaluate one construction and print or write it"""
    try:
        document = evaluate(what, params, config)
    except PrecisionError as e:
        logger.warning(f"Evaluation of {what} needs more precision: {e}")
        write_output({"error": str(e), "required": e.required, "achieved": e.achieved}, config.out)
        return EXIT_FAIL
    except QPrismError as e:
        logger.error(f"Evaluation of {what} failed: {e}")
        write_output({"error": str(e), "type": type(e).__name__}, config.out)
        return EXIT_FAIL
    write_output(document, config.out)
    return EXIT_OK if document["passed"] else EXIT_FAIL


def cmd_recheck(path: str) -> int:
    """Re-verify the certificates in a file"""
    results = recheck_file(path)
    if "error" in results:
        print(f"Recheck failed: {results['error']}")
        return EXIT_FAIL
    print(f"{results['verified']} of {results['certificates']} certificates verified.")
    for failure in results["failures"]:
        print(f"  not verified: {failure}")
    return EXIT_OK if not results["failures"] else EXIT_FAIL


def main(argv: Optional[List[str]] = None) -> int:
    """Main function"""
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)

    # Create necessary directories
    create_directories()

    # Parse command line arguments
    args = setup_argparse(argv)

    # If no arguments provided, show help
    if not (args.verify or args.eval or args.recheck):
        print("No action specified. Use --verify, --eval WHAT or --recheck FILE.")
        print("Run 'python main.py --help' for more information.")
        return EXIT_USAGE

    try:
        config = build_config(args)
        params = parse_params(args.param)
    except (ValidationError, UsageError) as e:
        print(f"Usage error: {e}")
        return EXIT_USAGE

    if args.recheck:
        return cmd_recheck(args.recheck)
    if args.eval:
        try:
            return cmd_eval(args.eval, params, config)
        except (UsageError, ValueError) as e:
            print(f"Usage error: {e}")
            return EXIT_USAGE
    return cmd_verify(config)


if __name__ == "__main__":
    sys.exit(main())
