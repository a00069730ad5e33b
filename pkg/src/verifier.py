import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List

from tqdm import tqdm

from config import OUTPUT_DIR, RunConfig
from errors import NotDivisibleError, PrecisionError, QPrismError
from suites import padic_suite, prism_suite, qcomb_suite, qlog_suite, series_suite
from suites.models import Check, CheckResult

logger = logging.getLogger(__name__)

SUITE_BUILDERS = {
    "qcomb": qcomb_suite.build_checks,
    "padic": padic_suite.build_checks,
    "series": series_suite.build_checks,
    "prism": prism_suite.build_checks,
    "qlog": qlog_suite.build_checks,
}


def run_check(check: Check) -> CheckResult:
    """
    Run one check and turn its outcome into a report entry.

    A PrecisionError means the run was not configured with enough digits or
    enough series order to decide the claim, so it becomes a skip. Any other
    error is a failure with the exception recorded as evidence.
    """
    entry = {"check_id": check.check_id, "paper_anchor": check.anchor, "params": check.params}
    try:
        passed, evidence = check.func(*check.args)
    except PrecisionError as e:
        logger.warning(f"Skipping {check.check_id}: {e}")
        return CheckResult(**entry, verdict="skip", evidence={
            "reason": str(e), "required": e.required, "achieved": e.achieved,
        })
    except NotDivisibleError as e:
        logger.error(f"{check.check_id} failed: {e}")
        remainder = e.evidence if isinstance(e.evidence, (dict, int)) else str(e.evidence)
        return CheckResult(**entry, verdict="fail", evidence={
            "error": type(e).__name__, "message": str(e), "remainder": remainder,
        })
    except QPrismError as e:
        logger.error(f"{check.check_id} failed: {e}")
        return CheckResult(**entry, verdict="fail", evidence={"error": type(e).__name__, "message": str(e)})
    except Exception as e:
        logger.error(f"Unexpected error in {check.check_id}: {e}")
        return CheckResult(**entry, verdict="fail", evidence={"error": type(e).__name__, "message": str(e)})

    if not passed:
        logger.error(f"{check.check_id} failed: {evidence}")
    return CheckResult(**entry, verdict="pass" if passed else "fail", evidence=evidence or None)


class Verifier:
    def __init__(self, config: RunConfig):
        """
        Initialize the verifier

        Args:
            config (RunConfig): Prime, precisions, seed and suite selection of the run
        """
        self.config = config
        self.stats = {"pass": 0, "fail": 0, "skip": 0}

    def collect_checks(self) -> List[Check]:
        checks = []
        for name in self.config.suites:
            suite_checks = SUITE_BUILDERS[name](self.config)
            logger.info(f"Suite {name}: {len(suite_checks)} checks")
            checks.extend(suite_checks)
        return checks

    def run(self) -> List[CheckResult]:
        """
        Run every selected check, in a process pool when more than one worker is configured.

        Returns:
            list: Results sorted by check_id
        """
        checks = self.collect_checks()
        if self.config.workers > 1:
            with ProcessPoolExecutor(max_workers=self.config.workers) as pool:
                results = list(tqdm(pool.map(run_check, checks), total=len(checks), desc="checks"))
        else:
            results = [run_check(check) for check in tqdm(checks, desc="checks")]

        results.sort(key=lambda result: result.check_id)
        self.stats = {verdict: 0 for verdict in self.stats}
        for result in results:
            self.stats[result.verdict] += 1
        logger.info(
            f"Verified {len(results)} checks: {self.stats['pass']} passed, "
            f"{self.stats['fail']} failed, {self.stats['skip']} skipped"
        )
        return results

    def report(self, results: List[CheckResult]) -> Dict[str, Any]:
        """The report body; it depends only on the config (minus workers and output path) and the results."""
        return {
            "config": self.config.model_dump(exclude={"workers", "out"}),
            "summary": dict(self.stats),
            "entries": [result.to_dict() for result in results],
        }

    def write_report(self, results: List[CheckResult]) -> Path:
        path = Path(self.config.out) if self.config.out else Path(OUTPUT_DIR) / "report.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.report(results), f, indent=2, ensure_ascii=False)
            f.write("\n")
        logger.info(f"Report written to {path}")
        return path

    def verify(self) -> int:
        """Run, write the report and return the exit code: 0 iff no check failed."""
        results = self.run()
        self.write_report(results)
        return 1 if self.stats["fail"] else 0
