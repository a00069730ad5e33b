from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

from pydantic import BaseModel

VERDICTS = ("pass", "fail", "skip")


@dataclass(frozen=True)
class Check:
    """
    One runnable check: ``func(*args)`` returns (passed, evidence).

    Args:
        check_id (str): Stable identifier; reports are sorted by it
        anchor (str): The claim the check exercises
        params (dict): Parameters echoed into the report
        func (callable): Module-level function, so checks can cross process boundaries
        args (tuple): Positional arguments for ``func``
    """

    check_id: str
    anchor: str
    params: Dict[str, Any]
    func: Callable[..., Tuple[bool, Dict[str, Any]]]
    args: Tuple[Any, ...] = field(default_factory=tuple)


class CheckResult(BaseModel):
    check_id: str
    paper_anchor: str
    params: Dict[str, Any]
    verdict: str
    evidence: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check_id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "params": self.params,
            "verdict": self.verdict,
            "evidence": self.evidence,
        }
