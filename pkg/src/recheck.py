"""Re-verification of certificate JSON written by ``--eval`` or by the suites."""
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, Tuple

from errors import QPrismError
from prism.serialization import factorization_from_json, nygaard_from_json
from series.serialization import divisibility_from_json

logger = logging.getLogger(__name__)

LOADERS: Dict[str, Callable[[Dict[str, Any]], Any]] = {
    "divisibility": divisibility_from_json,
    "nygaard": nygaard_from_json,
    "factorization": factorization_from_json,
}

# tagged objects that are witnesses, never certificates on their own
SERIES_KINDS = frozenset({"tower", "bivar"})


def find_certificates(data: Any, path: str = "$") -> Iterator[Tuple[str, Dict[str, Any]]]:
    """
    Yield (json path, object) for every certificate object, however deeply it is nested.

    Any tagged object that is not a series stands in a certificate position,
    so an unknown or corrupted ``kind`` is yielded too and fails its recheck.
    """
    if isinstance(data, dict):
        if "kind" in data:
            kind = data["kind"]
            if not (isinstance(kind, str) and kind in SERIES_KINDS):
                yield path, data
            return
        for key, value in data.items():
            yield from find_certificates(value, f"{path}.{key}")
    elif isinstance(data, list):
        for i, value in enumerate(data):
            yield from find_certificates(value, f"{path}[{i}]")


def recheck_document(data: Any) -> Dict[str, Any]:
    """
    Verify every certificate in a decoded JSON document.

    Returns:
        dict: Counts and the paths of the certificates that did not verify
    """
    results = {"certificates": 0, "verified": 0, "failures": []}
    for path, certificate in find_certificates(data):
        results["certificates"] += 1
        kind = certificate["kind"]
        loader = LOADERS.get(kind) if isinstance(kind, str) else None
        if loader is None:
            logger.error(f"Unknown certificate kind {kind!r} at {path}")
            ok = False
        else:
            try:
                ok = loader(certificate).verify()
            except (QPrismError, KeyError, ValueError, TypeError) as e:
                logger.error(f"Malformed {kind} certificate at {path}: {e}")
                ok = False
        if ok:
            results["verified"] += 1
        else:
            results["failures"].append(path)
    return results


def recheck_file(path: str) -> Dict[str, Any]:
    """Load ``path`` and verify its certificates; a file without any is an error."""
    try:
        with open(Path(path), "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Cannot read certificate file {path}: {e}")
        return {"error": str(e)}

    results = recheck_document(data)
    if not results["certificates"]:
        return {"error": f"no certificates found in {path}"}
    logger.info(f"{results['verified']} of {results['certificates']} certificates in {path} verified")
    return results
