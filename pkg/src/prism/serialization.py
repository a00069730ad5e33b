"""JSON encoding of Nygaard and factorization certificates."""
from typing import Any, Dict

from prism.factorization import FactorizationCertificate
from prism.nygaard import NygaardCertificate
from series.serialization import expect_kind, expect_stated_precision, tower_from_json, tower_to_json


def nygaard_to_json(cert: NygaardCertificate) -> Dict[str, Any]:
    return {
        "kind": "nygaard",
        "element": tower_to_json(cert.element),
        "level": cert.level,
        "quotient": tower_to_json(cert.quotient),
        "precision": cert.precision,
        "order": cert.order,
    }


def nygaard_from_json(data: Dict[str, Any]) -> NygaardCertificate:
    expect_kind(data, "nygaard")
    quotient = tower_from_json(data["quotient"])
    expect_stated_precision(data, quotient, "quotient")
    return NygaardCertificate(
        element=tower_from_json(data["element"]),
        level=data["level"],
        quotient=quotient,
        precision=data["precision"],
        order=data["order"],
    )


def factorization_to_json(cert: FactorizationCertificate) -> Dict[str, Any]:
    return {
        "kind": "factorization",
        "prime": cert.prime,
        "n": cert.n,
        "factorial": cert.factorial,
        "exponents": list(cert.exponents),
        "unit": tower_to_json(cert.unit),
        "precision": cert.precision,
        "order": cert.order,
    }


def factorization_from_json(data: Dict[str, Any]) -> FactorizationCertificate:
    expect_kind(data, "factorization")
    unit = tower_from_json(data["unit"])
    expect_stated_precision(data, unit, "unit")
    return FactorizationCertificate(
        prime=data["prime"],
        n=data["n"],
        exponents=tuple(data["exponents"]),
        unit=unit,
        precision=data["precision"],
        order=data["order"],
        factorial=data.get("factorial", True),
    )
