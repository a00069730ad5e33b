"""JSON encoding of series and divisibility certificates.

Integers are written as decimal strings and rationals as "num/den" strings so
that large values survive any JSON reader unchanged.
"""
from fractions import Fraction
from typing import Any, Dict

from errors import ShapeError
from series.bivar import BivarSeries
from series.certificates import DivisibilityCertificate
from series.tower import TowerSeries


def expect_kind(data: Dict[str, Any], kind: str):
    if data.get("kind") != kind:
        raise ShapeError(f"expected a '{kind}' object, got {data.get('kind')!r}")


def tower_to_json(f: TowerSeries) -> Dict[str, Any]:
    return {
        "kind": "tower",
        "prime": f.prime,
        "level": f.level,
        "coeff_precision": f.precision,
        "order": f.order,
        "coefficients": [str(c) for c in f.coeffs],
    }


def tower_from_json(data: Dict[str, Any]) -> TowerSeries:
    """Decode a tower series; every coefficient must already be reduced into [0, p^N)."""
    expect_kind(data, "tower")
    coeffs = [int(c) for c in data["coefficients"]]
    if len(coeffs) != data["order"]:
        raise ShapeError(f"{len(coeffs)} coefficients for order {data['order']}")
    modulus = data["prime"] ** data["coeff_precision"]
    for i, c in enumerate(coeffs):
        if not 0 <= c < modulus:
            raise ShapeError(f"coefficient {i} = {c} lies outside [0, {data['prime']}^{data['coeff_precision']})")
    return TowerSeries(data["prime"], data["level"], data["order"], data["coeff_precision"], tuple(coeffs))


def bivar_to_json(f: BivarSeries) -> Dict[str, Any]:
    """Row i holds the coefficients of (q-1)^i (x-1)^j for j < order_x - i."""
    rows = []
    for i in range(min(f.order_q, f.order_x)):
        rows.append([_fraction_str(f.coefficient(i, j)) for j in range(f.order_x - i)])
    return {"kind": "bivar", "order_q": f.order_q, "order_x": f.order_x, "coefficients": rows}


def bivar_from_json(data: Dict[str, Any]) -> BivarSeries:
    expect_kind(data, "bivar")
    terms = {}
    for i, row in enumerate(data["coefficients"]):
        for j, text in enumerate(row):
            terms[(i, j)] = Fraction(text)
    return BivarSeries(data["order_q"], data["order_x"], terms)


def _fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def divisibility_to_json(cert: DivisibilityCertificate) -> Dict[str, Any]:
    return {
        "kind": "divisibility",
        "dividend": tower_to_json(cert.dividend),
        "divisor": tower_to_json(cert.divisor),
        "quotient": tower_to_json(cert.quotient),
        "precision": cert.precision,
        "order": cert.order,
    }


def divisibility_from_json(data: Dict[str, Any]) -> DivisibilityCertificate:
    expect_kind(data, "divisibility")
    quotient = tower_from_json(data["quotient"])
    expect_stated_precision(data, quotient, "quotient")
    return DivisibilityCertificate(
        dividend=tower_from_json(data["dividend"]),
        divisor=tower_from_json(data["divisor"]),
        quotient=quotient,
        precision=data["precision"],
        order=data["order"],
    )


def expect_stated_precision(data: Dict[str, Any], series: TowerSeries, what: str):
    """A certificate's stated (precision, order) must be the one its witness series carries."""
    if data["precision"] < 1 or data["order"] < 1:
        raise ShapeError(f"{data['kind']} certificate states an empty identity")
    if (data["precision"], data["order"]) != (series.precision, series.order):
        raise ShapeError(
            f"{data['kind']} certificate states ({data['precision']}, {data['order']}) "
            f"but its {what} is known to ({series.precision}, {series.order})"
        )
