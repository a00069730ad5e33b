"""Sparse Laurent polynomials in q, x, y over the integers."""
import logging
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from errors import NotDivisibleError

logger = logging.getLogger(__name__)

VARIABLES = ("q", "x", "y")
Exponent = Tuple[int, int, int]

_SUPERSCRIPTS = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


class LaurentPoly:
    """Immutable element of Z[q^{±1}, x^{±1}, y^{±1}].

    Coefficients live in a dict keyed by exponent vectors over ``VARIABLES``.
    Zero coefficients are never stored, so two polynomials are equal exactly
    when their dicts are.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] = None):
        cleaned: Dict[Exponent, int] = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != len(VARIABLES):
                raise ValueError(f"exponent {exponent} does not match variables {VARIABLES}")
            if coeff:
                cleaned[tuple(exponent)] = int(coeff)
        self._terms = cleaned
        self._hash = None

    # Constructors

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, q: int = 0, x: int = 0, y: int = 0, coeff: int = 1) -> "LaurentPoly":
        return cls({(q, x, y): coeff})

    @classmethod
    def from_q_coefficients(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPoly":
        """Polynomial in q from a dense coefficient list starting at q^shift."""
        return cls({(shift + i, 0, 0): c for i, c in enumerate(coeffs)})

    # Basic protocol

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    @property
    def variables(self) -> Tuple[str, ...]:
        return VARIABLES

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def coefficient(self, q: int = 0, x: int = 0, y: int = 0) -> int:
        return self._terms.get((q, x, y), 0)

    # Ring operations

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _coerce(other)
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            result[exponent] = result.get(exponent, 0) + coeff
        return LaurentPoly(result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _coerce(other)
        result: Dict[Exponent, int] = {}
        for (a1, b1, c1), u in self._terms.items():
            for (a2, b2, c2), v in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                result[key] = result.get(key, 0) + u * v
        return LaurentPoly(result)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) == 1:
                (exponent, coeff), = self._terms.items()
                if coeff in (1, -1):
                    return LaurentPoly({tuple(e * n for e in exponent): coeff ** -n})
            raise ValueError("negative powers exist only for unit monomials")
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # Substitutions

    def substitute_q_power(self, m: int) -> "LaurentPoly":
        """The Frobenius-type substitution q -> q^m."""
        return LaurentPoly({(a * m, b, c): coeff for (a, b, c), coeff in self._terms.items()})

    def scale_variable(self, var: str, k: int = 1) -> "LaurentPoly":
        """Substitute var -> q^k * var for var in {x, y}."""
        index = VARIABLES.index(var)
        if index == 0:
            raise ValueError("q cannot be rescaled by itself")
        result: Dict[Exponent, int] = {}
        for exponent, coeff in self._terms.items():
            shifted = (exponent[0] + k * exponent[index],) + exponent[1:]
            result[shifted] = result.get(shifted, 0) + coeff
        return LaurentPoly(result)

    def shift(self, q: int = 0, x: int = 0, y: int = 0) -> "LaurentPoly":
        """Multiply by the monomial q^q x^x y^y."""
        return LaurentPoly({(a + q, b + x, c + y): coeff for (a, b, c), coeff in self._terms.items()})

    def fold_q(self, period: int) -> "LaurentPoly":
        """Image in Z[q]/(q^period - 1)[x^{±1}, y^{±1}] with q-exponents in [0, period)."""
        result: Dict[Exponent, int] = {}
        for (a, b, c), coeff in self._terms.items():
            key = (a % period, b, c)
            result[key] = result.get(key, 0) + coeff
        return LaurentPoly(result)

    def evaluate_q(self, value: int) -> "LaurentPoly":
        """Set q to an integer; only nonnegative q-exponents are allowed unless value is ±1."""
        result: Dict[Exponent, int] = {}
        for (a, b, c), coeff in self._terms.items():
            if a < 0 and value not in (1, -1):
                raise ValueError("negative q-exponent cannot be evaluated at a non-unit")
            key = (0, b, c)
            # for value = ±1 the inverse is the value itself
            result[key] = result.get(key, 0) + coeff * value ** abs(a)
        return LaurentPoly(result)

    # Slicing by (x, y) monomial

    def q_slices(self) -> Dict[Tuple[int, int], Dict[int, int]]:
        """Group coefficients by (x, y) exponent; each slice maps q-exponent to coefficient."""
        slices: Dict[Tuple[int, int], Dict[int, int]] = {}
        for (a, b, c), coeff in self._terms.items():
            slices.setdefault((b, c), {})[a] = coeff
        return slices

    def is_univariate_q(self) -> bool:
        return all(b == 0 and c == 0 for (_, b, c) in self._terms)

    def q_degree_range(self) -> Tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        exps = [a for (a, _, _) in self._terms]
        return min(exps), max(exps)

    def q_coefficients(self) -> Dict[int, int]:
        """Coefficients of a univariate polynomial in q."""
        if not self.is_univariate_q():
            raise ValueError("polynomial involves x or y")
        return {a: coeff for (a, _, _), coeff in self._terms.items()}

    # Exact division

    def divide_by_q_minus_1(self) -> "LaurentPoly":
        """Exact quotient by (q - 1).

        For every (x, y) slice, f = (q - 1) g forces g_a = -(f_lo + ... + f_a),
        and divisibility is the vanishing of the full slice sum.
        """
        result: Dict[Exponent, int] = {}
        for (b, c), slice_ in self.q_slices().items():
            lo, hi = min(slice_), max(slice_)
            running = 0
            for a in range(lo, hi + 1):
                running += slice_.get(a, 0)
                if a < hi and running:
                    result[(a, b, c)] = -running
            if running:
                raise NotDivisibleError(f"slice x^{b} y^{c} is not divisible by q - 1", evidence=running)
        return LaurentPoly(result)

    def exact_divide(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient by a univariate polynomial in q.

        Long division from the top q-degree of every (x, y) slice; the leading
        coefficient of the divisor must divide each step exactly.
        """
        quotient, remainder = self.divmod_q(divisor)
        if not remainder.is_zero():
            raise NotDivisibleError("polynomial division left a remainder", evidence=remainder)
        return quotient

    def divmod_q(self, divisor: "LaurentPoly") -> Tuple["LaurentPoly", "LaurentPoly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        d = divisor.q_coefficients()
        d_lo, d_hi = min(d), max(d)
        lead = d[d_hi]
        quotient: Dict[Exponent, int] = {}
        remainder: Dict[Exponent, int] = {}
        for (b, c), slice_ in self.q_slices().items():
            work = dict(slice_)
            lo = min(work)
            # Terms below lo + (d_hi - d_lo) cannot be reached by the divisor.
            floor = lo + (d_hi - d_lo)
            top = max(work)
            while top >= floor:
                coeff = work.pop(top, 0)
                if coeff:
                    factor, rest = divmod(coeff, lead)
                    if rest:
                        work[top] = coeff
                        break
                    shift = top - d_hi
                    quotient[(shift, b, c)] = quotient.get((shift, b, c), 0) + factor
                    for e, dc in d.items():
                        if e != d_hi:
                            work[shift + e] = work.get(shift + e, 0) - factor * dc
                top -= 1
            for a, coeff in work.items():
                if coeff:
                    remainder[(a, b, c)] = coeff
        return LaurentPoly(quotient), LaurentPoly(remainder)

    # Display

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exponent, coeff in self.items():
            monomial = "·".join(_format_power(v, e) for v, e in zip(VARIABLES, exponent) if e)
            if not monomial:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = monomial
            else:
                body = f"{abs(coeff)}{monomial}"
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> Dict[str, list]:
        return {"variables": list(VARIABLES), "terms": [[list(e), str(c)] for e, c in self.items()]}


def _format_power(var: str, exponent: int) -> str:
    if exponent == 1:
        return var
    return var + str(exponent).translate(_SUPERSCRIPTS)


def _coerce(value: Union[LaurentPoly, int]) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a Laurent polynomial")


Q = LaurentPoly.monomial(q=1)
X = LaurentPoly.monomial(x=1)
Y = LaurentPoly.monomial(y=1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()
