"""Truncated series in Q[[q-1, x-1]] with exact rational coefficients.

Coefficient (i, j) belongs to u^i t^j with u = q - 1 and t = x - 1. A series
with orders (M_q, M_x) is known modulo (u^{M_q}) + (u, t)^{M_x}, so it stores
the indices with i < M_q and i + j < M_x. That ideal is stable under
x -> qx, which a plain rectangle is not.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from errors import InternalConsistencyError, NotAUnitError, PrecisionError
from qcomb.laurent import LaurentPoly, Q
from qcomb.qanalogs import q_int
from series.tower import generalized_binomial

logger = logging.getLogger(__name__)

Index = Tuple[int, int]
Number = Union[int, Fraction]


class BivarSeries:
    """Element of Q[[u, t]] modulo (u^order_q) + (u, t)^order_x."""

    __slots__ = ("order_q", "order_x", "_terms")

    def __init__(self, order_q: int, order_x: int, terms: Mapping[Index, Number] = None):
        if order_q < 0 or order_x < 0:
            raise PrecisionError("truncation orders must be nonnegative")
        self.order_q = order_q
        self.order_x = order_x
        kept: Dict[Index, Fraction] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative index ({i}, {j})")
            if i < order_q and i + j < order_x and c:
                kept[(i, j)] = Fraction(c)
        self._terms = kept

    # Constructors

    @classmethod
    def constant(cls, c: Number, order_q: int, order_x: int) -> "BivarSeries":
        return cls(order_q, order_x, {(0, 0): c})

    @classmethod
    def q(cls, order_q: int, order_x: int) -> "BivarSeries":
        return cls(order_q, order_x, {(0, 0): 1, (1, 0): 1})

    @classmethod
    def x(cls, order_q: int, order_x: int) -> "BivarSeries":
        return cls(order_q, order_x, {(0, 0): 1, (0, 1): 1})

    @classmethod
    def from_laurent(cls, poly: LaurentPoly, order_q: int, order_x: int) -> "BivarSeries":
        """
        Expand a Laurent polynomial in q and x around q = x = 1.

        Negative exponents use the binomial series of (1 + u)^{-m}, which is
        how q and x are invertible in the completed ring.
        """
        if any(c for (_, _, c), _ in poly.items()):
            raise ValueError("bivariate series carry no y-variable")
        terms: Dict[Index, Fraction] = {}
        for (a, b, _), coeff in poly.items():
            q_part = [generalized_binomial(a, i) for i in range(min(order_q, order_x))]
            x_part = [generalized_binomial(b, j) for j in range(order_x)]
            for i, ci in enumerate(q_part):
                if not ci:
                    continue
                for j in range(order_x - i):
                    cj = x_part[j]
                    if cj:
                        terms[(i, j)] = terms.get((i, j), 0) + coeff * ci * cj
        return cls(order_q, order_x, terms)

    # Accessors

    def items(self) -> Iterator[Tuple[Index, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def u_coefficients(self) -> List[Fraction]:
        """Coefficients of the x-free part, in increasing powers of q - 1."""
        top = min(self.order_q, self.order_x)
        return [self.coefficient(i, 0) for i in range(top)]

    def truncate(self, order_q: Optional[int] = None, order_x: Optional[int] = None) -> "BivarSeries":
        order_q = self.order_q if order_q is None else order_q
        order_x = self.order_x if order_x is None else order_x
        if order_q > self.order_q or order_x > self.order_x:
            raise PrecisionError(
                f"cannot raise orders ({self.order_q}, {self.order_x}) to ({order_q}, {order_x})"
            )
        return BivarSeries(order_q, order_x, self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarSeries):
            return NotImplemented
        return (self.order_q, self.order_x, self._terms) == (other.order_q, other.order_x, other._terms)

    def __hash__(self) -> int:
        return hash((self.order_q, self.order_x, frozenset(self._terms.items())))

    def agrees_with(self, other: "BivarSeries") -> bool:
        """Equality modulo the coarser of the two truncation ideals."""
        oq, ox = _common(self, other)
        return self.truncate(oq, ox) == other.truncate(oq, ox)

    # Ring operations

    def __add__(self, other: Union["BivarSeries", Number]) -> "BivarSeries":
        if not isinstance(other, BivarSeries):
            other = BivarSeries.constant(other, self.order_q, self.order_x)
        oq, ox = _common(self, other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return BivarSeries(oq, ox, terms)

    __radd__ = __add__

    def __neg__(self) -> "BivarSeries":
        return BivarSeries(self.order_q, self.order_x, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Union["BivarSeries", Number]) -> "BivarSeries":
        return self + (-other)

    def __rsub__(self, other: Number) -> "BivarSeries":
        return (-self) + other

    def __mul__(self, other: Union["BivarSeries", Number]) -> "BivarSeries":
        if not isinstance(other, BivarSeries):
            c = Fraction(other)
            return BivarSeries(self.order_q, self.order_x, {k: c * v for k, v in self._terms.items()})
        oq, ox = _common(self, other)
        terms: Dict[Index, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                i, j = i1 + i2, j1 + j2
                if i < oq and i + j < ox:
                    terms[(i, j)] = terms.get((i, j), 0) + c1 * c2
        return BivarSeries(oq, ox, terms)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["BivarSeries", Number]) -> "BivarSeries":
        if isinstance(other, BivarSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, n: int) -> "BivarSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = BivarSeries.constant(1, self.order_q, self.order_x)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "BivarSeries":
        """Solve f g = 1 coefficient by coefficient in order of total degree."""
        c0 = self.coefficient(0, 0)
        if not c0:
            raise NotAUnitError("constant coefficient is zero; not invertible in Q[[q-1, x-1]]")
        rest = [(k, c) for k, c in self._terms.items() if k != (0, 0)]
        out: Dict[Index, Fraction] = {}
        for total in range(self.order_x):
            for i in range(min(total, self.order_q - 1) + 1):
                j = total - i
                acc = Fraction(1) if (i, j) == (0, 0) else Fraction(0)
                for (a, b), c in rest:
                    if a <= i and b <= j:
                        prev = out.get((i - a, j - b))
                        if prev:
                            acc -= c * prev
                if acc:
                    out[(i, j)] = acc / c0
        return BivarSeries(self.order_q, self.order_x, out)

    # Structure maps

    def shift_x_to_qx(self) -> "BivarSeries":
        """x -> qx, i.e. t -> t + u + ut, by Horner's rule in t."""
        by_power: Dict[int, Dict[Index, Fraction]] = {}
        for (i, j), c in self._terms.items():
            by_power.setdefault(j, {})[(i, 0)] = c
        result: Dict[Index, Fraction] = {}
        for j in range(max(by_power, default=-1), -1, -1):
            result = _times_sigma(result, self.order_q, self.order_x)
            for k, c in by_power.get(j, {}).items():
                result[k] = result.get(k, 0) + c
        return BivarSeries(self.order_q, self.order_x, result)

    def divide_by_q_minus_1(self) -> "BivarSeries":
        """Exact division by u; orders drop by one. Any x-only term is a defect."""
        for (i, j), c in self._terms.items():
            if i == 0:
                raise InternalConsistencyError(
                    f"coefficient of (x-1)^{j} is {c}, so the series is not divisible by q-1"
                )
        return BivarSeries(
            max(self.order_q - 1, 0),
            max(self.order_x - 1, 0),
            {(i - 1, j): c for (i, j), c in self._terms.items()},
        )

    def divide_by_x(self) -> "BivarSeries":
        """g = f/x from f = (1 + t) g, i.e. g_{i,j} = f_{i,j} - g_{i,j-1}."""
        out: Dict[Index, Fraction] = {}
        for i in range(min(self.order_q, self.order_x)):
            prev = Fraction(0)
            for j in range(self.order_x - i):
                prev = self.coefficient(i, j) - prev
                if prev:
                    out[(i, j)] = prev
        return BivarSeries(self.order_q, self.order_x, out)

    def evaluate_x1(self) -> "BivarSeries":
        """Set x = 1, leaving a series in q - 1."""
        return BivarSeries(self.order_q, self.order_x, {k: c for k, c in self._terms.items() if k[1] == 0})

    def reduce_mod_q_minus_1(self) -> "BivarSeries":
        """The image in Q[[x-1]]."""
        return BivarSeries(min(self.order_q, 1), self.order_x, self._terms)

    def partial_x(self) -> "BivarSeries":
        """The classical derivative in x."""
        return BivarSeries(
            self.order_q,
            max(self.order_x - 1, 0),
            {(i, j - 1): j * c for (i, j), c in self._terms.items() if j},
        )

    def __repr__(self) -> str:
        return f"BivarSeries({self.order_q}, {self.order_x}, {dict(self.items())})"

    def __str__(self) -> str:
        shown = [f"({c})·u^{i}·t^{j}" for (i, j), c in list(self.items())[:10]]
        body = " + ".join(shown) if shown else "0"
        return f"{body} mod J({self.order_q}, {self.order_x})"


def _common(f: BivarSeries, g: BivarSeries) -> Tuple[int, int]:
    return min(f.order_q, g.order_q), min(f.order_x, g.order_x)


def _times_sigma(terms: Dict[Index, Fraction], order_q: int, order_x: int) -> Dict[Index, Fraction]:
    out: Dict[Index, Fraction] = {}
    for (i, j), c in terms.items():
        for di, dj in ((0, 1), (1, 0), (1, 1)):
            a, b = i + di, j + dj
            if a < order_q and a + b < order_x:
                out[(a, b)] = out.get((a, b), 0) + c
    return out


def bivar_arith(op: str, f: BivarSeries, g: Optional[BivarSeries] = None) -> BivarSeries:
    """
    Dispatch one operation on bivariate series.

    Args:
        op (str): add, sub, mul, inv or shift_x_to_qx
        f (BivarSeries): First operand
        g (BivarSeries, optional): Second operand for binary operations

    Returns:
        BivarSeries: Result modulo the coarser truncation
    """
    if op == "inv":
        return f.inverse()
    if op == "shift_x_to_qx":
        return f.shift_x_to_qx()
    if g is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation: {op}")


def nabla_q(f: BivarSeries) -> BivarSeries:
    """
    The q-derivative (f(qx) - f(x))/((q-1)x).

    The result is known modulo J(M_q - 1, M_x - 1).
    """
    numerator = f.shift_x_to_qx() - f
    return numerator.divide_by_q_minus_1().divide_by_x()


def series_log(u: BivarSeries) -> BivarSeries:
    """log(u) = sum_k (-1)^{k-1} (u-1)^k / k for u with constant term 1."""
    if u.coefficient(0, 0) != 1:
        raise NotAUnitError(f"logarithm needs constant term 1, got {u.coefficient(0, 0)}")
    g = u - 1
    result = BivarSeries(u.order_q, u.order_x)
    power = BivarSeries.constant(1, u.order_q, u.order_x)
    for k in range(1, u.order_x):
        power = power * g
        if power.is_zero():
            break
        result = result + power * Fraction((-1) ** (k - 1), k)
    return result


def qtaylor_expand(f: BivarSeries, order: Optional[int] = None) -> List[BivarSeries]:
    """
    q-Taylor coefficients a_n = nabla_q^n(f) at x = 1.

    Each a_n is a series in q - 1 alone, known modulo J(M_q - n, M_x - n).

    Args:
        f (BivarSeries): The expanded series
        order (int, optional): Number of coefficients, at most M_x

    Returns:
        list: a_0, ..., a_{order-1}
    """
    order = f.order_x if order is None else order
    if order > f.order_x:
        raise PrecisionError(f"{order} q-Taylor coefficients need order_x >= {order}", required=order)
    coeffs, current = [], f
    for _ in range(order):
        coeffs.append(current.evaluate_x1())
        current = nabla_q(current)
    return coeffs


@lru_cache(maxsize=None)
def qtaylor_basis(n: int, order_q: int, order_x: int) -> BivarSeries:
    """(x,-1;q)_n / [n]_q!, built from the previous one by (x - q^{n-1}) / [n]_q."""
    if n == 0:
        return BivarSeries.constant(1, order_q, order_x)
    factor = BivarSeries.x(order_q, order_x) - BivarSeries.from_laurent(Q ** (n - 1), order_q, order_x)
    q_integer = BivarSeries.from_laurent(q_int(n), order_q, order_x)
    return qtaylor_basis(n - 1, order_q, order_x) * factor * q_integer.inverse()


def qtaylor_reconstruct(coeffs: List[BivarSeries], order_q: Optional[int] = None,
                        order_x: Optional[int] = None) -> BivarSeries:
    """
    sum_n a_n (x,-1;q)_n / [n]_q!

    For coefficients from ``qtaylor_expand`` at orders (M_q, M_x) the default
    target J(M_q, min(M_q, M_x)) is where every dropped term lives.
    """
    if not coeffs:
        raise ValueError("no coefficients to reconstruct from")
    order_q = coeffs[0].order_q if order_q is None else order_q
    order_x = min(order_q, coeffs[0].order_x) if order_x is None else order_x
    if len(coeffs) < order_x:
        logger.warning(f"Reconstructing from {len(coeffs)} coefficients below order {order_x}")
    result = BivarSeries(order_q, order_x)
    for n, a in enumerate(coeffs[:order_x]):
        if a.is_zero():
            continue
        lifted = BivarSeries(order_q, order_x, dict(a.items()))
        result = result + lifted * qtaylor_basis(n, order_q, order_x)
    return result
