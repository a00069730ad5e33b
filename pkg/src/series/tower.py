"""Truncated power series in the tower A_h = Z_p[[q^{1/p^h} - 1]].

An element at level h is a series in s = q^{1/p^h} - 1 known modulo
(p^N, s^M). The level is part of the element: combining elements at
different levels raises LevelMismatchError, and ``embed`` moves an element
up the tower explicitly.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from errors import LevelMismatchError, NotAUnitError, NotDivisibleError, PrecisionError
from padic.padic_num import PadicNum, factorial_valuation, int_valuation, padic_binomial
from qcomb.laurent import LaurentPoly

logger = logging.getLogger(__name__)

Scalar = Union[int, PadicNum]


def generalized_binomial(n: int, k: int) -> int:
    """binom(n, k) for any integer n."""
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    return (-1) ** k * math.comb(k - n - 1, k)


@dataclass(frozen=True)
class TowerSeries:
    """
    Truncated element of A_h.

    Args:
        prime (int): The prime p
        level (int): Tower level h
        order (int): Series order M; coefficients of s^0 .. s^{M-1} are stored
        precision (int): Coefficient precision N; coefficients live in Z/p^N
        coeffs (tuple): M integers in [0, p^N)
    """

    prime: int
    level: int
    order: int
    precision: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if self.order < 0 or self.precision < 0:
            raise PrecisionError("order and precision must be nonnegative")
        modulus = self.prime ** self.precision
        padded = list(self.coeffs[: self.order]) + [0] * max(0, self.order - len(self.coeffs))
        object.__setattr__(self, "coeffs", tuple(int(c) % modulus for c in padded))

    # Constructors

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], prime: int, level: int, precision: int, order: int) -> "TowerSeries":
        return cls(prime, level, order, precision, tuple(coeffs))

    @classmethod
    def constant(cls, c: Scalar, prime: int, level: int, precision: int, order: int) -> "TowerSeries":
        value = c.value if isinstance(c, PadicNum) else c
        return cls(prime, level, order, precision, (value,))

    @classmethod
    def zero(cls, prime: int, level: int, precision: int, order: int) -> "TowerSeries":
        return cls(prime, level, order, precision, ())

    @classmethod
    def variable(cls, prime: int, level: int, precision: int, order: int) -> "TowerSeries":
        """The level variable q^{1/p^h} = 1 + s."""
        return cls(prime, level, order, precision, (1, 1))

    @classmethod
    def from_laurent(cls, poly: LaurentPoly, prime: int, level: int, precision: int, order: int) -> "TowerSeries":
        """
        Image of an element of Z[q^{±1}] with q = (1 + s)^{p^h}.

        Negative powers of q use the integral binomial series of (1 + s)^{-m}.
        """
        step = prime ** level
        modulus = prime ** precision
        coeffs = [0] * order
        for exponent, c in poly.q_coefficients().items():
            n = exponent * step
            for i in range(order):
                coeffs[i] = (coeffs[i] + c * generalized_binomial(n, i)) % modulus
        return cls(prime, level, order, precision, tuple(coeffs))

    @classmethod
    def q(cls, prime: int, level: int, precision: int, order: int) -> "TowerSeries":
        return cls.from_laurent(LaurentPoly.monomial(q=1), prime, level, precision, order)

    # Accessors

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def coefficient(self, i: int) -> PadicNum:
        return PadicNum(self.prime, self.precision, self.coeffs[i] if i < self.order else 0)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def degree(self) -> int:
        """Index of the highest nonzero stored coefficient, -1 for zero."""
        for i in range(self.order - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def truncate(self, precision: Optional[int] = None, order: Optional[int] = None) -> "TowerSeries":
        """Forget digits and/or terms; neither can be increased."""
        precision = self.precision if precision is None else precision
        order = self.order if order is None else order
        if precision > self.precision or order > self.order:
            raise PrecisionError(
                f"cannot raise ({self.precision}, {self.order}) to ({precision}, {order})",
                required=max(precision, self.precision),
            )
        return TowerSeries(self.prime, self.level, order, precision, self.coeffs[:order])

    def agrees_with(self, other: "TowerSeries") -> bool:
        """Equality at the common precision and order."""
        self._check(other)
        n, m = min(self.precision, other.precision), min(self.order, other.order)
        return self.truncate(n, m).coeffs == other.truncate(n, m).coeffs

    def _check(self, other: "TowerSeries"):
        if self.prime != other.prime:
            raise ValueError(f"mismatched primes {self.prime} and {other.prime}")
        if self.level != other.level:
            raise LevelMismatchError(
                f"levels {self.level} and {other.level} differ; embed explicitly first"
            )

    def _common(self, other: "TowerSeries") -> Tuple[int, int]:
        self._check(other)
        return min(self.precision, other.precision), min(self.order, other.order)

    def _like(self, coeffs: Sequence[int], precision: int = None, order: int = None) -> "TowerSeries":
        return TowerSeries(
            self.prime,
            self.level,
            self.order if order is None else order,
            self.precision if precision is None else precision,
            tuple(coeffs),
        )

    # Ring operations

    def __add__(self, other: Union["TowerSeries", Scalar]) -> "TowerSeries":
        if not isinstance(other, TowerSeries):
            return self + self._scalar_series(other)
        n, m = self._common(other)
        return self._like([a + b for a, b in zip(self.coeffs[:m], other.coeffs[:m])], n, m)

    __radd__ = __add__

    def __neg__(self) -> "TowerSeries":
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other: Union["TowerSeries", Scalar]) -> "TowerSeries":
        return self + (-other if isinstance(other, TowerSeries) else -_scalar_value(other))

    def __rsub__(self, other: Scalar) -> "TowerSeries":
        return (-self) + other

    def __mul__(self, other: Union["TowerSeries", Scalar]) -> "TowerSeries":
        if not isinstance(other, TowerSeries):
            precision = self.precision
            if isinstance(other, PadicNum):
                precision = min(precision, other.precision)
            c = _scalar_value(other)
            return self._like([c * a for a in self.coeffs], precision)
        n, m = self._common(other)
        return self._like(_convolve(self.coeffs, other.coeffs, m, self.prime ** n), n, m)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TowerSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = self._scalar_series(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TowerSeries":
        """Power-series inverse; needs a p-adic unit as constant term."""
        c0 = self.coeffs[0] if self.order else 0
        if self.order == 0 or c0 % self.prime == 0:
            raise NotAUnitError(f"not a unit in A_{self.level}: constant term {c0} is divisible by {self.prime}")
        modulus = self.modulus
        b0 = pow(c0, -1, modulus)
        out = [b0]
        for k in range(1, self.order):
            acc = sum(self.coeffs[i] * out[k - i] for i in range(1, k + 1))
            out.append(-b0 * acc % modulus)
        return self._like(out)

    def _scalar_series(self, c: Scalar) -> "TowerSeries":
        precision = self.precision
        if isinstance(c, PadicNum):
            precision = min(precision, c.precision)
        return TowerSeries(self.prime, self.level, self.order, precision, (_scalar_value(c),))

    def __str__(self) -> str:
        shown = [f"{c}·s^{i}" for i, c in enumerate(self.coeffs[:8]) if c]
        tail = " + ..." if self.order > 8 else ""
        body = " + ".join(shown) if shown else "0"
        return f"{body}{tail} (p={self.prime}, h={self.level}, mod p^{self.precision}, s^{self.order})"


def _scalar_value(c: Scalar) -> int:
    if isinstance(c, PadicNum):
        return c.value
    if isinstance(c, int):
        return c
    raise TypeError(f"cannot use {type(c).__name__} as a scalar")


def _convolve(a: Sequence[int], b: Sequence[int], order: int, modulus: int) -> List[int]:
    out = [0] * order
    for i in range(min(order, len(a))):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(order - i, len(b))):
            if b[j]:
                out[i + j] += ai * b[j]
    return [c % modulus for c in out]


def _compose_power(f: TowerSeries, exponent: int) -> List[int]:
    """
    Coefficients of f((1 + s)^exponent - 1) modulo s^M.

    The truncation of f is rewritten exactly in the basis (1 + s)^j, where the
    substitution is (1 + s)^j -> (1 + s)^{exponent*j}; the dropped tail lies
    in ((1 + s)^exponent - 1)^M, which vanishes modulo s^M.
    """
    order, modulus = f.order, f.modulus
    in_t = [0] * order
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        for j in range(i + 1):
            in_t[j] += c * math.comb(i, j) * (-1) ** (i - j)
    out = [0] * order
    for j, b in enumerate(in_t):
        b %= modulus
        if not b:
            continue
        n = exponent * j
        for k in range(min(order, n + 1)):
            out[k] += b * math.comb(n, k)
    return [c % modulus for c in out]


def frobenius(f: TowerSeries) -> TowerSeries:
    """phi: s -> (1 + s)^p - 1 at the same level, i.e. q^{1/p^h} -> q^{p/p^h}."""
    return f._like(_compose_power(f, f.prime))


def embed(f: TowerSeries, level: int) -> TowerSeries:
    """Reinterpret f at a higher level through s_h = (1 + s_{h'})^{p^{h'-h}} - 1."""
    if level < f.level:
        raise LevelMismatchError(f"cannot embed level {f.level} into lower level {level}")
    if level == f.level:
        return f
    coeffs = _compose_power(f, f.prime ** (level - f.level))
    return TowerSeries(f.prime, level, f.order, f.precision, tuple(coeffs))


def phi_inverse(f: TowerSeries) -> TowerSeries:
    """The same coefficients read in q^{1/p^{h+1}} - 1; frobenius undoes it after embedding."""
    return TowerSeries(f.prime, f.level + 1, f.order, f.precision, f.coeffs)


def evaluate_q1(f: TowerSeries) -> PadicNum:
    """The constant coefficient: the image under q -> 1."""
    return f.coefficient(0)


def tower_arith(op: str, f: TowerSeries, g: Optional[TowerSeries] = None) -> TowerSeries:
    """
    Dispatch one ring operation on tower elements.

    Args:
        op (str): add, sub, mul or inv
        f (TowerSeries): First operand
        g (TowerSeries, optional): Second operand for binary operations

    Returns:
        TowerSeries: Result at the minimum precision and order
    """
    if op == "inv":
        return f.inverse()
    if g is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation: {op}")


def binomial_qpower(a: PadicNum, order: int, precision: int, level: int = 0) -> TowerSeries:
    """
    q^a = sum_k binom(a, k) (q - 1)^k for a p-adic exponent a.

    Args:
        a (PadicNum): Exponent, known to at least precision + v_p(order!) digits
        order (int): Series order M
        precision (int): Coefficient precision N of the result
        level (int): Tower level; at level h the series is (1 + s)^{a p^h}

    Returns:
        TowerSeries: The truncated series for q^a
    """
    required = precision + factorial_valuation(order, a.prime)
    if a.precision < required:
        raise PrecisionError(
            f"q^a to (p^{precision}, s^{order}) needs a at precision {required}, got {a.precision}",
            required=required,
        )
    exponent = a if level == 0 else PadicNum(a.prime, a.precision + level, a.value * a.prime ** level)
    coeffs = [padic_binomial(exponent, k, precision).value for k in range(order)]
    return TowerSeries(a.prime, level, order, precision, tuple(coeffs))


def divide(f: TowerSeries, g: TowerSeries, target: Optional[int] = None) -> TowerSeries:
    """
    Solve g * h = f for h, lowest coefficient first.

    With v = v_p(g(0)) every solved coefficient consumes v digits, so the
    quotient is known modulo (p^{W - v*M}, s^M) where W is the common input
    precision. A coefficient equation whose right side is not divisible by
    p^v proves that g does not divide f. When p^v divides every coefficient
    of g the quotient only loses v digits.

    Args:
        f (TowerSeries): Dividend
        g (TowerSeries): Divisor with nonzero constant term
        target (int, optional): Wanted quotient precision; defaults to W - v*M

    Returns:
        TowerSeries: The quotient at precision ``target``
    """
    precision, order = f._common(g)
    p = f.prime
    modulus = p ** precision
    g0 = g.coeffs[0] % modulus if order else 0
    if g0 == 0:
        raise PrecisionError("divisor constant term is indistinguishable from zero", required=precision + 1)
    v = int_valuation(g0, p)
    if v and all(c % p ** v == 0 for c in g.coeffs[:order]):
        return _divide_by_content(f, g, v, precision, order, target)
    available = precision - v * order
    wanted = available if target is None else target
    if wanted < 1 or available < wanted:
        raise PrecisionError(
            f"quotient at precision {max(wanted, 1)} needs inputs at precision {max(wanted, 1) + v * order}, got {precision}",
            required=max(wanted, 1) + v * order,
        )
    pv = p ** v
    unit_inverse = pow(g0 // pv, -1, modulus)
    out: List[int] = []
    for k in range(order):
        numerator = f.coeffs[k] - sum(g.coeffs[i] * out[k - i] for i in range(1, k + 1))
        numerator %= modulus
        if numerator % pv:
            raise NotDivisibleError(
                f"coefficient {k} leaves residue {numerator % pv} modulo {p}^{v}",
                evidence={"index": k, "residue": numerator % pv, "modulus": pv},
            )
        out.append((numerator // pv) * unit_inverse % modulus)
    return TowerSeries(p, f.level, order, wanted, tuple(out))


def _divide_by_content(f: TowerSeries, g: TowerSeries, v: int, precision: int, order: int,
                       target: Optional[int]) -> TowerSeries:
    """g = p^v * unit: strip p^v from both sides, then divide by the unit at no further cost."""
    p = f.prime
    available = precision - v
    wanted = available if target is None else target
    if wanted < 1 or available < wanted:
        raise PrecisionError(
            f"quotient at precision {max(wanted, 1)} needs inputs at precision {max(wanted, 1) + v}, got {precision}",
            required=max(wanted, 1) + v,
        )
    pv = p ** v
    for k, c in enumerate(f.coeffs[:order]):
        if c % pv:
            raise NotDivisibleError(
                f"coefficient {k} leaves residue {c % pv} modulo {p}^{v}",
                evidence={"index": k, "residue": c % pv, "modulus": pv},
            )
    stripped_f = TowerSeries(p, f.level, order, available, tuple(c // pv for c in f.coeffs[:order]))
    stripped_g = TowerSeries(p, g.level, order, available, tuple(c // pv for c in g.coeffs[:order]))
    return (stripped_f * stripped_g.inverse()).truncate(wanted)
