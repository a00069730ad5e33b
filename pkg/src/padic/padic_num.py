"""Truncated p-adic integers with explicit precision."""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

from errors import NotAUnitError, NotDivisibleError, PrecisionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndistinguishableFromZero:
    """Valuation of a value that is 0 modulo p^N: only ``>= at_least`` is known."""

    at_least: int

    def __str__(self) -> str:
        return f">= {self.at_least}"


@dataclass(frozen=True)
class PadicNum:
    """
    An element of Z/p^N standing for a p-adic integer known to N digits.

    Args:
        prime (int): The prime p
        precision (int): Number of known digits N
        value (int): Representative in [0, p^N)
    """

    prime: int
    precision: int
    value: int

    def __post_init__(self):
        if self.precision < 0:
            raise PrecisionError("precision cannot be negative")
        object.__setattr__(self, "value", self.value % self.modulus)

    @classmethod
    def from_int(cls, n: int, prime: int, precision: int) -> "PadicNum":
        return cls(prime, precision, n)

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def reduce(self, precision: int) -> "PadicNum":
        """Forget digits beyond ``precision``."""
        if precision > self.precision:
            raise PrecisionError(f"cannot raise precision from {self.precision} to {precision}",
                                 required=precision)
        return PadicNum(self.prime, precision, self.value)

    def is_unit(self) -> bool:
        return self.precision > 0 and self.value % self.prime != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def digits(self):
        """Base-p digits, least significant first."""
        n, out = self.value, []
        for _ in range(self.precision):
            n, d = divmod(n, self.prime)
            out.append(d)
        return out

    def signed(self) -> int:
        """Representative of least absolute value."""
        return self.value - self.modulus if 2 * self.value > self.modulus else self.value

    def _match(self, other: Union["PadicNum", int]) -> "PadicNum":
        if isinstance(other, int):
            return PadicNum(self.prime, self.precision, other)
        if other.prime != self.prime:
            raise ValueError(f"mismatched primes {self.prime} and {other.prime}")
        return other

    def __add__(self, other):
        other = self._match(other)
        n = min(self.precision, other.precision)
        return PadicNum(self.prime, n, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return PadicNum(self.prime, self.precision, -self.value)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return self._match(other) - self

    def __mul__(self, other):
        other = self._match(other)
        n = min(self.precision, other.precision)
        return PadicNum(self.prime, n, self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PadicNum(self.prime, self.precision, pow(self.value, k, self.modulus))

    def inverse(self) -> "PadicNum":
        if not self.is_unit():
            raise NotAUnitError(f"{self.value} is not a unit modulo {self.prime}^{self.precision}")
        return PadicNum(self.prime, self.precision, pow(self.value, -1, self.modulus))

    def __str__(self) -> str:
        return f"{self.value} mod {self.prime}^{self.precision}"


def arith(op: str, a: PadicNum, b: Optional[PadicNum] = None) -> PadicNum:
    """
    Dispatch one arithmetic operation on truncated p-adic integers.

    Args:
        op (str): add, sub, mul, neg or inv
        a (PadicNum): First operand
        b (PadicNum, optional): Second operand for binary operations

    Returns:
        PadicNum: Result at the minimum of the operand precisions
    """
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation: {op}")


def divide_by_p(a: PadicNum) -> PadicNum:
    """Exact division by p; the result has one digit less."""
    if a.precision == 0:
        raise PrecisionError("no digits left to divide by p", required=1)
    if a.value % a.prime:
        raise NotDivisibleError(f"{a} is not divisible by {a.prime}", evidence=a.value % a.prime)
    return PadicNum(a.prime, a.precision - 1, a.value // a.prime)


def int_valuation(n: int, p: int) -> Optional[int]:
    """v_p of a nonzero integer, None for 0."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(k: int, p: int) -> int:
    """v_p(k!) by Legendre's formula."""
    v, power = 0, p
    while power <= k:
        v += k // power
        power *= p
    return v


def valuation(a: PadicNum) -> Union[int, IndistinguishableFromZero]:
    if a.value == 0:
        return IndistinguishableFromZero(a.precision)
    return int_valuation(a.value, a.prime)


def teichmuller(a0: int, p: int, precision: int) -> PadicNum:
    """
    The Teichmüller representative of a residue class, as the limit of p^n-th powers.

    Iterates x -> x^p modulo p^N from the lift a0 until two iterates agree;
    every step fixes at least one more digit, so at most N + 1 steps are needed.

    Args:
        a0 (int): Residue modulo p
        p (int): Prime
        precision (int): Digits N >= 1

    Returns:
        PadicNum: The unique x = a0 mod p with x^p = x mod p^N
    """
    if precision < 1:
        raise PrecisionError("Teichmüller lift needs precision >= 1", required=1)
    modulus = p ** precision
    x = a0 % p
    for _ in range(precision + 1):
        nxt = pow(x, p, modulus)
        if nxt == x:
            return PadicNum(p, precision, x)
        x = nxt
    # unreachable for a prime p
    raise PrecisionError(f"Teichmüller iteration for {a0} did not stabilize")


def padic_binomial(a: PadicNum, k: int, target: Optional[int] = None) -> PadicNum:
    """
    binom(a, k) = a(a-1)...(a-k+1)/k! for a p-adic integer a.

    Changing a by a multiple of p^N moves the numerator by a multiple of p^N,
    so the result is known to N - v_p(k!) digits.

    Args:
        a (PadicNum): The top argument
        k (int): Nonnegative lower index
        target (int, optional): Requested output precision

    Returns:
        PadicNum: The binomial at ``target`` digits, or at N - v_p(k!) when no target is given
    """
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    loss = factorial_valuation(k, a.prime)
    available = a.precision - loss
    wanted = available if target is None else target
    if wanted < 0 or available < wanted:
        raise PrecisionError(
            f"binom(a, {k}) to {wanted} digits needs a at precision {wanted + loss}, got {a.precision}",
            required=wanted + loss,
        )
    return PadicNum(a.prime, wanted, math.comb(a.value, k))
