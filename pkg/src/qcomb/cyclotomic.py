"""Reduction modulo the cyclotomic polynomials phi^{r-1}([p]_q), i.e. q -> zeta_{p^r}."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from qcomb.laurent import LaurentPoly, Q, X, Y
from qcomb.qanalogs import q_int

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def cyclotomic_modulus(p: int, r: int) -> LaurentPoly:
    """phi^{r-1}(xi~) = (q^{p^r} - 1)/(q^{p^{r-1}} - 1), computed by exact division."""
    if r < 1:
        raise ValueError("level r must be at least 1")
    return (Q ** (p ** r) - 1).exact_divide(Q ** (p ** (r - 1)) - 1)


def xi_r_poly(p: int, r: int) -> LaurentPoly:
    """xi~_r = xi~ phi(xi~) ... phi^{r-1}(xi~), which equals [p^r]_q."""
    result = LaurentPoly.constant(1)
    for i in range(1, r + 1):
        result = result * cyclotomic_modulus(p, i)
    return result


@dataclass(frozen=True)
class CyclotomicElement:
    """
    Image of a polynomial in Z[zeta_{p^r}][x^{±1}, y^{±1}].

    ``coefficients`` maps an (x, y) exponent pair to the coefficient vector of
    length p^r - p^{r-1} in the basis 1, zeta, ..., zeta^{deg - 1}; zero
    vectors are dropped.
    """

    prime: int
    level: int
    coefficients: Tuple[Tuple[Tuple[int, int], Tuple[int, ...]], ...]

    @property
    def degree(self) -> int:
        return self.prime ** self.level - self.prime ** (self.level - 1)

    def is_zero(self) -> bool:
        return not self.coefficients

    def as_dict(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        return dict(self.coefficients)

    def lift(self) -> LaurentPoly:
        """The canonical representative of degree < deg in q."""
        terms = {}
        for (b, c), vector in self.coefficients:
            for a, coeff in enumerate(vector):
                if coeff:
                    terms[(a, b, c)] = coeff
        return LaurentPoly(terms)

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return cyclotomic_reduce(self.lift() + other.lift(), self.prime, self.level)

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return cyclotomic_reduce(self.lift() - other.lift(), self.prime, self.level)

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return cyclotomic_reduce(self.lift() * other.lift(), self.prime, self.level)

    def _check(self, other: "CyclotomicElement"):
        if (self.prime, self.level) != (other.prime, other.level):
            raise ValueError("cyclotomic elements over different rings")

    def __str__(self) -> str:
        return str(self.lift()).replace("q", "ζ")


def _remainder(slice_: Dict[int, int], modulus: Dict[int, int], degree: int) -> Tuple[int, ...]:
    """Remainder of a dense univariate polynomial by a monic modulus of the given degree."""
    top = max(slice_) if slice_ else -1
    work = [0] * (top + 1)
    for a, coeff in slice_.items():
        work[a] += coeff
    for k in range(top, degree - 1, -1):
        coeff = work[k]
        if coeff:
            shift = k - degree
            for e, mc in modulus.items():
                work[shift + e] -= coeff * mc
    vector = work[:degree] + [0] * max(0, degree - len(work))
    return tuple(vector)


def cyclotomic_reduce(f: LaurentPoly, p: int, r: int) -> CyclotomicElement:
    """
    Reduce a Laurent polynomial modulo phi^{r-1}(xi~).

    q-exponents are first folded modulo p^r (multiplication by a power of
    q^{p^r}, which is 1 modulo the modulus, clears negative exponents), then
    each (x, y) slice is remaindered by the monic modulus.

    Args:
        f (LaurentPoly): Polynomial in q with optional x, y
        p (int): Prime
        r (int): Level, r >= 1

    Returns:
        CyclotomicElement: The image in Z[zeta_{p^r}][x, y]
    """
    modulus = cyclotomic_modulus(p, r).q_coefficients()
    degree = max(modulus)
    folded = f.fold_q(p ** r)
    entries = []
    for key, slice_ in sorted(folded.q_slices().items()):
        vector = _remainder(slice_, modulus, degree)
        if any(vector):
            entries.append((key, vector))
    return CyclotomicElement(prime=p, level=r, coefficients=tuple(entries))


def power_difference(p: int, r: int) -> LaurentPoly:
    """x^{p^r} - y^{p^r}."""
    n = p ** r
    return X ** n - Y ** n


def twisted_product(p: int, r: int, shift: int = 0, fold: bool = True) -> LaurentPoly:
    """
    (x - q^shift y)(x - q^{shift+1} y)...(x - q^{shift+p^r-1} y).

    With ``fold`` the running product is kept in Z[q]/(q^{p^r} - 1), which has
    the same image modulo phi^{r-1}(xi~) and keeps the product small.
    """
    n = p ** r
    result = LaurentPoly.constant(1)
    for i in range(shift, shift + n):
        result = result * (X - Y.shift(q=i))
        if fold:
            result = result.fold_q(n)
    return result


def reduction_congruence(p: int, r: int) -> Tuple[CyclotomicElement, CyclotomicElement]:
    """Both sides of x^{p^r} - y^{p^r} = prod (x - q^i y) modulo phi^{r-1}(xi~)."""
    return cyclotomic_reduce(power_difference(p, r), p, r), cyclotomic_reduce(twisted_product(p, r), p, r)


def frobenius_power_of_xi(p: int, r: int) -> LaurentPoly:
    """phi^r(xi~) = [p]_{q^{p^r}} as a polynomial in q."""
    return q_int(p).substitute_q_power(p ** r)


def divide_out_cyclotomic(f: LaurentPoly, p: int, exponents: Iterable[Tuple[int, int]]) -> LaurentPoly:
    """
    Remove prod_r phi^{r-1}(xi~)^{a_r} from f by exact division.

    Args:
        f (LaurentPoly): Integer polynomial in q
        p (int): Prime
        exponents (iterable): Pairs (r, a_r)

    Returns:
        LaurentPoly: The cofactor
    """
    result = f
    for r, count in exponents:
        modulus = cyclotomic_modulus(p, r)
        for _ in range(count):
            result = result.exact_divide(modulus)
    return result
