"""Integer Laurent polynomials in one variable t, their reductions modulo
t^p - 1, and the Alexander polynomial identities used for the family."""

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from logging import getLogger
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy as sp
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from .errors import InvalidInput
from .exact import require_modulus

__all__ = [
    "LaurentPoly",
    "CyclicPoly",
    "LSpaceForm",
    "poly_add",
    "poly_mul",
    "poly_neg",
    "torus_alexander",
    "genus_from_alexander",
    "lspace_form_check",
    "cyclic_reduce",
    "correction_lift",
    "tilde_constraints_check",
    "tilde_correction",
]

LOGGER = getLogger(__name__)

T = sp.Symbol("t")
PARSE_TRANSFORMATIONS = standard_transformations + (
    convert_xor,
    implicit_multiplication,
)
# parse_expr evaluates its input, so only these characters reach it
POLY_TEXT_RE = re.compile(r"^[0-9t\s+\-*^()/]*$")


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial with integer coefficients. Terms are kept as
    (exponent, coefficient) pairs sorted by decreasing exponent, with no
    zero coefficients, so equal polynomials compare and hash equal."""

    terms: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        collected: Dict[int, int] = defaultdict(int)
        for exponent, coefficient in self.terms:
            collected[int(exponent)] += int(coefficient)
        object.__setattr__(
            self,
            "terms",
            tuple(
                (e, c)
                for e, c in sorted(collected.items(), reverse=True)
                if c != 0
            ),
        )

    @classmethod
    def from_dict(cls, coefficients: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(coefficients.items()))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls(((exponent, coefficient),))

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls.monomial(0, value)

    @classmethod
    def symmetric_pair(cls, exponent: int) -> "LaurentPoly":
        """t^e + t^-e"""
        return cls(((exponent, 1), (-exponent, 1)))

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse an expression in t with integer coefficients and integer
        exponents; both "t^-2" and "t**-2" are accepted."""
        if POLY_TEXT_RE.match(text) is None:
            raise InvalidInput(
                f"Cannot parse '{text}' as a Laurent polynomial",
                precondition="digits, t, whitespace and + - * ^ ( ) /",
            )
        try:
            expr = parse_expr(
                text,
                local_dict={"t": T},
                transformations=PARSE_TRANSFORMATIONS,
                evaluate=True,
            )
        except Exception as e:
            raise InvalidInput(
                f"Cannot parse '{text}' as a Laurent polynomial: {e}",
                precondition="polynomial in t",
            )

        expr = sp.expand(sp.sympify(expr))
        if expr.free_symbols - {T}:
            raise InvalidInput(
                f"'{text}' uses variables other than t",
                precondition="polynomial in t",
            )

        terms: List[Tuple[int, int]] = []
        for term in sp.Add.make_args(expr):
            coefficient, exponent = term.as_coeff_exponent(T)
            if not (coefficient.is_Integer and exponent.is_Integer):
                raise InvalidInput(
                    f"Term '{term}' of '{text}' is not an integer multiple "
                    "of an integer power of t",
                    precondition="integer coefficients and exponents",
                )
            terms.append((int(exponent), int(coefficient)))
        return cls(tuple(terms))

    @classmethod
    def from_json(cls, pairs: Iterable[Sequence[int]]) -> "LaurentPoly":
        try:
            return cls(tuple((int(e), int(c)) for e, c in pairs))
        except (TypeError, ValueError) as e:
            raise InvalidInput(
                f"Cannot read polynomial from {pairs!r}: {e}",
                precondition="list of [exponent, coefficient] pairs",
            )

    def to_json(self) -> List[List[int]]:
        return [[e, c] for e, c in self.terms]

    def to_sympy(self) -> sp.Expr:
        return sp.Add(*(c * T**e for e, c in self.terms))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exponent: int) -> int:
        return self.as_dict().get(exponent, 0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_exponent(self) -> int:
        if self.is_zero:
            raise InvalidInput("The zero polynomial has no exponents")
        return self.terms[0][0]

    @property
    def min_exponent(self) -> int:
        if self.is_zero:
            raise InvalidInput("The zero polynomial has no exponents")
        return self.terms[-1][0]

    @property
    def degree_span(self) -> int:
        return self.max_exponent - self.min_exponent

    @property
    def is_symmetric(self) -> bool:
        coefficients = self.as_dict()
        return all(coefficients.get(-e, 0) == c for e, c in self.terms)

    def shift(self, offset: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + offset, c) for e, c in self.terms))

    def mirror(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        return LaurentPoly(tuple((-e, c) for e, c in self.terms))

    def symmetrize(self) -> "LaurentPoly":
        """Recenter so that the exponents are balanced around zero."""
        if self.is_zero:
            return self
        low, high = self.min_exponent, self.max_exponent
        if (low + high) % 2 != 0:
            raise RuntimeError(
                f"Cannot recenter {self}: its degree span {high - low} "
                "is odd"
            )
        return self.shift(-(low + high) // 2)

    def evaluate(self, x) -> Fraction:
        value = Fraction(x)
        if value == 0 and any(e < 0 for e, _ in self.terms):
            raise InvalidInput(
                f"Cannot evaluate {self} at 0", precondition="x != 0"
            )
        return sum((c * value**e for e, c in self.terms), Fraction(0))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(self.terms + other.terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(
            tuple(
                (e1 + e2, c1 * c2)
                for e1, c1 in self.terms
                for e2, c2 in other.terms
            )
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"

        pieces: List[str] = []
        for i, (exponent, coefficient) in enumerate(self.terms):
            magnitude = abs(coefficient)
            if exponent == 0:
                body = str(magnitude)
            else:
                power = "t" if exponent == 1 else f"t^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"

            if i == 0:
                pieces.append(f"-{body}" if coefficient < 0 else body)
            else:
                pieces.append(f"{'-' if coefficient < 0 else '+'} {body}")
        return " ".join(pieces)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def poly_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def _divide_by_binomial(dividend: List[int], k: int) -> List[int]:
    """Exact division of a dense polynomial (index = exponent) by t^k - 1."""
    remainder = list(dividend)
    quotient = [0] * max(len(dividend) - k, 0)
    for degree in range(len(remainder) - 1, k - 1, -1):
        c = remainder[degree]
        if c:
            quotient[degree - k] += c
            remainder[degree] = 0
            remainder[degree - k] += c

    if any(remainder):
        raise RuntimeError(
            f"Division by t^{k} - 1 left a nonzero remainder {remainder}"
        )
    return quotient


@lru_cache(maxsize=None)
def torus_alexander(a: int, b: int) -> LaurentPoly:
    """Symmetrized Alexander polynomial of the (a, b) torus knot,

        (t^ab - 1)(t - 1) / ((t^a - 1)(t^b - 1)).
    """
    if a < 1 or b < 1:
        raise InvalidInput(
            f"Torus knot parameters ({a}, {b}) must be positive",
            precondition="a >= 1 and b >= 1",
        )
    if gcd(a, b) != 1:
        raise InvalidInput(
            f"Torus knot parameters ({a}, {b}) are not coprime",
            precondition="gcd(a, b) = 1",
        )

    # (t^ab - 1)(t - 1) = t^(ab+1) - t^ab - t + 1
    numerator = [0] * (a * b + 2)
    numerator[a * b + 1] += 1
    numerator[a * b] -= 1
    numerator[1] -= 1
    numerator[0] += 1

    dense = _divide_by_binomial(_divide_by_binomial(numerator, a), b)
    span = (a - 1) * (b - 1)
    if span % 2 != 0:
        raise RuntimeError(f"Degree span {span} of T({a}, {b}) is odd")

    poly = LaurentPoly(tuple((e, c) for e, c in enumerate(dense)))
    if poly.degree_span != span:
        raise RuntimeError(
            f"T({a}, {b}) came out with span {poly.degree_span}, not {span}"
        )
    LOGGER.debug(f"Computed Alexander polynomial of T({a}, {b})")
    return poly.symmetrize()


def genus_from_alexander(poly: LaurentPoly) -> int:
    if poly.is_zero:
        raise InvalidInput(
            "The zero polynomial is not an Alexander polynomial",
            precondition="nonzero polynomial",
        )
    if not poly.is_symmetric:
        raise InvalidInput(
            f"{poly} is not symmetric", precondition="symmetric polynomial"
        )
    return poly.max_exponent


@dataclass(frozen=True)
class LSpaceForm:
    """Outcome of lspace_form_check; `exponents` holds n_1 < ... < n_k on
    success and `reason` names the first violated condition otherwise."""

    ok: bool
    exponents: Tuple[int, ...] = ()
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def lspace_form_check(poly: LaurentPoly) -> LSpaceForm:
    """Check that poly reads (-1)^k + sum_j (-1)^(k-j) (t^n_j + t^-n_j)."""

    if poly.is_zero:
        return LSpaceForm(False, reason="polynomial is zero")
    if not poly.is_symmetric:
        return LSpaceForm(False, reason="polynomial is not symmetric")

    upper = [(e, c) for e, c in poly.terms if e >= 0]
    for exponent, coefficient in upper:
        if coefficient not in (1, -1):
            return LSpaceForm(
                False,
                reason=f"coefficient {coefficient} at t^{exponent} is not ±1",
            )
    if upper[0][1] != 1:
        return LSpaceForm(False, reason="top coefficient is not +1")
    for (e1, c1), (e2, c2) in zip(upper, upper[1:]):
        if c1 == c2:
            return LSpaceForm(
                False,
                reason=f"signs at t^{e1} and t^{e2} do not alternate",
            )
    if upper[-1][0] != 0:
        return LSpaceForm(False, reason="constant term is zero")

    exponents = tuple(sorted(e for e, _ in upper if e > 0))
    return LSpaceForm(True, exponents=exponents)


@dataclass(frozen=True)
class CyclicPoly:
    """An element of Z[t]/(t^p - 1); `coefficients[i]` multiplies t^i."""

    modulus: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidInput(
                f"Modulus {self.modulus} must be positive",
                precondition="p >= 1",
            )
        coefficients = tuple(int(c) for c in self.coefficients)
        if len(coefficients) != self.modulus:
            raise InvalidInput(
                f"Expected {self.modulus} coefficients, "
                f"got {len(coefficients)}",
                precondition="one coefficient per residue",
            )
        object.__setattr__(self, "coefficients", coefficients)

    def coefficient(self, index: int) -> int:
        return self.coefficients[index % self.modulus]

    def representatives(self) -> List[int]:
        """Residue representatives used for display and lifting: the
        interval [-(p-1)/2, (p-1)/2] for odd p, (-p/2, p/2] for even p."""
        p = self.modulus
        low = -((p - 1) // 2)
        return list(range(low, low + p))

    def as_laurent(self) -> LaurentPoly:
        return LaurentPoly(
            tuple((i, self.coefficient(i)) for i in self.representatives())
        )

    def to_json(self) -> Dict[str, object]:
        return {"p": self.modulus, "coefficients": list(self.coefficients)}

    def __str__(self) -> str:
        return f"{self.as_laurent()} (mod t^{self.modulus} - 1)"


def cyclic_reduce(poly: LaurentPoly, p: int) -> CyclicPoly:
    require_modulus(p)
    coefficients = [0] * p
    for exponent, coefficient in poly.terms:
        coefficients[exponent % p] += coefficient
    return CyclicPoly(p, tuple(coefficients))


def _correction_terms(p: int) -> LaurentPoly:
    half = (p - 1) // 2
    return LaurentPoly.symmetric_pair(half + 1) - LaurentPoly.symmetric_pair(
        half
    )


def _require_odd_modulus(p: int):
    if p < 3 or p % 2 == 0:
        raise InvalidInput(
            f"Modulus {p} must be an odd integer at least 3",
            precondition="p odd and p >= 3",
        )


def correction_lift(base: LaurentPoly, p: int) -> LaurentPoly:
    """base - (t^((p-1)/2) + t^-((p-1)/2)) + (t^((p+1)/2) + t^-((p+1)/2))"""
    _require_odd_modulus(p)
    genus = genus_from_alexander(base)
    if 2 * genus >= p:
        raise InvalidInput(
            f"Base polynomial has genus {genus}; need 2g < {p}",
            precondition="2 * genus(base) < p",
        )
    return base + _correction_terms(p)


def tilde_correction(reduced: CyclicPoly) -> LaurentPoly:
    """Recover the Alexander polynomial of a genus (p+1)/2 knot from its
    reduction mod t^p - 1, lifting with centered representatives."""
    _require_odd_modulus(reduced.modulus)
    return reduced.as_laurent() + _correction_terms(reduced.modulus)


def tilde_constraints_check(c: CyclicPoly) -> bool:
    p = c.modulus
    for index, coefficient in enumerate(c.coefficients):
        if coefficient in (0, 1, -1):
            continue
        if coefficient == 2 and p % 2 == 0 and index == p // 2:
            continue
        return False
    return True
