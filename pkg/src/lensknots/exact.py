import re
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger
from math import gcd
from typing import FrozenSet, Optional, Sequence, Tuple, Union

from .errors import DegenerateEvaluation, InfiniteArithmetic, InvalidInput

__all__ = [
    "Rational",
    "INFINITY",
    "ContinuedFraction",
    "cf_eval",
    "cf_expand",
    "quadratic_solutions",
    "mod_inverse",
    "require_modulus",
    "coprime",
]

LOGGER = getLogger(__name__)

RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")
INFINITY_NAMES = ("inf", "infinity", "∞", "oo")


@dataclass(frozen=True)
class Rational:
    """An exact rational number, always stored reduced with a positive
    denominator. The value 1/0 stands for the slope at infinity: it can be
    built, compared for equality and printed, but any arithmetic on it
    raises InfiniteArithmetic."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        num, den = int(self.numerator), int(self.denominator)
        if num == 0 and den == 0:
            raise InvalidInput("0/0 is not a rational number")
        if den == 0:
            num = 1
        else:
            g = gcd(num, den)
            num, den = num // g, den // g
            if den < 0:
                num, den = -num, -den
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int]) -> "Rational":
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @classmethod
    def parse(cls, text: str) -> "Rational":
        """Parse "p/q", "p", or one of the names of infinity."""
        if text.strip().lower() in INFINITY_NAMES:
            return INFINITY
        match = RATIONAL_RE.match(text)
        if match is None:
            raise InvalidInput(
                f"Cannot parse '{text}' as a rational number",
                precondition="text of the form p/q",
            )
        num, den = match.group(1), match.group(2)
        return cls(int(num), int(den) if den is not None else 1)

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    @property
    def is_integer(self) -> bool:
        return self.denominator == 1

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise InfiniteArithmetic(
                "1/0 has no value as a rational number",
                precondition="finite operand",
            )
        return Fraction(self.numerator, self.denominator)

    def _coerce(self, other: object) -> Optional[Fraction]:
        if isinstance(other, Rational):
            return other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return None

    def __add__(self, other: object) -> "Rational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Rational.from_fraction(self.as_fraction() + rhs)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Rational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Rational.from_fraction(self.as_fraction() - rhs)

    def __rsub__(self, other: object) -> "Rational":
        return (-self) + other

    def __mul__(self, other: object) -> "Rational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Rational.from_fraction(self.as_fraction() * rhs)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Rational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs == 0:
            raise InvalidInput(
                f"Cannot divide {self} by zero", precondition="divisor != 0"
            )
        return Rational.from_fraction(self.as_fraction() / rhs)

    def __rtruediv__(self, other: object) -> "Rational":
        return self.reciprocal() * other

    def __neg__(self) -> "Rational":
        if self.is_infinite:
            return self
        return Rational(-self.numerator, self.denominator)

    def reciprocal(self) -> "Rational":
        if self.numerator == 0:
            raise InvalidInput(
                "The reciprocal of 0 is not a rational number",
                precondition="nonzero value",
            )
        return Rational(self.denominator, self.numerator)

    def __lt__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.as_fraction() < rhs

    def __le__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.as_fraction() <= rhs

    def __gt__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.as_fraction() > rhs

    def __ge__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.as_fraction() >= rhs

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def to_json(self) -> Tuple[int, int]:
        return (self.numerator, self.denominator)


INFINITY = Rational(1, 0)


@dataclass(frozen=True)
class ContinuedFraction:
    """A negative continued fraction [x1, ..., xn], read as
    x1 - 1/(x2 - 1/(... - 1/xn))."""

    terms: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))

    @classmethod
    def from_rational(cls, value: Rational) -> "ContinuedFraction":
        return cf_expand(value.numerator, value.denominator)

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        chunks = [c for c in re.split(r"[,\s]+", body) if c]
        try:
            return cls(tuple(int(c) for c in chunks))
        except ValueError:
            raise InvalidInput(
                f"Cannot parse '{text}' as a continued fraction",
                precondition="integer terms",
            )

    def evaluate(self) -> Rational:
        return cf_eval(self)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self) -> str:
        return "[" + ", ".join(str(t) for t in self.terms) + "]"


def cf_eval(terms: Union[ContinuedFraction, Sequence[int]]) -> Rational:
    """Evaluate a negative continued fraction exactly. The empty fraction is
    the slope at infinity; a zero in the tail of the evaluation raises
    DegenerateEvaluation."""

    sequence = list(terms)
    if not sequence:
        return INFINITY

    value = Fraction(sequence[-1])
    # walk from the innermost term outwards
    for position in range(len(sequence) - 2, -1, -1):
        if value == 0:
            raise DegenerateEvaluation(
                f"Continued fraction {list(sequence)} needs 1/0 when "
                f"evaluating past term {position + 1}",
                precondition="nonzero intermediate value",
            )
        value = sequence[position] - 1 / value

    return Rational.from_fraction(value)


def cf_expand(p: int, q: int) -> ContinuedFraction:
    """Expand p/q as a negative continued fraction whose first term is
    floor(p/q) and every further term is at most -2."""

    if gcd(p, q) != 1:
        raise InvalidInput(
            f"({p}, {q}) is not a coprime pair", precondition="gcd(p, q) = 1"
        )
    if q == 0:
        # p is +/-1 here
        return ContinuedFraction(())
    if q < 0:
        p, q = -p, -q

    terms = []
    while q != 0:
        x, r = divmod(p, q)
        terms.append(x)
        p, q = -q, r

    return ContinuedFraction(tuple(terms))


def require_modulus(p: int):
    if p < 1:
        raise InvalidInput(
            f"Modulus {p} must be positive", precondition="p >= 1"
        )


def quadratic_solutions(A: int, B: int, C: int, p: int) -> FrozenSet[int]:
    """All residues k in Z/p with A k^2 + B k + C = 0 mod p, by exhaustive
    scan."""
    require_modulus(p)
    return frozenset(k for k in range(p) if (A * k * k + B * k + C) % p == 0)


def mod_inverse(a: int, p: int) -> Optional[int]:
    require_modulus(p)
    try:
        return pow(a, -1, p)
    except ValueError:
        return None


def coprime(*values: int) -> bool:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g == 1

