from dataclasses import dataclass
from enum import Enum
from logging import getLogger
from math import gcd
from typing import Dict, List, Optional, Tuple

from . import conventions
from .errors import InvalidInput
from .exact import Rational, require_modulus
from .lens import LensSpace, LensSum

__all__ = [
    "Slope",
    "SurgeryKind",
    "SurgeryResult",
    "slope_distance",
    "involution_image",
    "unknot_surgery",
    "torus_knot_integral_surgery",
    "dual_self_linking",
]

LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class Slope:
    """The slope p*mu + q*lambda on a knot's boundary torus. (p, q) and
    (-p, -q) name the same slope; the stored pair has q >= 0, and p >= 0
    when q = 0."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if gcd(p, q) != 1:
            raise InvalidInput(
                f"Slope ({p}, {q}) needs coprime coordinates",
                precondition="gcd(|p|, |q|) = 1",
            )
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        """Parse "p/q", an integer, or 1/0 (also written inf)."""
        return cls.from_rational(Rational.parse(text))

    @classmethod
    def from_rational(cls, value: Rational) -> "Slope":
        return cls(value.numerator, value.denominator)

    @classmethod
    def from_json(cls, pair) -> "Slope":
        try:
            p, q = pair
            return cls(int(p), int(q))
        except (TypeError, ValueError) as e:
            raise InvalidInput(
                f"Cannot read slope from {pair!r}: {e}",
                precondition="pair [p, q]",
            )

    def as_rational(self) -> Rational:
        return Rational(self.p, self.q)

    def to_json(self) -> List[int]:
        return [self.p, self.q]

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def slope_distance(s1: Slope, s2: Slope) -> int:
    """Minimal geometric intersection number of the two slopes."""
    return abs(s1.p * s2.q - s2.p * s1.q)


def involution_image(s: Slope) -> Slope:
    """Image of a slope under an involution reversing the longitude,
    p*mu + q*lambda -> p*mu - q*lambda."""
    return Slope(s.p, -s.q)


def dual_self_linking(p: int) -> Rational:
    """The self-linking number -1/p mod 1 of a dual knot, as (p-1)/p."""
    require_modulus(p)
    return Rational((-1) % p, p)


class SurgeryKind(Enum):
    LENS = "Lens"
    SUM = "Sum"
    NOT_LENS_INTEGRAL = "NotLensIntegral"


@dataclass(frozen=True)
class SurgeryResult:
    """What an integral surgery produced. For the lens kind `lens` is the
    canonical value and `raw` the pair the surgery formula gave."""

    kind: SurgeryKind
    lens: Optional[LensSpace] = None
    raw: Optional[LensSpace] = None
    summands: Optional[LensSum] = None
    orders: Tuple[int, ...] = ()

    @classmethod
    def of_lens(cls, lens: LensSpace) -> "SurgeryResult":
        return cls(SurgeryKind.LENS, lens=lens.canonical(), raw=lens)

    @classmethod
    def of_sum(cls, *summands: LensSpace) -> "SurgeryResult":
        return cls(SurgeryKind.SUM, summands=LensSum(summands))

    def as_sum(self) -> Optional[LensSum]:
        """The result as a connected sum of lens spaces, or None."""
        if self.kind == SurgeryKind.SUM:
            return self.summands
        if self.kind == SurgeryKind.LENS and self.lens is not None:
            return LensSum.of(self.lens)
        return None

    def to_json(self) -> Dict[str, object]:
        out: Dict[str, object] = {"kind": self.kind.value}
        if self.raw is not None:
            out["raw"] = str(self.raw)
        if self.lens is not None:
            out["lens"] = str(self.lens)
        if self.summands is not None:
            out["summands"] = str(self.summands)
        if self.orders:
            out["orders"] = list(self.orders)
        return out

    def __str__(self) -> str:
        if self.kind == SurgeryKind.LENS and self.raw is not None:
            return self.raw.describe()
        if self.kind == SurgeryKind.SUM:
            return str(self.summands)
        orders = ",".join(str(o) for o in self.orders)
        return f"NotLensIntegral S^2({orders})"


def unknot_surgery(m: int) -> LensSpace:
    """m surgery on the unknot, L(m, -1) as written; use `canonical()` to
    get S^3 for m = +-1 and S^1 x S^2 for m = 0."""
    return LensSpace(m, conventions.UNKNOT_SURGERY_Q)


def torus_knot_integral_surgery(a: int, b: int, m: int) -> SurgeryResult:
    """Identify m surgery on the (a, b) torus knot: the reducible slope ab
    gives L(a,b) # L(b,a), the slopes ab +- 1 give L(m, -a^2), and every
    other slope gives a Seifert fibered space with three exceptional
    fibers."""
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

    if a == 1 or b == 1:
        return SurgeryResult.of_lens(unknot_surgery(m))

    offset = abs(m - a * b)
    if offset == 0:
        return SurgeryResult.of_sum(LensSpace(a, b), LensSpace(b, a))
    if offset == 1:
        return SurgeryResult.of_lens(LensSpace(m, -((a * a) % m)))

    LOGGER.debug(f"{m} surgery on T({a},{b}) is not a lens space")
    return SurgeryResult(
        SurgeryKind.NOT_LENS_INTEGRAL, orders=tuple(sorted((a, b, offset)))
    )
