"""Rational tangles, pretzel links and the classification of their double
branched covers, plus the gate sequence that decides when the knots K_n
have tunnel number two."""

import re
from dataclasses import dataclass, field
from enum import Enum
from logging import getLogger
from typing import Dict, List, Optional, Tuple

from .errors import InvalidInput
from .exact import Rational
from .lens import LensSpace, LensSum

__all__ = [
    "RationalTangle",
    "TangleSum",
    "Pretzel",
    "SeifertKind",
    "SeifertClass",
    "Verdict",
    "GateResult",
    "TunnelVerdict",
    "tangle_sum_double_cover",
    "pretzel_is_two_bridge",
    "pretzel_double_cover",
    "tunnel_verdict",
]

LOGGER = getLogger(__name__)

PRETZEL_RE = re.compile(
    r"^\s*P\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)\s*$"
)


class SeifertKind(Enum):
    SOLID_TORUS = "SolidTorus"
    TWISTED_I_BUNDLE_KLEIN = "TwistedIBundleKlein"
    SFS_OVER_DISK = "SFSOverDisk"
    SFS_OVER_SPHERE = "SFSOverSphere"
    DEGENERATE = "DegenerateFibration"
    CONNECTED_SUM_LIKE = "ConnectedSumLike"
    LENS_SPACE = "LensSpace"
    OTHER = "Other"


@dataclass(frozen=True)
class SeifertClass:
    """Classification summary of a double branched cover. `orders` lists
    exceptional fiber orders for the Seifert fibered kinds; `lens` and
    `summands` are only set for the lens space and connected sum kinds."""

    kind: SeifertKind
    orders: Tuple[int, ...] = ()
    lens: Optional[LensSpace] = None
    summands: Optional[LensSum] = None

    @classmethod
    def over_disk(cls, *orders: int) -> "SeifertClass":
        return cls(SeifertKind.SFS_OVER_DISK, tuple(sorted(orders)))

    @classmethod
    def over_sphere(cls, *orders: int) -> "SeifertClass":
        return cls(SeifertKind.SFS_OVER_SPHERE, tuple(sorted(orders)))

    @property
    def has_two_exceptional_fibers(self) -> bool:
        """Both an SFS over the disk with two fibers and the twisted
        I-bundle over the Klein bottle, which is D^2(2,2)."""
        return len(self.orders) == 2 and self.kind in (
            SeifertKind.SFS_OVER_DISK,
            SeifertKind.TWISTED_I_BUNDLE_KLEIN,
        )

    def to_json(self) -> Dict[str, object]:
        out: Dict[str, object] = {"kind": self.kind.value}
        if self.orders:
            out["orders"] = list(self.orders)
        if self.lens is not None:
            out["lens"] = str(self.lens)
        if self.summands is not None:
            out["summands"] = str(self.summands)
        return out

    def __str__(self) -> str:
        orders = ",".join(str(o) for o in self.orders)
        if self.kind == SeifertKind.SFS_OVER_DISK:
            return f"D^2({orders})"
        if self.kind == SeifertKind.SFS_OVER_SPHERE:
            return f"S^2({orders})"
        if self.kind == SeifertKind.LENS_SPACE and self.lens is not None:
            return f"LensSpace {self.lens.describe()}"
        if self.kind == SeifertKind.CONNECTED_SUM_LIKE:
            return f"ConnectedSumLike {self.summands}"
        return self.kind.value


@dataclass(frozen=True)
class RationalTangle:
    fraction: Rational

    @classmethod
    def reciprocal(cls, x: int) -> "RationalTangle":
        """The integer-reciprocal tangle 1/x; 1/0 is the infinity tangle."""
        return cls(Rational(1, x))

    @property
    def fiber_order(self) -> int:
        """Order of the fiber filling the tangle's double cover; the
        denominator of the fraction, 0 for the infinity tangle."""
        return self.fraction.denominator

    def __str__(self) -> str:
        return str(self.fraction)


@dataclass(frozen=True)
class TangleSum:
    summands: Tuple[RationalTangle, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.summands) < 2:
            raise InvalidInput(
                f"A tangle sum needs at least two summands, got "
                f"{len(self.summands)}",
                precondition="two or more summands",
            )

    @classmethod
    def of_reciprocals(cls, *values: int) -> "TangleSum":
        return cls(tuple(RationalTangle.reciprocal(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "TangleSum":
        """Parse "1/x + 1/y"; any rational summand p/q is accepted."""
        # a binary minus becomes the sum with a negative summand
        body = re.sub(r"(?<=\d)\s*-\s*(?=\d)", " + -", text.strip())
        chunks = body.split("+")
        if any(not c.strip() for c in chunks):
            raise InvalidInput(
                f"Cannot parse '{text}' as a tangle sum",
                precondition="text of the form 1/x + 1/y",
            )
        return cls(tuple(RationalTangle(Rational.parse(c)) for c in chunks))

    def double_cover(self) -> SeifertClass:
        orders = [t.fiber_order for t in self.summands]
        if 0 in orders:
            return SeifertClass(SeifertKind.DEGENERATE)

        exceptional = sorted(o for o in orders if o >= 2)
        if len(exceptional) < 2:
            return SeifertClass(SeifertKind.SOLID_TORUS)
        if exceptional == [2, 2]:
            return SeifertClass(SeifertKind.TWISTED_I_BUNDLE_KLEIN, (2, 2))
        return SeifertClass.over_disk(*exceptional)

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.summands)


def tangle_sum_double_cover(x: int, y: int) -> SeifertClass:
    """Double branched cover of the tangle sum 1/x + 1/y."""
    return TangleSum.of_reciprocals(x, y).double_cover()


@dataclass(frozen=True)
class Pretzel:
    a: int
    b: int
    c: int

    @classmethod
    def parse(cls, text: str) -> "Pretzel":
        match = PRETZEL_RE.match(text)
        if match is None:
            raise InvalidInput(
                f"Cannot parse '{text}' as a pretzel link",
                precondition="text of the form P(a,b,c)",
            )
        return cls(*(int(g) for g in match.groups()))

    @property
    def parameters(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"P({self.a},{self.b},{self.c})"


def pretzel_is_two_bridge(pretzel: Pretzel) -> bool:
    """A pretzel link P(a,b,c) is two-bridge when some twist region has a
    single crossing. A zero region only splits the link into a connected
    sum, which does not count."""
    return any(abs(x) == 1 for x in pretzel.parameters)


def _collapse(summands: List[LensSpace]) -> SeifertClass:
    total = LensSum(tuple(summands))
    if len(total) == 0:
        return SeifertClass(SeifertKind.LENS_SPACE, lens=LensSpace(1, 0))
    if len(total) == 1:
        return SeifertClass(SeifertKind.LENS_SPACE, lens=total.summands[0])
    return SeifertClass(SeifertKind.CONNECTED_SUM_LIKE, summands=total)


def pretzel_double_cover(pretzel: Pretzel) -> SeifertClass:
    params = sorted(pretzel.parameters)

    if 0 in params:
        # the zero region splits off each torus link T(2, x) as a summand
        nonzero = [x for x in params if x != 0]
        extra_zeros = params.count(0) - 1
        summands = [LensSpace(x, 1) for x in nonzero]
        summands += [LensSpace(0, 1)] * extra_zeros
        return _collapse(summands)

    units = [x for x in params if abs(x) == 1]
    if units:
        e = units[0]
        rest = list(params)
        rest.remove(e)
        x, y = rest
        # numerator closure of 1/x + (1 + e y)/y
        lens = LensSpace(x + y + e * x * y, y + (x - 1) * (1 + e * y))
        return SeifertClass(SeifertKind.LENS_SPACE, lens=lens)

    return SeifertClass.over_sphere(*(abs(x) for x in params))


class Verdict(Enum):
    TUNNEL_NUMBER_TWO = "TunnelNumberTwo"
    TUNNEL_NUMBER_ONE = "TunnelNumberOne"
    EXCLUDED = "Excluded"


@dataclass(frozen=True)
class GateResult:
    gate: str
    passed: bool
    detail: str

    def to_json(self) -> Dict[str, object]:
        return {
            "gate": self.gate,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class TunnelVerdict:
    n: int
    verdict: Verdict
    gate: Optional[str]
    gates: Tuple[GateResult, ...]

    @property
    def failed_gates(self) -> Tuple[str, ...]:
        return tuple(g.gate for g in self.gates if not g.passed)

    @property
    def is_observed(self) -> bool:
        """Tunnel number one is observed for these n, not derived by the
        gate sequence."""
        return self.verdict == Verdict.TUNNEL_NUMBER_ONE

    def to_json(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict.value,
            "gate": self.gate,
            "gates": [g.to_json() for g in self.gates],
        }

    def __str__(self) -> str:
        if self.verdict == Verdict.EXCLUDED:
            return f"Excluded({self.gate})"
        if self.gate is not None:
            return f"{self.verdict.value} ({self.gate})"
        return self.verdict.value


def tunnel_verdict(n: int) -> TunnelVerdict:
    """Replay the gates that rule out a genus two Heegaard splitting of the
    exterior of K_n. Every gate is evaluated; the first failing one fixes
    the verdict."""

    cover_alpha = tangle_sum_double_cover(n + 2, 3)
    cover_beta = tangle_sum_double_cover(1 - n, -2)
    pretzel_beta = Pretzel(1 - n, 2, 2)
    pretzel_alpha = Pretzel(n + 2, 3, -2)

    gates = (
        GateResult(
            "G1",
            cover_alpha.has_two_exceptional_fibers
            and cover_beta.has_two_exceptional_fibers,
            f"covers {cover_alpha} and {cover_beta}",
        ),
        GateResult(
            "G2",
            SeifertKind.TWISTED_I_BUNDLE_KLEIN
            not in (cover_alpha.kind, cover_beta.kind),
            f"covers {cover_alpha} and {cover_beta}",
        ),
        GateResult(
            "G3",
            not pretzel_is_two_bridge(pretzel_beta),
            f"{pretzel_beta} two-bridge: "
            f"{pretzel_is_two_bridge(pretzel_beta)}",
        ),
        GateResult(
            "G4",
            not pretzel_is_two_bridge(pretzel_alpha),
            f"{pretzel_alpha} two-bridge: "
            f"{pretzel_is_two_bridge(pretzel_alpha)}",
        ),
    )

    first_failure = next((g.gate for g in gates if not g.passed), None)
    if first_failure is None:
        verdict = Verdict.TUNNEL_NUMBER_TWO
    elif first_failure == "G1":
        verdict = Verdict.TUNNEL_NUMBER_ONE
    else:
        verdict = Verdict.EXCLUDED

    LOGGER.debug(f"Tunnel gates for n={n}: {[g.passed for g in gates]}")
    return TunnelVerdict(n, verdict, first_failure, gates)
