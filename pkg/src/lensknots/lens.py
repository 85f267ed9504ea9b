"""Lens spaces, two-bridge links and the homology-class congruences that
decide which knots in a lens space can be surgery duals of knots in a
homology sphere."""

import re
from dataclasses import dataclass
from logging import getLogger
from math import gcd
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from . import conventions
from .errors import InvalidInput
from .exact import (
    ContinuedFraction,
    cf_eval,
    quadratic_solutions,
    require_modulus,
)

__all__ = [
    "LensSpace",
    "Normalized",
    "TwoBridge",
    "HomologyClass",
    "LensSum",
    "normalize",
    "equivalent_oriented",
    "equivalent_unoriented",
    "mirror",
    "sum_equivalent",
    "hsphere_surgery_classes",
    "berge_vii_classes",
    "berge_viii_classes",
    "hedden_classes",
    "hedden_hs_conditions",
    "hedden_homology_sphere",
    "two_bridge_from_cf",
]

LOGGER = getLogger(__name__)

PAIR_RE = r"\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)"
LENS_RE = re.compile(r"^\s*L\s*" + PAIR_RE + r"\s*$")
TWO_BRIDGE_RE = re.compile(r"^\s*B\s*" + PAIR_RE + r"\s*$")


def _canonical_pair(p: int, q: int) -> Tuple[int, int, bool]:
    mirrored = False
    if p < 0:
        p, q = -p, -q
        mirrored = conventions.NEGATIVE_P_IS_FLAGGED
    if p == 0:
        return (*conventions.S1_X_S2, mirrored)
    if p == 1:
        return (*conventions.S3, mirrored)
    if q % p != q:
        mirrored = mirrored or conventions.RESIDUE_REDUCTION_IS_MIRROR
    return p, q % p, mirrored


def _check_coprime(kind: str, p: int, q: int):
    if gcd(p, q) != 1:
        raise InvalidInput(
            f"{kind}({p},{q}) needs coprime parameters",
            precondition="gcd(|p|, |q|) = 1",
        )


@dataclass(frozen=True)
class LensSpace:
    """L(p, q), the result of -p/q surgery on the unknot. The pair is kept
    exactly as written; use `canonical()` for the normal form."""

    p: int
    q: int

    def __post_init__(self):
        _check_coprime("L", self.p, self.q)

    @classmethod
    def parse(cls, text: str) -> "LensSpace":
        match = LENS_RE.match(text)
        if match is None:
            raise InvalidInput(
                f"Cannot parse '{text}' as a lens space",
                precondition="text of the form L(p,q)",
            )
        return cls(int(match.group(1)), int(match.group(2)))

    @classmethod
    def from_json(cls, obj: Dict[str, int]) -> "LensSpace":
        try:
            return cls(int(obj["p"]), int(obj["q"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInput(
                f"Cannot read lens space from {obj!r}: {e}",
                precondition='object with integer "p" and "q"',
            )

    def to_json(self) -> Dict[str, int]:
        return {"p": self.p, "q": self.q}

    def normalize(self) -> "Normalized":
        return normalize(self)

    def canonical(self) -> "LensSpace":
        return normalize(self).lens

    @property
    def is_canonical(self) -> bool:
        return self.canonical() == self

    @property
    def is_s3(self) -> bool:
        return abs(self.p) == 1

    def describe(self) -> str:
        """Raw and canonical form side by side, e.g. L(5,-1) = L(5,4)."""
        canonical = self.canonical()
        if canonical == self:
            return str(self)
        return f"{self} = {canonical}"

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


class Normalized(NamedTuple):
    lens: LensSpace
    mirrored: bool


def normalize(lens: LensSpace) -> Normalized:
    """Bring L(p, q) to p >= 0 and 0 < q < p (or one of L(0,1), L(1,0)).

    Reducing q modulo p only changes the representative; rewriting a
    negative p as L(-p, -q) sets the mirror flag."""
    p, q, mirrored = _canonical_pair(lens.p, lens.q)
    return Normalized(LensSpace(p, q), mirrored)


def _canonical_residues(l1: LensSpace, l2: LensSpace) -> Optional[tuple]:
    c1, c2 = l1.canonical(), l2.canonical()
    if c1.p != c2.p:
        return None
    return c1.p, c1.q, c2.q


def equivalent_oriented(l1: LensSpace, l2: LensSpace) -> bool:
    """Orientation-preserving homeomorphism: q2 = q1 or q1 q2 = 1 mod p."""
    residues = _canonical_residues(l1, l2)
    if residues is None:
        return False
    p, q1, q2 = residues
    if p <= 1:
        return True
    return (q1 - q2) % p == 0 or (q1 * q2 - 1) % p == 0


def equivalent_unoriented(l1: LensSpace, l2: LensSpace) -> bool:
    """Any homeomorphism: q2 = +-q1 or q1 q2 = +-1 mod p."""
    residues = _canonical_residues(l1, l2)
    if residues is None:
        return False
    p, q1, q2 = residues
    if p <= 1:
        return True
    return any(
        (q1 - s * q2) % p == 0 or (q1 * q2 - s) % p == 0 for s in (1, -1)
    )


def mirror(lens: LensSpace) -> LensSpace:
    return LensSpace(lens.p, -lens.q).canonical()


@dataclass(frozen=True)
class LensSum:
    """A connected sum of lens spaces, stored as the sorted tuple of its
    canonical summands with S^3 summands dropped."""

    summands: Tuple[LensSpace, ...] = ()

    def __post_init__(self):
        canonical = [s.canonical() for s in self.summands]
        kept = sorted(
            (s for s in canonical if not s.is_s3), key=lambda s: (s.p, s.q)
        )
        object.__setattr__(self, "summands", tuple(kept))

    @classmethod
    def of(cls, *summands: LensSpace) -> "LensSum":
        return cls(tuple(summands))

    @classmethod
    def parse(cls, text: str) -> "LensSum":
        chunks = [c for c in text.split("#")]
        if not all(c.strip() for c in chunks):
            raise InvalidInput(
                f"Cannot parse '{text}' as a connected sum",
                precondition="text of the form L(a,b) # L(c,d)",
            )
        return cls(tuple(LensSpace.parse(c) for c in chunks))

    @classmethod
    def from_json(cls, objs: Iterable[Dict[str, int]]) -> "LensSum":
        return cls(tuple(LensSpace.from_json(o) for o in objs))

    def to_json(self) -> List[Dict[str, int]]:
        return [s.to_json() for s in self.summands]

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __str__(self) -> str:
        if not self.summands:
            return str(LensSpace(*conventions.S3))
        return " # ".join(str(s) for s in self.summands)


def sum_equivalent(s1: LensSum, s2: LensSum, oriented: bool = True) -> bool:
    """Match the summands of both sums one to one under the chosen
    equivalence."""
    if len(s1) != len(s2):
        return False

    relation = equivalent_oriented if oriented else equivalent_unoriented
    remaining = list(s2.summands)
    for summand in s1.summands:
        for i, candidate in enumerate(remaining):
            if relation(summand, candidate):
                del remaining[i]
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class TwoBridge:
    """The two-bridge link B(p, q), whose double branched cover is L(p, q).
    B(0,1) and B(1,0) are accepted as degenerate values; they are not
    knots."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0:
            raise InvalidInput(
                f"B({self.p},{self.q}) needs p >= 0", precondition="p >= 0"
            )
        _check_coprime("B", self.p, self.q)

    @classmethod
    def parse(cls, text: str) -> "TwoBridge":
        match = TWO_BRIDGE_RE.match(text)
        if match is None:
            raise InvalidInput(
                f"Cannot parse '{text}' as a two-bridge link",
                precondition="text of the form B(p,q)",
            )
        return cls(int(match.group(1)), int(match.group(2)))

    @classmethod
    def from_json(cls, obj: Dict[str, int]) -> "TwoBridge":
        try:
            return cls(int(obj["p"]), int(obj["q"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInput(
                f"Cannot read two-bridge link from {obj!r}: {e}",
                precondition='object with integer "p" and "q"',
            )

    def to_json(self) -> Dict[str, int]:
        return {"p": self.p, "q": self.q}

    @property
    def is_degenerate(self) -> bool:
        return self.p <= 1

    @property
    def is_knot(self) -> bool:
        return self.p % 2 == 1

    def require_knot(self) -> "TwoBridge":
        if self.is_degenerate or not self.is_knot:
            raise InvalidInput(
                f"{self} is not a two-bridge knot",
                precondition="p odd and p >= 3",
            )
        return self

    def canonical(self) -> "TwoBridge":
        p, q, _ = _canonical_pair(self.p, self.q)
        return TwoBridge(p, q)

    def double_branched_cover(self) -> LensSpace:
        return LensSpace(self.p, self.q)

    def __str__(self) -> str:
        return f"B({self.p},{self.q})"


def two_bridge_from_cf(
    terms: Union[ContinuedFraction, Sequence[int]]
) -> TwoBridge:
    """The two-bridge link B(p, q) presented by a continued fraction for
    -p/q."""
    value = cf_eval(terms)
    if value.is_infinite:
        return TwoBridge(1, 0)
    if value.numerator == 0:
        return TwoBridge(0, 1)
    sign = 1 if value.numerator > 0 else -1
    return TwoBridge(abs(value.numerator), -sign * value.denominator)


@dataclass(frozen=True)
class HomologyClass:
    """The class k in H_1(L(p, q)) = Z/p of a knot, e.g. the simple knot
    K(p, q, k)."""

    p: int
    k: int

    def __post_init__(self):
        if self.p < 1:
            raise InvalidInput(
                f"Homology class modulus {self.p} must be positive",
                precondition="p >= 1",
            )
        object.__setattr__(self, "k", self.k % self.p)

    @property
    def complement(self) -> int:
        return (-self.k) % self.p

    def __str__(self) -> str:
        return f"{self.k} mod {self.p}"


def hsphere_surgery_classes(p: int, q: int) -> FrozenSet[Tuple[int, str]]:
    """Classes k of knots in L(p, q) with an integral surgery to a homology
    sphere: k^2 = q (tagged "+") or k^2 = -q (tagged "-") mod p."""
    require_modulus(p)
    _check_coprime("L", p, q)
    plus = quadratic_solutions(1, 0, -q, p)
    minus = quadratic_solutions(1, 0, q, p)
    return frozenset([(k, "+") for k in plus] + [(k, "-") for k in minus])


def berge_vii_classes(p: int) -> FrozenSet[int]:
    """Roots of k^2 + k + 1 mod p (knots in the fiber of a trefoil)."""
    return quadratic_solutions(1, 1, 1, p)


def berge_viii_classes(p: int) -> FrozenSet[int]:
    """Roots of k^2 - k - 1 mod p (knots in the fiber of the figure eight)."""
    return quadratic_solutions(1, -1, -1, p)


class HeddenClasses(NamedTuple):
    t_l: HomologyClass
    t_r: HomologyClass


def hedden_classes(p: int, q: int) -> HeddenClasses:
    """T_L is homologous to K(p, q, q+1) and T_R to K(p, q, q-1)."""
    _check_coprime("L", p, q)
    return HeddenClasses(HomologyClass(p, q + 1), HomologyClass(p, q - 1))


@dataclass(frozen=True)
class HeddenConditions:
    """Which Hedden knots of L(p, q) pass the homology-sphere congruence.

    `t_l` and `t_r` test (q+1)^2 = -q and (q-1)^2 = -q; the `*_mirror`
    fields test the same classes against +q, which is the condition read in
    the mirror L(p, -q)."""

    t_l: bool
    t_r: bool
    t_l_mirror: bool
    t_r_mirror: bool

    def to_json(self) -> Dict[str, bool]:
        return {
            "T_L": self.t_l,
            "T_R": self.t_r,
            "T_L_mirror": self.t_l_mirror,
            "T_R_mirror": self.t_r_mirror,
        }


def hedden_hs_conditions(p: int, q: int) -> HeddenConditions:
    _check_coprime("L", p, q)
    conditions = HeddenConditions(
        t_l=((q + 1) ** 2 + q) % p == 0,
        t_r=((q - 1) ** 2 + q) % p == 0,
        t_l_mirror=((q + 1) ** 2 - q) % p == 0,
        t_r_mirror=((q - 1) ** 2 - q) % p == 0,
    )

    # substituting k = -(q+1) resp. k = q-1 turns each congruence into one
    # of the Berge quadratics
    vii, viii = berge_vii_classes(p), berge_viii_classes(p)
    minus_l, minus_r = (-(q + 1)) % p, (q - 1) % p
    substitutions = (
        (conditions.t_l, minus_l in viii),
        (conditions.t_r, minus_r in vii),
        (conditions.t_l_mirror, minus_l in vii),
        (conditions.t_r_mirror, minus_r in viii),
    )
    if any(lhs != rhs for lhs, rhs in substitutions):
        raise RuntimeError(
            f"Berge substitution identities failed for L({p},{q}): "
            f"{substitutions}"
        )
    return conditions


HEDDEN_HOMOLOGY_SPHERES = {"T_L": "Σ(2,3,5)", "T_R": "Σ(2,3,7)"}


def hedden_homology_sphere(p: int, q: int, knot: str) -> Optional[str]:
    """The homology sphere that -1 surgery on the Hedden knot `knot` of
    L(p, q) yields when its class passes the homology-sphere congruence:
    the Poincaré sphere for T_L, the Brieskorn sphere Σ(2,3,7) for T_R."""
    if knot not in HEDDEN_HOMOLOGY_SPHERES:
        raise InvalidInput(
            f"Unknown Hedden knot '{knot}'", precondition="T_L or T_R"
        )
    conditions = hedden_hs_conditions(p, q)
    admits = conditions.t_l if knot == "T_L" else conditions.t_r
    return HEDDEN_HOMOLOGY_SPHERES[knot] if admits else None
