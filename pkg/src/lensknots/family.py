"""Every checkable fact about the knots K_n: parameters, companion torus
knot, continued fraction, Alexander polynomials, tunnel verdict and the
surgery identifications, gathered into one report per n."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from typing import (
    Dict,
    FrozenSet,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .errors import InvalidInput, LensknotsError
from .exact import Rational, cf_eval, coprime, mod_inverse
from .laurent import (
    LaurentPoly,
    correction_lift,
    cyclic_reduce,
    genus_from_alexander,
    lspace_form_check,
    tilde_constraints_check,
    torus_alexander,
)
from .lens import (
    HeddenConditions,
    LensSpace,
    LensSum,
    TwoBridge,
    berge_vii_classes,
    equivalent_oriented,
    equivalent_unoriented,
    hedden_homology_sphere,
    hedden_hs_conditions,
    hsphere_surgery_classes,
    sum_equivalent,
    two_bridge_from_cf,
)
from .seifert import TunnelVerdict, Verdict, tunnel_verdict
from .surgery import (
    SurgeryResult,
    dual_self_linking,
    torus_knot_integral_surgery,
    unknot_surgery,
)

__all__ = [
    "FamilyReport",
    "family_params",
    "family_torus_knot",
    "torus_companion",
    "family_cf",
    "verify_cf_identity",
    "family_alexander",
    "family_report",
    "census_scan",
]

LOGGER = getLogger(__name__)

EXCLUDED_RANGE = range(-3, 4)


def family_params(n: int) -> Tuple[int, int]:
    """(p, q) = (3n^2 + n + 1, -3n + 2)"""
    return 3 * n * n + n + 1, -3 * n + 2


def family_torus_knot(n: int) -> Tuple[int, int]:
    a, b = 3 * n + 1, n
    if not coprime(a, b):
        raise RuntimeError(f"T({a},{b}) has non coprime parameters")
    return a, b


def torus_companion(n: int) -> Tuple[int, int, bool]:
    """The companion torus knot with positive parameters, and whether
    making them positive mirrors the knot (exactly one sign flipped)."""
    a, b = family_torus_knot(n)
    return abs(a), abs(b), (a < 0) != (b < 0)


def family_cf(n: int) -> List[int]:
    return [n, -1, -n, 3]


def verify_cf_identity(n: int) -> bool:
    """[n, -1, -n, 3] = -(3n^2 + n + 1)/(-3n + 2)"""
    p, q = family_params(n)
    return cf_eval(family_cf(n)) == Rational(-p, q)


def family_alexander(n: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """Alexander polynomials of the companion torus knot and of K_n. For
    n <= -1 the torus knot is taken with positive parameters."""
    if n == 0:
        raise InvalidInput(
            "K_0 has p = 1; there is no correction lift",
            precondition="n != 0",
        )
    p, _ = family_params(n)
    a, b, _ = torus_companion(n)
    delta_t = torus_alexander(a, b)
    return delta_t, correction_lift(delta_t, p)


@dataclass(frozen=True)
class AlexanderChecks:
    top_exponent: int
    top_exponent_ok: bool
    lspace_form_ok: bool
    lspace_exponents: Tuple[int, ...]
    value_at_one_ok: bool
    cyclic_agreement_ok: bool
    tilde_constraints_ok: bool
    companion_genus_ok: bool

    def failures(self) -> List[str]:
        names = (
            "top_exponent_ok",
            "lspace_form_ok",
            "value_at_one_ok",
            "cyclic_agreement_ok",
            "tilde_constraints_ok",
            "companion_genus_ok",
        )
        return [f"alexander.{n[:-3]}" for n in names if not getattr(self, n)]

    def to_json(self) -> Dict[str, object]:
        return {
            "top_exponent": self.top_exponent,
            "top_exponent_ok": self.top_exponent_ok,
            "lspace_form_ok": self.lspace_form_ok,
            "lspace_exponents": list(self.lspace_exponents),
            "value_at_one_ok": self.value_at_one_ok,
            "cyclic_agreement_ok": self.cyclic_agreement_ok,
            "tilde_constraints_ok": self.tilde_constraints_ok,
            "companion_genus_ok": self.companion_genus_ok,
        }


def _alexander_checks(
    delta_t: LaurentPoly, delta_k: LaurentPoly, p: int
) -> AlexanderChecks:
    form = lspace_form_check(delta_k)
    reduced_k = cyclic_reduce(delta_k, p)
    return AlexanderChecks(
        top_exponent=delta_k.max_exponent,
        top_exponent_ok=delta_k.max_exponent == (p + 1) // 2,
        lspace_form_ok=form.ok,
        lspace_exponents=form.exponents,
        value_at_one_ok=delta_k.evaluate(1) == 1,
        cyclic_agreement_ok=reduced_k == cyclic_reduce(delta_t, p),
        tilde_constraints_ok=tilde_constraints_check(reduced_k)
        and 2 not in reduced_k.coefficients,
        companion_genus_ok=2 * genus_from_alexander(delta_t) < p,
    )


@dataclass(frozen=True)
class LensSurgeryCheck:
    """p surgery on the companion torus knot against L(p, q)."""

    result: SurgeryResult
    expected: LensSpace
    residue_identity: bool
    unoriented: bool
    oriented: bool

    @property
    def ok(self) -> bool:
        return self.residue_identity and self.unoriented

    def to_json(self) -> Dict[str, object]:
        return {
            "result": str(self.result),
            "expected": self.expected.describe(),
            "residue_identity": self.residue_identity,
            "unoriented": self.unoriented,
            "oriented": self.oriented,
        }


@dataclass(frozen=True)
class ReducibleCheck:
    """The reducible surgery on the companion torus knot against
    L(n,-1) # L(3n+1,3)."""

    result: SurgeryResult
    expected: LensSum
    unoriented: bool
    oriented: bool

    @property
    def ok(self) -> bool:
        return self.unoriented

    def to_json(self) -> Dict[str, object]:
        return {
            "result": str(self.result),
            "expected": str(self.expected),
            "unoriented": self.unoriented,
            "oriented": self.oriented,
        }


def _companion_surgery(n: int, m: int) -> SurgeryResult:
    a, b, _ = torus_companion(n)
    if b == 0:
        # T(1, 0) is the unknot
        return SurgeryResult.of_lens(unknot_surgery(m))
    return torus_knot_integral_surgery(a, b, m)


def _lens_surgery_check(n: int) -> LensSurgeryCheck:
    p, q = family_params(n)
    result = _companion_surgery(n, p)
    expected = LensSpace(p, q)
    if result.lens is None:
        raise RuntimeError(f"{p} surgery on T(3n+1,n) gave {result}")
    return LensSurgeryCheck(
        result=result,
        expected=expected,
        residue_identity=(n * n * q + 1) % p == 0,
        unoriented=equivalent_unoriented(result.lens, expected),
        oriented=equivalent_oriented(result.lens, expected),
    )


def _reducible_check(n: int) -> ReducibleCheck:
    p, _ = family_params(n)
    result = _companion_surgery(n, p - 1)
    expected = LensSum.of(LensSpace(n, -1), LensSpace(3 * n + 1, 3))
    found = result.as_sum()
    if found is None:
        raise RuntimeError(f"{p - 1} surgery on T(3n+1,n) gave {result}")
    return ReducibleCheck(
        result=result,
        expected=expected,
        unoriented=sum_equivalent(found, expected, oriented=False),
        oriented=sum_equivalent(found, expected, oriented=True),
    )


@dataclass(frozen=True)
class FamilyReport:
    n: int
    p: int
    q: int
    torus_knot: Tuple[int, int]
    torus_mirrored: bool
    two_bridge: Optional[TwoBridge]
    cf_identity_ok: Optional[bool]
    delta_T: Optional[LaurentPoly]
    delta_K: Optional[LaurentPoly]
    genus_K: Optional[int]
    hfk_rank_reported: int
    alexander: Optional[AlexanderChecks]
    tunnel: TunnelVerdict
    lens_surgery_check: Optional[LensSurgeryCheck]
    reducible_check: Optional[ReducibleCheck]
    companion_minus_surgery: Optional[SurgeryResult]
    self_linking: Rational
    hsphere_classes: FrozenSet[Tuple[int, str]]
    hsphere_dual_class: Optional[int]
    berge_vii_at_p: FrozenSet[int]
    hedden: Optional[HeddenConditions] = None
    hedden_spheres: Tuple[Tuple[str, Optional[str]], ...] = ()
    notes: Tuple[str, ...] = ()
    errors: Tuple[Tuple[str, str], ...] = field(default_factory=tuple)

    def failures(self) -> List[str]:
        """Names of every cross-check that failed or could not run."""
        failed = [name for name, _ in self.errors]
        if self.cf_identity_ok is False:
            failed.append("cf_identity")
        if self.alexander is not None:
            failed.extend(self.alexander.failures())
        if self.lens_surgery_check is not None:
            if not self.lens_surgery_check.ok:
                failed.append("lens_surgery")
        if self.reducible_check is not None:
            if not self.reducible_check.ok:
                failed.append("reducible")
        if self.hsphere_dual_class is None:
            failed.append("hsphere_dual_class")
        return failed

    @property
    def ok(self) -> bool:
        return not self.failures()

    def to_json(self) -> Dict[str, object]:
        """Plain JSON types in a fixed field order; polynomials are written
        in their canonical text form."""

        def text(value) -> Optional[str]:
            return None if value is None else str(value)

        def block(value) -> Optional[Dict[str, object]]:
            return None if value is None else value.to_json()

        return {
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "lens_space": LensSpace(self.p, self.q).describe(),
            "torus_knot": list(self.torus_knot),
            "torus_mirrored": self.torus_mirrored,
            "two_bridge": text(self.two_bridge),
            "cf_identity_ok": self.cf_identity_ok,
            "delta_T": text(self.delta_T),
            "delta_K": text(self.delta_K),
            "genus_K": self.genus_K,
            "hfk_rank_reported": self.hfk_rank_reported,
            "alexander": block(self.alexander),
            "tunnel": str(self.tunnel),
            "tunnel_gates": self.tunnel.to_json()["gates"],
            "lens_surgery_check": block(self.lens_surgery_check),
            "reducible_check": block(self.reducible_check),
            "companion_minus_surgery": text(self.companion_minus_surgery),
            "self_linking": str(self.self_linking),
            "hsphere_classes": [
                [k, sign] for k, sign in sorted(self.hsphere_classes)
            ],
            "hsphere_dual_class": self.hsphere_dual_class,
            "berge_vii_at_p": sorted(self.berge_vii_at_p),
            "hedden": block(self.hedden),
            "hedden_homology_spheres": dict(self.hedden_spheres),
            "notes": list(self.notes),
            "errors": {name: message for name, message in self.errors},
            "failures": self.failures(),
        }

    def to_row(self) -> Dict[str, object]:
        """Flat view for CSV output."""
        lens = self.lens_surgery_check
        reducible = self.reducible_check
        hedden = ""
        if self.hedden is not None:
            passed = self.hedden.to_json().items()
            hedden = " ".join(name for name, ok in passed if ok)
        return {
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "torus_knot": f"T({self.torus_knot[0]},{self.torus_knot[1]})",
            "two_bridge": "" if self.two_bridge is None else self.two_bridge,
            "cf_identity_ok": self.cf_identity_ok,
            "delta_T": "" if self.delta_T is None else self.delta_T,
            "delta_K": "" if self.delta_K is None else self.delta_K,
            "genus_K": "" if self.genus_K is None else self.genus_K,
            "hfk_rank_reported": self.hfk_rank_reported,
            "tunnel": self.tunnel,
            "lens_surgery": "" if lens is None else lens.result,
            "lens_surgery_ok": "" if lens is None else lens.ok,
            "reducible_surgery": "" if reducible is None else reducible.result,
            "reducible_ok": "" if reducible is None else reducible.ok,
            "self_linking": self.self_linking,
            "berge_vii_at_p": " ".join(
                str(k) for k in sorted(self.berge_vii_at_p)
            ),
            "hedden": hedden,
            "failures": " ".join(self.failures()),
        }


class _Recorder:
    """Runs one cross-check at a time, keeping its error instead of
    aborting the report."""

    def __init__(self, n: int):
        self.n = n
        self.errors: List[Tuple[str, str]] = []

    def run(self, name: str, func, *args):
        try:
            return func(*args)
        except (LensknotsError, RuntimeError) as e:
            LOGGER.warning(f"n={self.n}: check '{name}' raised {e}")
            self.errors.append((name, f"{type(e).__name__}: {e}"))
            return None


def family_report(n: int) -> FamilyReport:
    LOGGER.info(f"Building report for K_{n}")
    recorder = _Recorder(n)
    p, q = family_params(n)
    a, b, mirrored = torus_companion(n)

    notes: List[str] = []
    if n in EXCLUDED_RANGE:
        notes.append(
            "n in {-3,...,3}: outside the range of the tunnel number two "
            "argument"
        )
    if n < 0:
        notes.append(
            "polynomials and surgeries use the torus knot "
            f"T({a},{b}) with positive parameters"
        )
    if not coprime(p, 3 * n - 2):
        raise RuntimeError(f"L({p},{q}) is not well formed for n={n}")

    alexander = delta_t = delta_k = genus_k = None
    if n == 0:
        notes.append("p = 1: Alexander polynomial checks skipped")
    else:
        polys = recorder.run("alexander", family_alexander, n)
        if polys is not None:
            delta_t, delta_k = polys
            genus_k = recorder.run("genus", genus_from_alexander, delta_k)
            alexander = recorder.run(
                "alexander_checks", _alexander_checks, delta_t, delta_k, p
            )

    cf_ok = recorder.run("cf_identity", verify_cf_identity, n)
    two_bridge = recorder.run("two_bridge", two_bridge_from_cf, family_cf(n))
    if two_bridge is not None and two_bridge != TwoBridge(p, q):
        cf_ok = False

    tunnel = tunnel_verdict(n)
    if tunnel.verdict == Verdict.TUNNEL_NUMBER_ONE:
        notes.append("tunnel number one is observed, not derived by the gates")

    hsphere = hsphere_surgery_classes(p, q)
    dual = mod_inverse(n, p)
    if dual is not None and (dual, "-") not in hsphere:
        dual = None

    hedden = recorder.run("hedden", hedden_hs_conditions, p, q)
    spheres: List[Tuple[str, Optional[str]]] = []
    if hedden is not None:
        spheres = [
            (knot, hedden_homology_sphere(p, q, knot))
            for knot in ("T_L", "T_R")
        ]
        for knot, direct, in_mirror in (
            ("T_L", hedden.t_l, hedden.t_l_mirror),
            ("T_R", hedden.t_r, hedden.t_r_mirror),
        ):
            if in_mirror and not direct:
                notes.append(
                    f"{knot} passes the homology sphere congruence only in "
                    f"the mirror L({p},{-q})"
                )

    notes.append("Tange knot table not evaluated")

    return FamilyReport(
        n=n,
        p=p,
        q=q,
        torus_knot=family_torus_knot(n),
        torus_mirrored=mirrored,
        two_bridge=two_bridge,
        cf_identity_ok=cf_ok,
        delta_T=delta_t,
        delta_K=delta_k,
        genus_K=genus_k,
        hfk_rank_reported=p + 2,
        alexander=alexander,
        tunnel=tunnel,
        lens_surgery_check=recorder.run(
            "lens_surgery", _lens_surgery_check, n
        ),
        reducible_check=recorder.run("reducible", _reducible_check, n),
        companion_minus_surgery=recorder.run(
            "companion_minus_surgery", _companion_surgery, n, p - 2
        ),
        self_linking=dual_self_linking(p),
        hsphere_classes=hsphere,
        hsphere_dual_class=dual,
        berge_vii_at_p=berge_vii_classes(p),
        hedden=hedden,
        hedden_spheres=tuple(spheres),
        notes=tuple(notes),
        errors=tuple(recorder.errors),
    )


def _report_task(args: Tuple[int, Optional[str]]) -> FamilyReport:
    n, cachedir = args
    if cachedir is None:
        return family_report(n)

    from .memoizer import memoize

    return memoize(cachedir=cachedir)(family_report)(n)


def census_scan(
    n_min: int,
    n_max: int,
    workers: int = 1,
    cachedir: Optional[Union[str, Path]] = None,
) -> List[FamilyReport]:
    """One report per n in [n_min, n_max], ordered by n. With more than one
    worker the reports are built in a process pool."""
    if n_min > n_max:
        raise InvalidInput(
            f"Empty census range [{n_min}, {n_max}]",
            precondition="n_min <= n_max",
        )
    if workers < 1:
        raise InvalidInput(
            f"Need at least one worker, got {workers}",
            precondition="workers >= 1",
        )

    cache = None if cachedir is None else str(cachedir)
    tasks: Sequence[Tuple[int, Optional[str]]] = [
        (n, cache) for n in range(n_min, n_max + 1)
    ]
    LOGGER.info(
        f"Census over [{n_min}, {n_max}] with {workers} worker(s), "
        f"cache {'off' if cache is None else cache}"
    )

    if workers == 1:
        return [_report_task(t) for t in tasks]

    with ProcessPoolExecutor(max_workers=workers) as executor:
        # map preserves input order
        return list(executor.map(_report_task, tasks))
