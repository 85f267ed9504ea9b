import csv
import io
import json
import sys
from argparse import SUPPRESS, Action, Namespace
from dataclasses import dataclass, field, fields
from logging import getLogger
from pathlib import Path
from typing import (
    IO,
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

from omegaconf import MISSING
from pathvalidate import ValidationError as PathValidationError
from pathvalidate import validate_filepath
from rich.console import Console

from .config import (
    FORMATS,
    LOG_LEVELS,
    ConfigError,
    LensknotsConfig,
    default_cache_dir,
    load_config,
    options_table,
    to_yaml,
)
from .errors import LensknotsError
from .exact import cf_eval, cf_expand, mod_inverse, quadratic_solutions
from .family import (
    census_scan,
    family_alexander,
    family_cf,
    family_params,
    family_report,
    torus_companion,
    verify_cf_identity,
)
from .laurent import (
    LaurentPoly,
    correction_lift,
    cyclic_reduce,
    genus_from_alexander,
    lspace_form_check,
    tilde_constraints_check,
    tilde_correction,
    torus_alexander,
)
from .lens import (
    LensSpace,
    LensSum,
    berge_vii_classes,
    berge_viii_classes,
    equivalent_oriented,
    equivalent_unoriented,
    hedden_classes,
    hedden_homology_sphere,
    hedden_hs_conditions,
    hsphere_surgery_classes,
    mirror,
    sum_equivalent,
    two_bridge_from_cf,
)
from .logging import configure_logging
from .rich_utils import RichArgumentParser, TableParser, add_pretty_traceback
from .seifert import (
    Pretzel,
    TangleSum,
    pretzel_double_cover,
    pretzel_is_two_bridge,
    tunnel_verdict,
)
from .surgery import (
    Slope,
    dual_self_linking,
    involution_image,
    slope_distance,
    torus_knot_integral_surgery,
    unknot_surgery,
)
from .utils import get_version

__all__ = ["run", "main", "Flag", "CliFlags", "Output"]

LOGGER = getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


@dataclass
class Flag:
    name: str
    help: str
    short: bool = True
    action: str = MISSING
    default: Optional[Any] = MISSING
    nargs: Optional[Any] = MISSING
    metavar: Optional[str] = MISSING
    choices: Optional[Sequence[Any]] = MISSING

    @property
    def long(self) -> str:
        return f"--{self.name}"

    @property
    def names(self) -> Tuple[str, ...]:
        if self.short:
            return (f"-{self.name[0]}", self.long)
        return (self.long,)

    def add_argparse(
        self, parser: RichArgumentParser, suppress: bool = False
    ) -> Action:
        kwargs: Dict[str, Any] = {"help": self.help}
        if self.action is not MISSING:
            kwargs["action"] = self.action
        if self.default is not MISSING:
            kwargs["default"] = self.default
        if self.nargs is not MISSING:
            kwargs["nargs"] = self.nargs
        if self.metavar is not MISSING:
            kwargs["metavar"] = self.metavar
        if self.choices is not MISSING:
            kwargs["choices"] = self.choices
        if suppress:
            # a flag repeated after the verb must not reset the value
            # given before it
            kwargs["default"] = SUPPRESS

        return parser.add_argument(*self.names, **kwargs)

    def __str__(self) -> str:
        return "/".join(self.names)

    @classmethod
    def field(cls, *args, **kwargs) -> "Flag":
        return field(default_factory=lambda: cls(*args, **kwargs))


@dataclass
class CliFlags:
    """Flags accepted before or after any verb."""

    format: Flag = Flag.field(
        name="format",
        help="output format; census defaults to JSON lines",
        default=None,
        choices=FORMATS,
    )
    config: Flag = Flag.field(
        name="config",
        help=(
            "path to a YAML or JSON configuration; repeat to merge several "
            "files in the order they are provided"
        ),
        default=[],
        action="append",
        metavar="/path/to/config.yaml",
    )
    set: Flag = Flag.field(
        name="set",
        short=False,
        help="override a configuration key, e.g. --set census.workers=4",
        default=[],
        action="append",
        metavar="key=value",
    )
    log_level: Flag = Flag.field(
        name="log-level",
        help="logging level; one of " + ", ".join(LOG_LEVELS),
        default=None,
        choices=LOG_LEVELS,
    )
    debug: Flag = Flag.field(
        name="debug",
        help="enable debug mode; equivalent to '--log-level DEBUG'",
        action="store_true",
        default=False,
    )

    @property
    def flags(self) -> Iterable[Flag]:
        for f in fields(self):
            maybe_flag = getattr(self, f.name)
            if isinstance(maybe_flag, Flag):
                yield maybe_flag

    def add_argparse(
        self, parser: RichArgumentParser, suppress: bool = False
    ) -> Sequence[Action]:
        return [flag.add_argparse(parser, suppress) for flag in self.flags]


@dataclass
class Output:
    """What a verb produced: `text` for the text format, `data` for JSON,
    `rows` for CSV (one row holding `text` when not given). `failed` marks
    a failed cross-check."""

    text: str
    data: Any
    rows: Optional[List[Dict[str, Any]]] = None
    failed: bool = False


Handler = Callable[[Namespace, LensknotsConfig], Output]


def _residues(values: Iterable[Any]) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


def _signed_residues(values: Iterable[Tuple[int, str]]) -> str:
    return _residues(f"({k},{sign})" for k, sign in sorted(values))


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False)


def _lines(pairs: Iterable[Tuple[str, Any]]) -> str:
    out = []
    for key, value in pairs:
        if isinstance(value, (dict, list)):
            value = _json(value)
        elif isinstance(value, bool):
            value = _bool(value)
        out.append(f"{key}: {value}")
    return "\n".join(out)


# # # # # # # # # # # # # # # # # # # cf # # # # # # # # # # # # # # # # # #


def cmd_cf_eval(args: Namespace, _: LensknotsConfig) -> Output:
    value = cf_eval(args.terms)
    return Output(str(value), list(value.to_json()))


def cmd_cf_expand(args: Namespace, _: LensknotsConfig) -> Output:
    expansion = cf_expand(args.p, args.q)
    return Output(str(expansion), list(expansion.terms))


# # # # # # # # # # # # # # # # # # # lens # # # # # # # # # # # # # # # # # #


def cmd_lens_normalize(args: Namespace, _: LensknotsConfig) -> Output:
    lens, mirrored = LensSpace(args.p, args.q).normalize()
    text = f"{lens} (mirrored)" if mirrored else str(lens)
    return Output(text, {"lens": lens.to_json(), "mirrored": mirrored})


def cmd_lens_mirror(args: Namespace, _: LensknotsConfig) -> Output:
    lens = mirror(LensSpace(args.p, args.q))
    return Output(str(lens), lens.to_json())


def cmd_lens_equiv(args: Namespace, _: LensknotsConfig) -> Output:
    first, second = LensSpace(args.p1, args.q1), LensSpace(args.p2, args.q2)
    compare = equivalent_unoriented if args.unoriented else equivalent_oriented
    result = compare(first, second)
    return Output(_bool(result), result)


def cmd_lens_sum(args: Namespace, _: LensknotsConfig) -> Output:
    first, second = LensSum.parse(args.first), LensSum.parse(args.second)
    result = sum_equivalent(first, second, oriented=not args.unoriented)
    return Output(_bool(result), result)


def cmd_lens_unknot(args: Namespace, _: LensknotsConfig) -> Output:
    lens = unknot_surgery(args.m)
    return Output(lens.describe(), lens.to_json())


def cmd_lens_two_bridge(args: Namespace, _: LensknotsConfig) -> Output:
    link = two_bridge_from_cf(args.terms)
    cover = link.double_branched_cover()
    data = {
        "two_bridge": link.to_json(),
        "knot": link.is_knot,
        "double_branched_cover": cover.to_json(),
    }
    text = f"{link} (double branched cover {cover.describe()})"
    return Output(text, data)


# # # # # # # # # # # # # # # # # tangles # # # # # # # # # # # # # # # # # #


def cmd_tangle(args: Namespace, _: LensknotsConfig) -> Output:
    tangle = TangleSum.parse(args.expression)
    cover = tangle.double_cover()
    return Output(str(cover), {"tangle": str(tangle), **cover.to_json()})


def cmd_pretzel(args: Namespace, _: LensknotsConfig) -> Output:
    pretzel = Pretzel.parse(args.pretzel)
    cover = pretzel_double_cover(pretzel)
    two_bridge = pretzel_is_two_bridge(pretzel)
    data = {"pretzel": str(pretzel), "two_bridge": two_bridge}
    data.update(cover.to_json())
    text = str(cover) + (" (two-bridge)" if two_bridge else "")
    return Output(text, data)


# # # # # # # # # # # # # # # # # surgery # # # # # # # # # # # # # # # # # #


def cmd_torus_surgery(args: Namespace, _: LensknotsConfig) -> Output:
    result = torus_knot_integral_surgery(args.a, args.b, args.m)
    return Output(str(result), result.to_json())


def cmd_slope_distance(args: Namespace, _: LensknotsConfig) -> Output:
    first, second = Slope.parse(args.first), Slope.parse(args.second)
    distance = slope_distance(first, second)
    return Output(str(distance), distance)


def cmd_slope_involution(args: Namespace, _: LensknotsConfig) -> Output:
    image = involution_image(Slope.parse(args.slope))
    return Output(str(image), image.to_json())


def cmd_slope_dual_linking(args: Namespace, _: LensknotsConfig) -> Output:
    linking = dual_self_linking(args.p)
    return Output(str(linking), list(linking.to_json()))


# # # # # # # # # # # # # # # # # classes # # # # # # # # # # # # # # # # # #


def cmd_classes_quadratic(args: Namespace, _: LensknotsConfig) -> Output:
    roots = quadratic_solutions(args.A, args.B, args.C, args.p)
    return Output(_residues(roots), sorted(roots))


def cmd_classes_inverse(args: Namespace, _: LensknotsConfig) -> Output:
    inverse = mod_inverse(args.a, args.p)
    return Output("none" if inverse is None else str(inverse), inverse)


def cmd_classes_hsphere(args: Namespace, _: LensknotsConfig) -> Output:
    classes = hsphere_surgery_classes(args.p, args.q)
    return Output(
        _signed_residues(classes), [[k, s] for k, s in sorted(classes)]
    )


def cmd_classes_berge7(args: Namespace, _: LensknotsConfig) -> Output:
    roots = berge_vii_classes(args.p)
    return Output(_residues(roots), sorted(roots))


def cmd_classes_berge8(args: Namespace, _: LensknotsConfig) -> Output:
    roots = berge_viii_classes(args.p)
    return Output(_residues(roots), sorted(roots))


def cmd_hedden(args: Namespace, _: LensknotsConfig) -> Output:
    classes = hedden_classes(args.p, args.q)
    conditions = hedden_hs_conditions(args.p, args.q)
    spheres = {
        knot: hedden_homology_sphere(args.p, args.q, knot)
        for knot in ("T_L", "T_R")
    }
    data = {
        "lens": LensSpace(args.p, args.q).to_json(),
        "T_L": classes.t_l.k,
        "T_R": classes.t_r.k,
        "conditions": conditions.to_json(),
        "homology_spheres": spheres,
    }
    text = _lines(
        [
            ("T_L", classes.t_l),
            ("T_R", classes.t_r),
            ("conditions", conditions.to_json()),
            ("homology_spheres", spheres),
        ]
    )
    return Output(text, data)


# # # # # # # # # # # # # # # # # alexander # # # # # # # # # # # # # # # # #


def cmd_alex_torus(args: Namespace, _: LensknotsConfig) -> Output:
    poly = torus_alexander(args.a, args.b)
    return Output(str(poly), poly.to_json())


def cmd_alex_genus(args: Namespace, _: LensknotsConfig) -> Output:
    genus = genus_from_alexander(LaurentPoly.parse(args.poly))
    return Output(str(genus), genus)


def cmd_alex_form(args: Namespace, _: LensknotsConfig) -> Output:
    form = lspace_form_check(LaurentPoly.parse(args.poly))
    data = {
        "ok": form.ok,
        "exponents": list(form.exponents),
        "reason": form.reason,
    }
    if form.ok:
        text = f"true {_residues(form.exponents)}"
    else:
        text = f"false ({form.reason})"
    return Output(text, data)


def cmd_alex_reduce(args: Namespace, _: LensknotsConfig) -> Output:
    reduced = cyclic_reduce(LaurentPoly.parse(args.poly), args.p)
    return Output(str(reduced), reduced.to_json())


def cmd_alex_lift(args: Namespace, _: LensknotsConfig) -> Output:
    lifted = correction_lift(LaurentPoly.parse(args.poly), args.p)
    return Output(str(lifted), lifted.to_json())


def cmd_alex_tilde(args: Namespace, _: LensknotsConfig) -> Output:
    reduced = cyclic_reduce(LaurentPoly.parse(args.poly), args.p)
    ok = tilde_constraints_check(reduced)
    corrected = tilde_correction(reduced) if args.p % 2 == 1 else None
    data = {
        "reduced": reduced.to_json(),
        "constraints_ok": ok,
        "corrected": None if corrected is None else str(corrected),
    }
    pairs: List[Tuple[str, Any]] = [
        ("reduced", reduced),
        ("constraints_ok", ok),
    ]
    if corrected is not None:
        pairs.append(("corrected", corrected))
    return Output(_lines(pairs), data, failed=not ok)


# # # # # # # # # # # # # # # # # # family # # # # # # # # # # # # # # # # # #


def cmd_family(args: Namespace, _: LensknotsConfig) -> Output:
    n = args.n
    if args.what == "params":
        p, q = family_params(n)
        return Output(f"p={p} q={q}", {"n": n, "p": p, "q": q})

    if args.what == "torus":
        a, b, mirrored = torus_companion(n)
        text = f"T({a},{b})" + (" (mirrored)" if mirrored else "")
        return Output(text, {"n": n, "torus_knot": [a, b], "mirror": mirrored})

    if args.what == "cf":
        terms, ok = family_cf(n), verify_cf_identity(n)
        text = f"[{', '.join(str(t) for t in terms)}] identity {_bool(ok)}"
        data = {"n": n, "cf": terms, "identity": ok}
        return Output(text, data, failed=not ok)

    if args.what == "alexander":
        delta_t, delta_k = family_alexander(n)
        data = {"n": n, "delta_T": str(delta_t), "delta_K": str(delta_k)}
        return Output(_lines(data.items()), data)

    if args.what == "tunnel":
        verdict = tunnel_verdict(n)
        data = {"n": n, **verdict.to_json()}
        return Output(str(verdict), data)

    report = family_report(n)
    data = report.to_json()
    return Output(
        _lines(data.items()),
        data,
        rows=[report.to_row()],
        failed=not report.ok,
    )


# # # # # # # # # # # # # # # # # # census # # # # # # # # # # # # # # # # # #


def cmd_census(args: Namespace, config: LensknotsConfig) -> Output:
    cachedir = None
    if config.census.cache:
        cachedir = config.census.cache_dir or str(default_cache_dir())

    reports = census_scan(
        args.n_from,
        args.n_to,
        workers=config.census.workers,
        cachedir=cachedir,
    )
    failed = [r.n for r in reports if not r.ok]
    if failed:
        LOGGER.warning(f"Cross-checks failed for n in {failed}")

    data = [r.to_json() for r in reports]
    text = "\n".join(_json(d) for d in data)
    return Output(
        text, data, rows=[r.to_row() for r in reports], failed=bool(failed)
    )


# # # # # # # # # # # # # # # # # # parser # # # # # # # # # # # # # # # # # #


def _verb(
    subparsers: Any, name: str, handler: Handler, help: str
) -> RichArgumentParser:
    parser = subparsers.add_parser(name, help=help, description=help)
    CliFlags().add_argparse(parser, suppress=True)
    parser.set_defaults(handler=handler)
    return parser


def _group(subparsers: Any, name: str, help: str) -> Any:
    parser = subparsers.add_parser(name, help=help, description=help)
    return parser.add_subparsers(title="actions", dest="action", required=True)


def _add_verify(parser: RichArgumentParser):
    parser.add_argument(
        "--verify",
        action="store_true",
        default=None,
        help="exit with status 1 when a cross-check fails",
    )


def make_parser() -> RichArgumentParser:
    ap = RichArgumentParser(
        prog="lensknots",
        description=(
            "Exact surgery calculus for a family of knots in the Poincaré "
            "homology sphere with lens space surgeries"
        ),
    )
    CliFlags().add_argparse(ap)
    ap.add_argument(
        "--options",
        action="store_true",
        help="print all configuration options and exit",
    )
    ap.add_argument(
        "--show-config",
        action="store_true",
        help="print the merged configuration as YAML and exit",
    )
    ap.add_argument(
        "--version", action="version", version=f"lensknots {get_version()}"
    )
    verbs = ap.add_subparsers(title="verbs", dest="verb")

    cf = _group(verbs, "cf", "negative continued fractions")
    sp = _verb(cf, "eval", cmd_cf_eval, "evaluate [x1, ..., xn]")
    sp.add_argument("terms", type=int, nargs="*", metavar="X")
    sp = _verb(cf, "expand", cmd_cf_expand, "expand p/q")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)

    lens = _group(verbs, "lens", "lens spaces and two-bridge links")
    for name, handler, help in (
        ("normalize", cmd_lens_normalize, "canonical form of L(p,q)"),
        ("mirror", cmd_lens_mirror, "mirror of L(p,q)"),
    ):
        sp = _verb(lens, name, handler, help)
        sp.add_argument("p", type=int)
        sp.add_argument("q", type=int)
    sp = _verb(lens, "equiv", cmd_lens_equiv, "compare two lens spaces")
    for name in ("p1", "q1", "p2", "q2"):
        sp.add_argument(name, type=int)
    sp.add_argument("--unoriented", action="store_true")
    sp = _verb(lens, "sum", cmd_lens_sum, "compare two connected sums")
    sp.add_argument("first", metavar="S1")
    sp.add_argument("second", metavar="S2")
    sp.add_argument("--unoriented", action="store_true")
    sp = _verb(lens, "unknot", cmd_lens_unknot, "m surgery on the unknot")
    sp.add_argument("m", type=int)
    sp = _verb(
        lens, "two-bridge", cmd_lens_two_bridge, "two-bridge link of [x1..xn]"
    )
    sp.add_argument("terms", type=int, nargs="*", metavar="X")

    sp = _verb(verbs, "tangle", cmd_tangle, "double cover of a tangle sum")
    sp.add_argument("expression", metavar="EXPR")
    sp = _verb(verbs, "pretzel", cmd_pretzel, "double cover of P(a,b,c)")
    sp.add_argument("pretzel", metavar="PRETZEL")
    sp = _verb(
        verbs,
        "torus-surgery",
        cmd_torus_surgery,
        "m surgery on the (a,b) torus knot",
    )
    for name in ("a", "b", "m"):
        sp.add_argument(name, type=int)

    slope = _group(verbs, "slope", "slopes on the boundary torus")
    sp = _verb(slope, "distance", cmd_slope_distance, "intersection number")
    sp.add_argument("first", metavar="S1")
    sp.add_argument("second", metavar="S2")
    sp = _verb(
        slope, "involution", cmd_slope_involution, "image under the inversion"
    )
    sp.add_argument("slope", metavar="S")
    sp = _verb(
        slope, "dual-linking", cmd_slope_dual_linking, "self-linking -1/p"
    )
    sp.add_argument("p", type=int)

    classes = _group(verbs, "classes", "homology classes in Z/p")
    sp = _verb(
        classes, "quadratic", cmd_classes_quadratic, "roots of Ak^2+Bk+C"
    )
    for name in ("A", "B", "C", "p"):
        sp.add_argument(name, type=int)
    sp = _verb(classes, "inverse", cmd_classes_inverse, "inverse of a mod p")
    sp.add_argument("a", type=int)
    sp.add_argument("p", type=int)
    sp = _verb(
        classes,
        "hsphere",
        cmd_classes_hsphere,
        "classes with a homology sphere surgery",
    )
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    for name, handler, help in (
        ("berge7", cmd_classes_berge7, "roots of k^2+k+1"),
        ("berge8", cmd_classes_berge8, "roots of k^2-k-1"),
    ):
        sp = _verb(classes, name, handler, help)
        sp.add_argument("--p", type=int, required=True)

    sp = _verb(verbs, "hedden", cmd_hedden, "Hedden knots T_L, T_R")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)

    alex = _group(verbs, "alex", "Alexander polynomials")
    sp = _verb(alex, "torus", cmd_alex_torus, "torus knot polynomial")
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    for name, handler, help in (
        ("genus", cmd_alex_genus, "genus read off a polynomial"),
        ("form", cmd_alex_form, "check the L-space form"),
    ):
        sp = _verb(alex, name, handler, help)
        sp.add_argument("poly", metavar="POLY")
    for name, handler, help in (
        ("reduce", cmd_alex_reduce, "reduce mod t^p - 1"),
        ("lift", cmd_alex_lift, "apply the degree correction"),
        ("tilde", cmd_alex_tilde, "check the reduced coefficients"),
    ):
        sp = _verb(alex, name, handler, help)
        sp.add_argument("poly", metavar="POLY")
        sp.add_argument("--p", type=int, required=True)

    sp = _verb(verbs, "family", cmd_family, "facts about one knot K_n")
    sp.add_argument(
        "what",
        choices=("params", "torus", "cf", "alexander", "tunnel", "report"),
    )
    sp.add_argument("--n", type=int, required=True)
    _add_verify(sp)

    sp = _verb(verbs, "census", cmd_census, "reports for a range of n")
    sp.add_argument("--from", dest="n_from", type=int, required=True)
    sp.add_argument("--to", dest="n_to", type=int, required=True)
    sp.add_argument("--output", default=None, metavar="PATH")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--cache", action="store_true", default=None)
    _add_verify(sp)

    return ap


def _overrides(args: Namespace) -> List[str]:
    """Explicit flags become the last configuration layer."""
    options = list(args.set or [])
    if args.format is not None and args.verb != "census":
        options.append(f"format={args.format}")
    if args.log_level is not None:
        options.append(f"log_level={args.log_level}")
    if getattr(args, "verify", None):
        options.append("verify=true")
    if getattr(args, "workers", None) is not None:
        options.append(f"census.workers={args.workers}")
    if getattr(args, "cache", None):
        options.append("census.cache=true")
    return options


def _write(output: Output, fmt: str, stream: IO[str]):
    if fmt == "json":
        if isinstance(output.data, list) and output.rows is not None:
            # JSON lines, one record per report
            for record in output.data:
                stream.write(_json(record) + "\n")
        else:
            stream.write(_json(output.data) + "\n")
    elif fmt == "csv":
        rows = output.rows or [{"value": output.text}]
        writer = csv.DictWriter(
            stream, fieldnames=list(rows[0]), lineterminator="\n"
        )
        writer.writeheader()
        writer.writerows(rows)
    elif output.rows is not None and isinstance(output.data, list):
        columns = list(output.rows[0])
        TableParser(console_kwargs={"width": 200})(
            columns=columns,
            values=[[row[c] for c in columns] for row in output.rows],
            file=stream,
        )
    else:
        stream.write(output.text + "\n")


def run(
    argv: Optional[Sequence[str]] = None, stdout: Optional[IO[str]] = None
) -> int:
    """Parse `argv`, run the verb and write its result to `stdout`.

    Returns 0 on success, 1 on a domain error or a failed cross-check under
    --verify, and 2 on a usage or configuration error."""

    stdout = stdout or sys.stdout
    stderr = Console(stderr=True, highlight=False)
    parser = make_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help and --version exit with 0, parse errors with 2
        return EXIT_OK if not e.code else EXIT_USAGE

    try:
        _, config = load_config(args.config, _overrides(args))
    except ConfigError as e:
        stderr.print(f"error: {e}", markup=False)
        return EXIT_USAGE

    configure_logging(
        logging_level="DEBUG" if args.debug else config.log_level,
        add_rich_traceback=False,
    )

    if args.options:
        TableParser()(
            columns=["Option", "Type", "Default", "Description"],
            values=options_table(),
            v_justify=["left", "center", "center", "left"],
            file=stdout,
        )
        return EXIT_OK
    if args.show_config:
        stdout.write(to_yaml(config))
        return EXIT_OK
    if args.verb is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    output_path = getattr(args, "output", None)
    if output_path is not None:
        try:
            validate_filepath(output_path, platform="auto")
        except PathValidationError as e:
            stderr.print(f"error: invalid output path: {e}", markup=False)
            return EXIT_USAGE
        if not Path(output_path).parent.is_dir():
            stderr.print(
                f"error: directory of {output_path} does not exist",
                markup=False,
            )
            return EXIT_USAGE

    if args.verb == "census":
        fmt = args.format or config.census.format
    else:
        fmt = config.format

    try:
        output = args.handler(args, config)
    except LensknotsError as e:
        stderr.print(f"error: {e.describe()}", markup=False)
        return EXIT_DOMAIN

    if output_path is not None:
        try:
            with open(output_path, "w", encoding="utf-8", newline="") as f:
                _write(output, fmt, f)
        except OSError as e:
            stderr.print(
                f"error: cannot write {output_path}: {e}", markup=False
            )
            return EXIT_DOMAIN
        LOGGER.info(f"Wrote {args.verb} output to {output_path}")
    else:
        buffer = io.StringIO()
        _write(output, fmt, buffer)
        stdout.write(buffer.getvalue())

    if output.failed and config.verify:
        stderr.print("error: a cross-check failed", markup=False)
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    add_pretty_traceback()
    sys.exit(run())
