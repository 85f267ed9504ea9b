from .commandline import run
from .config import LensknotsConfig, load_config
from .errors import (
    DegenerateEvaluation,
    InfiniteArithmetic,
    InvalidInput,
    LensknotsError,
)
from .exact import (
    INFINITY,
    ContinuedFraction,
    Rational,
    cf_eval,
    cf_expand,
    mod_inverse,
    quadratic_solutions,
)
from .family import (
    FamilyReport,
    census_scan,
    family_alexander,
    family_params,
    family_report,
    family_torus_knot,
    verify_cf_identity,
)
from .laurent import (
    CyclicPoly,
    LaurentPoly,
    correction_lift,
    cyclic_reduce,
    genus_from_alexander,
    lspace_form_check,
    tilde_constraints_check,
    torus_alexander,
)
from .lens import (
    LensSpace,
    LensSum,
    TwoBridge,
    berge_vii_classes,
    berge_viii_classes,
    equivalent_oriented,
    equivalent_unoriented,
    hedden_classes,
    hedden_hs_conditions,
    hsphere_surgery_classes,
    normalize,
    sum_equivalent,
)
from .logging import configure_logging
from .memoizer import memoize
from .seifert import (
    Pretzel,
    SeifertClass,
    SeifertKind,
    TangleSum,
    TunnelVerdict,
    Verdict,
    pretzel_double_cover,
    tangle_sum_double_cover,
    tunnel_verdict,
)
from .surgery import (
    Slope,
    SurgeryResult,
    involution_image,
    slope_distance,
    torus_knot_integral_surgery,
    unknot_surgery,
)
from .utils import get_version

__version__ = get_version()

__all__ = [
    "berge_vii_classes",
    "berge_viii_classes",
    "census_scan",
    "cf_eval",
    "cf_expand",
    "configure_logging",
    "ContinuedFraction",
    "correction_lift",
    "cyclic_reduce",
    "CyclicPoly",
    "DegenerateEvaluation",
    "equivalent_oriented",
    "equivalent_unoriented",
    "family_alexander",
    "family_params",
    "family_report",
    "family_torus_knot",
    "FamilyReport",
    "genus_from_alexander",
    "get_version",
    "hedden_classes",
    "hedden_hs_conditions",
    "hsphere_surgery_classes",
    "INFINITY",
    "InfiniteArithmetic",
    "InvalidInput",
    "involution_image",
    "LaurentPoly",
    "LensknotsConfig",
    "LensknotsError",
    "LensSpace",
    "LensSum",
    "load_config",
    "lspace_form_check",
    "memoize",
    "mod_inverse",
    "normalize",
    "Pretzel",
    "pretzel_double_cover",
    "quadratic_solutions",
    "Rational",
    "run",
    "SeifertClass",
    "SeifertKind",
    "Slope",
    "slope_distance",
    "sum_equivalent",
    "SurgeryResult",
    "tangle_sum_double_cover",
    "TangleSum",
    "tilde_constraints_check",
    "torus_alexander",
    "torus_knot_integral_surgery",
    "TunnelVerdict",
    "tunnel_verdict",
    "TwoBridge",
    "unknot_surgery",
    "Verdict",
    "verify_cf_identity",
]
