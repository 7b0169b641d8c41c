"""Exact L2-Betti numbers, Novikov-Shubin invariants and L2-torsion of
locally symmetric spaces of noncompact type, with a numeric harness."""

from .catalog import (
    Hn,
    SLnR,
    SOpq,
    Space,
    SpaceData,
    SpaceDescriptor,
    dual_euler_char,
    fundamental_rank,
    parse_descriptor,
    resolve,
    resolve_space,
)
from .errors import DescriptorError, QuadratureError, UnsupportedMetric, UnsupportedSpace
from .exact import PiScalar, Polynomial, format_scalar, integrate_polynomial, parse_scalar
from .invariants import (
    INF_PLUS,
    InvariantReport,
    NSValue,
    betti_profile,
    density_polynomials,
    dual_volume,
    formal_degree,
    full_report,
    ns_profile,
    plancherel_constant,
    q_invariant,
    quotient_torsion,
    t2,
)
from .roots import RootSystem, build_root_system, root_product, weyl_dimension, weyl_order

__version__ = "0.1.0"
