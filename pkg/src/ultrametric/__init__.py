"""Exact non-archimedean analysis over Q and Q_p.

Valuations and the product formula, fixed-precision p-adic arithmetic,
Hensel/Newton lifting (univariate, multivariate, factor pairs), Sylvester
resultants, Newton polygons with slope factorization and Legendre duality,
truncated Tate series with Weierstrass preparation and Strassmann bounds,
and planar Newton polytopes with the Minkowski product law.

All arithmetic is exact: Fractions, big integers, and residues; valuations
are rationals in v-units (|x| = p**(-v), log base p).
"""

from .errors import UltrametricError
from .hensel import (
    MultiPadicSystem,
    PadicPolynomial,
    lift_factorization,
    newton_lift,
    newton_system,
    simple_root_lift,
)
from .padic import PadicNumber, digits, padic_ring_op, padic_sqrt, teichmuller
from .polygons import (
    NewtonPolygon,
    ValuedPoly,
    coleman_degree_bound,
    eisenstein_check,
    extension_valuation,
    legendre_dual,
    polygon,
    pure_slope_irreducible,
    root_valuations,
    slope_factorization,
    tropical_eval,
)
from .polytopes import (
    LatticePolygon,
    MultiPoly,
    gauss_norm_multi,
    indecomposable_hint,
    minkowski_sum,
    polytope2,
    support,
    tropical_eval_multi,
)
from .resultants import discriminant, resultant, resultant_mod
from .series import (
    TruncatedSeries,
    compose,
    divide_by_poly,
    exp_log_polygon_oracle,
    exp_series,
    gauss_norm_v,
    invert,
    is_unit,
    log_series,
    series_op,
    series_polygon,
    strassmann_bound,
    taylor_shift,
    weierstrass_prepare,
)
from .valuations import (
    INF,
    Infinity,
    Place,
    abs_at_place,
    digit_sum_base_p,
    is_prime,
    product_formula_check,
    vp,
    vp_factorial,
)

__version__ = "0.1.0"
