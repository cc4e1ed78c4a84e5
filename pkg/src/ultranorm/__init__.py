"""Exact nonarchimedean seminorms over explicitly constructed valued
fields: Gauss valuations, piecewise-linear norm profiles, Newton
polygons, and certificate-checked interval-completion counterexamples.

Every quantity is an element of Q + Q*sqrt(2) in base-2 log scale, so
all comparisons are exact; no floating point is used anywhere.
"""

from .errors import UltranormError
from .logval import INF, LogValue, ValueGroup, compare, divisible_closure_member, lv, parse_logvalue
from .fields import (FieldDescriptor, laurent_field, padic_field,
                     parse_descriptor, parse_element, element_to_text,
                     monomial, valuation, residue, invert)
from .ratfun import NewtonPolygon, Poly, RatFun, newton_polygon, recenter
from .gauss import (Dominance, GaussPoint, NormProfile, RadiusInterval,
                    gauss_valuation, norm_profile, profile_extrema,
                    ratfun_gauss, unit_obstruction)
from .models import (AnnulusElement, MultiVarElement, MultiVarRatio,
                     QSeriesElement, annulus_element, annulus_invert,
                     multivar_norm_data, multivar_norm_upper, project,
                     qseries, qseries_norm, qseries_spectral_ball,
                     qseries_unbounded_witness)
from .forge import (CenterSet, ForgeCertificate, ForgeSchedule,
                    ForcedFailureOracle, GaussIntervalOracle, MODE_EXAMPLE,
                    MODE_THEOREM, cauchy_invert, choose_centers,
                    interval_search, limit_table, make_schedule,
                    validate_schedule, verify_certificate)

__version__ = "0.1.0"
