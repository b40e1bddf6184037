"""Exact arithmetic in Z[X_n], X_n = 2cos(2pi/2^(n+2)), and periodic continued fractions for X_n."""

from .bounds import (BoundTable, NearestResult, bound_excludes, bound_row, bound_table, mu_target,
                     nearest_lattice, sign_vectors, unit_sign_pattern)
from .enumerator import (CONDITIONAL_NOTE, BoundsReport, ExponentVector, PointRecord, emit_points,
                         enumerate_units, generator_log_determinant, generators, points,
                         verify_bounds_theorem)
from .galois_embed import (EmbeddingContext, LogVector, embed, embed_extended, extended_index,
                           log_embedding, minkowski, sigma, sign_of, tau)
from .intervals import MAX_PRECISION, UndecidedError, default_precision, format_interval
from .pcf_core import (PCF, ConvergenceReport, DivergentError, Mat2, PCFValue, UnsupportedShapeError,
                       convergence_check, convergents, e_matrix, evaluate, parse_pcf, pell_identity_check,
                       truncated_value, variety_member)
from .tower_ring import (LevelMismatchError, NotInSubfieldError, RingElem, absolute_norm, cos_element,
                         descend, divides, exact_div, join, lift, minimal_poly, parse_elem, relative_norm,
                         tower_split)
from .units import (PellSolution, PreconditionError, RelUnit, delta, eta, eta_element, in_RE03, in_RE12,
                    pcf03_from_unit, pcf12_from_unit, pcf13, pell_map, rel_unit_from, unit_from_pcf03,
                    unit_from_pcf12)

__version__ = "0.1.0"
