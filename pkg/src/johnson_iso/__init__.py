"""Exact isoperimetric computations on the Johnson graph J(n,2)."""

from .boundary import (ExactRatio, VertexSet, boundary_direct, boundary_lemma,
                       fmt_ratio, iso_ratio, projection_profile)
from .candidate_sets import (f_prime, first_m, is_stable, last_m, lemma4_pair,
                             lemma5_pair, stable_closure)
from .closed_form import (closed_form_row, conjecture_gap, deviation, fp_stats,
                          iso_upper_bound, l_stats, lv_params, n_star, p_of,
                          q_of, ratio_Fp, ratio_L)
from .errors import (CapacityError, DomainError, JohnsonError, ParameterError,
                     RankRangeError, UnsupportedError)
from .johnson_core import (GraphParams, Vertex, adjacent, degree, dominates,
                           lex_compare, rank, reflect, unrank, vertex)
from .oracle import b_curve, bisection_bound, iso_exact, verify_ak, verify_lemma_sweep
from .scan_report import convergence_table, scan_conjecture

__version__ = "0.1.0"
