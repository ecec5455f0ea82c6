"""Exact dual plane curves, line sections, GIT stability of binary forms,
root-path lifting and integral-point diagnostics for dual complements."""

__version__ = "0.1.0"

from .errors import DualscopeError
from .polycore import (ExactPoly, parse_poly, resultant, gcd, squarefree_decompose,
                       squarefree_part, is_squarefree)
from .binaryform import (BinaryForm, MultiplicityPartition, multiplicity_partition,
                         git_classify, fiber_shape, parse_form)
from .dualgeom import (LineCoords, ParametricCurve, ImplicitCurve, parse_curve,
                       dual_parametrization, implicitize, dual_implicit, dual_form,
                       line_section, dual_membership, smoothly_branched_check,
                       high_tangency_scan)
from .proxlift import (SpherePoint, MarkedConfig, FlatTorus, roots_numeric, cross_ratio,
                       prox_p1, prox_torus, degenerating_path, lift_path, verify_lift,
                       prox_limit_experiment)
from .hypcheck import Verdict, genus_of, check_hyperbolicity
from .intsearch import SearchSpec, SearchReport, s_unit_search
