"""Finite-group cohomology, central extensions and Pin lifting obstructions.

Exact arithmetic throughout: multiplication tables for groups, integer
residues for cochains, rationals for orthogonal matrices and Clifford
algebra coefficients.
"""

from . import checks, cliff, cohom, errors, ext, grp, linalg, qmat, serialize, swc
from .cliff import CliffordElement, PinCocycleReport, pin_cocycles, pin_preimage, reflect_decompose
from .cohom import (
    Cochain1,
    CoeffHom,
    Coefficients,
    CohomClass,
    Cocycle2,
    Z,
    Z2,
    class_eq,
    cup11,
    express_poly,
    h1,
    h2,
    push,
    restrict,
)
from .errors import InputError, PincohomError
from .ext import (
    CentralExtension,
    LiftReport,
    baer_sum,
    conj_action,
    decide_lift,
    equivalent,
    from_cocycle,
    pullback,
    pushout,
    to_class,
    to_cocycle,
)
from .grp import FiniteGroup, GroupHom, OrthSpec, PermSpec, TableSpec, generate, identify
from .swc import OrthogonalRep, SWReport, lifting_report, rep_from_generators, w1, w2

__version__ = "0.1.0"
