"""Exact computations with Lie 2-bialgebras and Lie bialgebra crossed modules.

Structures are stored as dense Fraction tensors and as degree -4 elements of
the graded symmetric algebra S(V[2] + V*[1]) with its big bracket.
"""

from .bracket import big_bracket, composition_defect, jacobi_defect
from .crossed import (
    BialgebraCrossedModule,
    LieAlgebraCrossedModule,
    bcm_to_lie2bialgebra,
    lie2bialgebra_to_bcm,
    matched_pair_defects,
    quotient_construction,
    restrict_bialgebras,
    verify_bialgebra_cm,
    verify_crossed_module,
)
from .graded import Generator, Role, SpaceSpec
from .lie import LieBialgebra, verify_lie_bialgebra
from .report import Report
from .structures import (
    BialgebraElement,
    Lie2AlgebraData,
    Lie2CoalgebraData,
    verify_bialgebra,
    verify_weak_lie2_algebra,
    verify_weak_lie2_coalgebra,
)
from .symalg import SymElement, parse_element

__all__ = [
    "BialgebraCrossedModule", "BialgebraElement", "Generator", "Lie2AlgebraData", "Lie2CoalgebraData",
    "LieAlgebraCrossedModule", "LieBialgebra", "Report", "Role", "SpaceSpec", "SymElement",
    "bcm_to_lie2bialgebra", "big_bracket", "composition_defect", "jacobi_defect", "lie2bialgebra_to_bcm",
    "matched_pair_defects", "parse_element", "quotient_construction", "restrict_bialgebras",
    "verify_bialgebra", "verify_bialgebra_cm", "verify_crossed_module", "verify_lie_bialgebra",
    "verify_weak_lie2_algebra", "verify_weak_lie2_coalgebra",
]
