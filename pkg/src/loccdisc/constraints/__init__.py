from .basis import HermitianBasis, hermitian_basis
from .engine import (
    ConstraintSystem,
    RowLabel,
    SolutionSpace,
    check_pairwise_orthogonal,
    mixedness_constraints,
    op_constraints,
    solution_space,
)
from .verdict import (
    SideAnalysis,
    SideDims,
    Verdict,
    VerdictKind,
    analyze_side,
    condition_r_verdict,
    op_subsumption,
    psd_epsilon_range,
)

__all__ = [
    "HermitianBasis",
    "hermitian_basis",
    "ConstraintSystem",
    "RowLabel",
    "SolutionSpace",
    "check_pairwise_orthogonal",
    "mixedness_constraints",
    "op_constraints",
    "solution_space",
    "SideAnalysis",
    "SideDims",
    "Verdict",
    "VerdictKind",
    "analyze_side",
    "condition_r_verdict",
    "op_subsumption",
    "psd_epsilon_range",
]
