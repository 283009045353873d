"""Energy-stable, low-stiffness SBP-SAT discretization of the
variable-coefficient Laplacian on curvilinear multiblock grids."""

__version__ = "0.1.0"

from .sbp1d import OperatorSet1D, build_sbp_1d, verify_operator_set

__all__ = [
    "OperatorSet1D",
    "build_sbp_1d",
    "verify_operator_set",
    "__version__",
]
