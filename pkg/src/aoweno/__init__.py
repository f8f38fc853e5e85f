"""Finite-difference WENO schemes of adaptive order (AO(5,3), AON(5,3),
AO(5,4,3) and the JS, Z and ZQ baselines) for scalar laws and the Euler
equations in one and two dimensions."""

from aoweno.harness import convergence_study, error_norms, shock_comparison, simulate
from aoweno.problems import ProblemSpec, build
from aoweno.stencil import SchemeParams, Variant, reconstruct_interface, reconstruct_negative

__version__ = "0.1.0"

__all__ = (
    "SchemeParams", "Variant", "reconstruct_interface", "reconstruct_negative",
    "ProblemSpec", "build", "simulate", "error_norms", "convergence_study", "shock_comparison",
)
