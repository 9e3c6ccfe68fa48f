"""Exact Ising partition polynomials of cubic maps, genus by genus."""
from .exact_poly import Poly, TSeries
from .kernels import available as available_backends
from .solver import (SolveState, compute_up_to, partition_polynomial, pde_residual,
                     rooted_polynomial)

__all__ = ["Poly", "TSeries", "SolveState", "compute_up_to", "partition_polynomial",
           "rooted_polynomial", "pde_residual", "available_backends"]
__version__ = "0.1.0"
