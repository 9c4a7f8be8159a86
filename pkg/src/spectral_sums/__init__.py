"""Eigenvalues of Schroedinger operators on intervals and flat tori, and
finite-truncation checks of eigenvalue-sum inequalities built on them."""

__version__ = "0.1.0"

from .interval_spectrum import BoundaryCondition, IntervalProblem, SpectrumResult, fd_oracle, solve
from .potential import FourierPotential, SampledPotential, Symmetry, TorusFourierPotential
from .torus_spectrum import Lattice, default_cutoff, eigenvalues_torus, enumerate_free

__all__ = [
    "BoundaryCondition",
    "FourierPotential",
    "IntervalProblem",
    "Lattice",
    "SampledPotential",
    "SpectrumResult",
    "Symmetry",
    "TorusFourierPotential",
    "default_cutoff",
    "eigenvalues_torus",
    "enumerate_free",
    "fd_oracle",
    "solve",
    "__version__",
]
