"""Dirichlet and Neumann eigenvalues of ``-u'' + q u`` on (0, pi).

The main route is a Galerkin (Rayleigh-Ritz) solve in the normalized free
eigenbasis, ``sqrt(2/pi) sin(kx)`` or ``sqrt(2/pi) cos(kx)`` (plus the constant
``1/sqrt(pi)`` for Neumann).  In that basis the potential matrix needs only
the cosine coefficients of ``q``:

    Dirichlet  H_jk = j^2 delta_jk + (q_|j-k| - q_{j+k}) / 2      j, k >= 1
    Neumann    H_jk = j^2 delta_jk + (q_|j-k| + q_{j+k}) / 2      j, k >= 1
               H_00 = q_0 / 2,   H_0k = q_k / sqrt(2)

Galerkin eigenvalues are upper bounds for the true ones and decrease as the
basis grows.  ``fd_oracle`` is an independent second-order finite-difference
check that shares nothing with the Galerkin path except the eigensolver.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InsufficientSpectrumError
from .potential import FourierPotential, SampledPotential, as_fourier
from .symmetric_eig import eigen_symmetric, lowest_tridiagonal

MIN_BASIS = 8


class BoundaryCondition(enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    @classmethod
    def parse(cls, value) -> BoundaryCondition:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown boundary condition {value!r}") from None

    @property
    def first_index(self) -> int:
        """Index of the lowest eigenvalue: lambda_1 for Dirichlet, mu_0 for Neumann."""
        return 1 if self is BoundaryCondition.DIRICHLET else 0


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    values: np.ndarray
    bc: object
    basis_size: int
    errors: np.ndarray
    method: str = "galerkin"
    vectors: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return self.values.size

    def require(self, count: int) -> None:
        if self.values.size < count:
            raise InsufficientSpectrumError(
                f"spectrum holds {self.values.size} eigenvalues, {count} needed"
            )


@dataclass(frozen=True)
class IntervalProblem:
    potential: FourierPotential
    bc: BoundaryCondition
    basis_size: int

    def __post_init__(self):
        object.__setattr__(self, "bc", BoundaryCondition.parse(self.bc))
        if self.basis_size < MIN_BASIS:
            raise DomainError(f"basis size must be at least {MIN_BASIS}, got {self.basis_size}")


def default_basis_size(count: int) -> int:
    return max(4 * count, count + 32)


def assemble_dirichlet(p: FourierPotential, basis_size: int) -> np.ndarray:
    """Galerkin matrix in the sine basis, modes 1..basis_size."""
    if basis_size < 1:
        raise DomainError("basis size must be positive")
    q = p.coefficient_array(2 * basis_size + 1)
    j = np.arange(1, basis_size + 1)
    h = 0.5 * (q[np.abs(j[:, None] - j[None, :])] - q[j[:, None] + j[None, :]])
    h[np.diag_indices(basis_size)] += j.astype(float) ** 2
    return h


def assemble_neumann(p: FourierPotential, basis_size: int) -> np.ndarray:
    """Galerkin matrix in the cosine basis, modes 0..basis_size (order basis_size + 1)."""
    if basis_size < 1:
        raise DomainError("basis size must be positive")
    q = p.coefficient_array(2 * basis_size + 1)
    j = np.arange(basis_size + 1)
    h = 0.5 * (q[np.abs(j[:, None] - j[None, :])] + q[j[:, None] + j[None, :]])
    h[0, 0] = 0.5 * q[0]
    h[0, 1:] = h[1:, 0] = q[1 : basis_size + 1] / math.sqrt(2.0)
    h[np.diag_indices(basis_size + 1)] += j.astype(float) ** 2
    return h


def assemble(p: FourierPotential, bc, basis_size: int) -> np.ndarray:
    bc = BoundaryCondition.parse(bc)
    if bc is BoundaryCondition.DIRICHLET:
        return assemble_dirichlet(p, basis_size)
    return assemble_neumann(p, basis_size)


def eigenvalues(prob: IntervalProblem, count: int, want_vectors: bool = False) -> SpectrumResult:
    """The ``count`` lowest eigenvalues with half-basis truncation-error estimates.

    Eigenvector columns (when requested) are coordinates in the normalized
    free basis, ordered by mode index.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    if count > prob.basis_size / 4:
        raise DomainError(
            f"count {count} exceeds basis_size/4 = {prob.basis_size / 4:g}; enlarge the basis"
        )
    full = eigen_symmetric(assemble(prob.potential, prob.bc, prob.basis_size), want_vectors)
    half = eigen_symmetric(assemble(prob.potential, prob.bc, prob.basis_size // 2))
    values = full.values[:count]
    errors = np.abs(half.values[:count] - values)
    meta = {"half_basis_size": prob.basis_size // 2}
    if want_vectors:
        meta["all_values"] = full.values
    return SpectrumResult(
        values=values.copy(),
        bc=prob.bc,
        basis_size=prob.basis_size,
        errors=errors,
        method="galerkin",
        vectors=full.vectors,
        meta=meta,
    )


def solve(
    p: FourierPotential | SampledPotential,
    bc,
    count: int,
    basis_size: int | None = None,
    want_vectors: bool = False,
) -> SpectrumResult:
    """Convenience wrapper: build the problem with the default basis policy and solve."""
    if basis_size is None:
        basis_size = default_basis_size(count)
    return eigenvalues(IntervalProblem(as_fourier(p), bc, basis_size), count, want_vectors)


def _fd_lowest(values_on_nodes: np.ndarray, bc: BoundaryCondition, count: int) -> np.ndarray:
    g = values_on_nodes.size - 1
    h = math.pi / g
    inv_h2 = 1.0 / (h * h)
    if bc is BoundaryCondition.DIRICHLET:
        diag = 2.0 * inv_h2 + values_on_nodes[1:-1]
        off = np.full(g - 2, -inv_h2)
    else:
        # mirror ghost nodes; symmetrized by scaling the end nodes by 1/sqrt(2)
        diag = 2.0 * inv_h2 + values_on_nodes
        off = np.full(g, -inv_h2)
        off[0] = off[-1] = -math.sqrt(2.0) * inv_h2
    return lowest_tridiagonal(diag, off, count)


def fd_oracle(
    p: FourierPotential | SampledPotential, bc, count: int, grid: int
) -> SpectrumResult:
    """Second-order finite differences on ``grid`` intervals.

    The error estimate is the difference from the ``grid/2`` solve, which for
    an O(h^2) scheme overestimates the error by a factor of about three.
    """
    bc = BoundaryCondition.parse(bc)
    if count < 1:
        raise DomainError("count must be at least 1")
    if grid < 64 * count:
        raise DomainError(f"grid {grid} too coarse for {count} eigenvalues (need >= {64 * count})")
    if grid % 2:
        raise DomainError("grid must be even")

    def nodal(g: int) -> np.ndarray:
        if isinstance(p, SampledPotential):
            if p.grid % g:
                raise DomainError(f"sampled grid {p.grid} is not a multiple of {g}")
            return np.asarray(p.values[:: p.grid // g])
        return p(np.linspace(0.0, math.pi, g + 1))

    if isinstance(p, SampledPotential) and p.grid != grid:
        raise DomainError(f"sampled potential has grid {p.grid}, requested {grid}")
    fine = _fd_lowest(nodal(grid), bc, count)
    coarse = _fd_lowest(nodal(grid // 2), bc, count)
    return SpectrumResult(
        values=fine,
        bc=bc,
        basis_size=grid,
        errors=np.abs(fine - coarse),
        method="finite-difference",
    )
