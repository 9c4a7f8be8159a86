"""Spectra of ``-Laplace + q`` on flat tori ``R^N / Gamma``.

For spanning vectors ``v_1..v_N`` the dual rows ``w_j`` satisfy
``(w_j, v_k) = delta_jk``.  Free eigenfunctions are ``exp(2 pi i alpha^T W x)``
for integer ``alpha`` with eigenvalue ``4 pi^2 |W^T alpha|^2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceGuardError
from .interval_spectrum import SpectrumResult
from .potential import TorusFourierPotential
from .symmetric_eig import MAX_ORDER, eigen_hermitian, eigen_symmetric

FOUR_PI2 = 4.0 * math.pi**2


def dual_basis(vectors) -> np.ndarray:
    """Matrix ``W`` whose rows are the dual vectors, i.e. ``W V^T = I``."""
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    n = v.shape[0]
    if v.shape != (n, n):
        raise DomainError(f"need N spanning vectors of length N, got array of shape {v.shape}")
    scale = float(np.prod(np.linalg.norm(v, axis=1)))
    if scale == 0.0 or abs(np.linalg.det(v)) <= 1e-12 * scale:
        raise DomainError("spanning vectors are (numerically) linearly dependent")
    # numpy.linalg.solve is LU with partial pivoting
    w = np.linalg.solve(v, np.eye(n)).T
    residual = np.max(np.abs(w @ v.T - np.eye(n)))
    if residual > 1e-12 * max(1.0, float(np.max(np.abs(w))) * float(np.max(np.abs(v)))):
        raise DomainError(f"dual basis residual {residual:.3g} too large; lattice is ill-conditioned")
    return w


@dataclass(frozen=True, eq=False)
class Lattice:
    vectors: np.ndarray
    dual: np.ndarray = field(init=False)

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "dual", dual_basis(v))

    @classmethod
    def circle(cls, radius: float = 1.0) -> Lattice:
        """The circle of length ``2 pi radius``; free eigenvalues ``(n / radius)^2``."""
        return cls([[2.0 * math.pi * radius]])

    @classmethod
    def square(cls, dimension: int = 2, side: float = 2.0 * math.pi) -> Lattice:
        return cls(side * np.eye(dimension))

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]

    def free_eigenvalue(self, alpha) -> float:
        k = np.asarray(alpha, dtype=float) @ self.dual
        return FOUR_PI2 * float(k @ k)

    def free_eigenvalues(self, alphas: np.ndarray) -> np.ndarray:
        k = np.asarray(alphas, dtype=float) @ self.dual
        return FOUR_PI2 * np.einsum("ij,ij->i", k, k)

    def sigma_min(self) -> float:
        """Smallest singular value of ``W^T``, via the eigenvalues of ``W W^T``."""
        w = self.dual
        return math.sqrt(max(float(eigen_symmetric(w @ w.T).values[0]), 0.0))


@dataclass(frozen=True, eq=False)
class FreeSpectrum:
    values: np.ndarray
    indices: np.ndarray  # row i is the alpha paired with values[i]
    box_radius: int

    def __len__(self):
        return self.values.size


def _box(radius: int, dimension: int) -> np.ndarray:
    r = range(-radius, radius + 1)
    return np.array(list(itertools.product(r, repeat=dimension)), dtype=np.int64).reshape(-1, dimension)


def _sorted_by_value(lat: Lattice, alphas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values = lat.free_eigenvalues(alphas)
    # group values equal to ~12 digits, then break ties lexicographically on alpha
    key = np.round(values / FOUR_PI2, 10)
    order = np.lexsort(tuple(alphas[:, j] for j in reversed(range(alphas.shape[1]))) + (key,))
    return values[order], alphas[order]


def enumerate_free(lat: Lattice, count: int) -> FreeSpectrum:
    """The ``count`` smallest free eigenvalues with multiplicity, certified complete.

    Every ``alpha`` outside the box ``|alpha|_inf <= R`` has
    ``lambda_alpha >= 4 pi^2 sigma_min^2 (R+1)^2``, so once the candidate
    cutoff lies strictly below that bound nothing can have been missed.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    n = lat.dimension
    sigma2 = lat.sigma_min() ** 2
    radius = max(1, math.ceil((count ** (1.0 / n) - 1) / 2))
    while True:
        values, alphas = _sorted_by_value(lat, _box(radius, n))
        if values.size >= count:
            cutoff = values[count - 1]
            outside = FOUR_PI2 * sigma2 * (radius + 1) ** 2
            if cutoff < outside * (1 - 1e-12):
                return FreeSpectrum(values[:count].copy(), alphas[:count].copy(), radius)
        radius *= 2


def free_plus_average(lat: Lattice, qbar: float, count: int) -> np.ndarray:
    """Spectrum of the constant potential ``qbar``: ``lambda_k(0) + qbar``, k = 0..count-1."""
    return enumerate_free(lat, count).values + qbar


def plane_wave_count(dimension: int, cutoff: int) -> int:
    return (2 * cutoff + 1) ** dimension


def torus_hamiltonian(lat: Lattice, p: TorusFourierPotential, cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian Galerkin matrix ``lambda_alpha delta + qhat_{alpha - alpha'}`` over the index box."""
    alphas = _box(cutoff, lat.dimension)
    h = np.diag(lat.free_eigenvalues(alphas)).astype(complex)
    position = {tuple(a): i for i, a in enumerate(alphas.tolist())}
    for beta, value in p.terms.items():
        for j, a in enumerate(alphas.tolist()):
            i = position.get(tuple(x + b for x, b in zip(a, beta)))
            if i is not None:
                h[i, j] += value
    return h, alphas


def default_cutoff(lat: Lattice, p: TorusFourierPotential, count: int) -> int:
    """Cutoff whose half-size box still holds the ``count`` lowest free modes and resolves ``q``."""
    free = enumerate_free(lat, count)
    cutoff = max(2 * p.max_index, 4, 2 * int(np.max(np.abs(free.indices))))
    return max(cutoff, 16) if lat.dimension == 1 else cutoff


def eigenvalues_torus(
    lat: Lattice, p: TorusFourierPotential, count: int, cutoff: int
) -> SpectrumResult:
    """Lowest ``count`` eigenvalues by plane-wave Galerkin on ``|alpha|_inf <= cutoff``.

    The error estimate is the change from a solve with half the cutoff.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    if p.dimension is not None and p.dimension != lat.dimension:
        raise DomainError(f"potential dimension {p.dimension} does not match lattice dimension {lat.dimension}")
    if 2 * p.max_index > cutoff:
        raise DomainError(f"potential index {p.max_index} exceeds cutoff/2 = {cutoff / 2:g}")
    waves = plane_wave_count(lat.dimension, cutoff)
    if 2 * waves > MAX_ORDER:
        raise ResourceGuardError(
            f"{waves} plane waves embed to order {2 * waves} > {MAX_ORDER}; lower the cutoff"
        )
    half_cutoff = cutoff // 2
    if plane_wave_count(lat.dimension, half_cutoff) < count:
        raise DomainError(f"cutoff {cutoff} is too small for {count} eigenvalues")
    full = eigen_hermitian(torus_hamiltonian(lat, p, cutoff)[0])
    half = eigen_hermitian(torus_hamiltonian(lat, p, half_cutoff)[0])
    values = full[:count]
    return SpectrumResult(
        values=values.copy(),
        bc="periodic",
        basis_size=waves,
        errors=np.abs(half[:count] - values),
        method="plane-wave",
        meta={"cutoff": cutoff, "half_cutoff": half_cutoff},
    )
