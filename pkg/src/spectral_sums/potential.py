"""Potentials on the interval (0, pi) and on flat tori.

Interval potentials are stored as cosine series

    q(x) = q_0 / 2 + sum_{k >= 1} q_k cos(k x),
    q_k  = (2 / pi) * integral_0^pi q(x) cos(k x) dx,

so that a constant potential ``c`` has ``q_0 = 2c``.  Every downstream
formula in the package uses this convention.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DomainError

_EVAL_SLACK = 1e-12


@dataclass(frozen=True)
class FourierPotential:
    """Finite cosine series on (0, pi); coefficients past ``max_index`` are zero.

    ``band_limited`` is False when the coefficients are a truncation of a
    longer series (for instance when they were computed from samples).
    """

    coeffs: tuple[float, ...]
    band_limited: bool = True
    meta: Mapping[str, object] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            coeffs = (0.0,)
        if not all(math.isfinite(c) for c in coeffs):
            raise DomainError("Fourier coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def constant(cls, c: float) -> FourierPotential:
        return cls((2.0 * c,))

    @classmethod
    def from_terms(cls, terms: Mapping[int, float], constant: float = 0.0) -> FourierPotential:
        """Build ``constant + sum_k terms[k] cos(k x)``."""
        top = max([0, *terms])
        coeffs = [0.0] * (top + 1)
        coeffs[0] = 2.0 * constant
        for k, value in terms.items():
            if k < 1:
                raise DomainError("cosine term indices start at 1; use `constant` for the mean")
            coeffs[k] += value
        return cls(tuple(coeffs))

    @property
    def max_index(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> float:
        if k < 0:
            raise DomainError(f"coefficient index must be non-negative, got {k}")
        return self.coeffs[k] if k < len(self.coeffs) else 0.0

    def coefficient_array(self, size: int) -> np.ndarray:
        """Coefficients ``q_0 .. q_{size-1}`` zero-padded past ``max_index``."""
        out = np.zeros(size)
        m = min(size, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def __call__(self, x):
        return eval_potential(self, x)

    def shifted(self, c: float) -> FourierPotential:
        coeffs = list(self.coeffs)
        coeffs[0] += 2.0 * c
        return FourierPotential(tuple(coeffs), self.band_limited, dict(self.meta))

    def scaled(self, factor: float) -> FourierPotential:
        return FourierPotential(
            tuple(factor * c for c in self.coeffs), self.band_limited, dict(self.meta)
        )

    def is_constant(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs[1:])

    def sample(self, grid: int) -> SampledPotential:
        nodes = np.linspace(0.0, math.pi, grid + 1)
        return SampledPotential(eval_potential(self, nodes))


@dataclass(frozen=True, eq=False)
class SampledPotential:
    """Values of a potential on the uniform closed grid of ``grid + 1`` nodes over [0, pi]."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        grid = values.size - 1
        if grid < 8 or grid % 2:
            raise DomainError(f"sampled potential needs an even number of intervals >= 8, got {grid}")
        if not np.all(np.isfinite(values)):
            raise DomainError("sampled potential values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, f: Callable[[np.ndarray], np.ndarray], grid: int) -> SampledPotential:
        nodes = np.linspace(0.0, math.pi, grid + 1)
        return cls(np.broadcast_to(np.asarray(f(nodes), dtype=float), nodes.shape))

    @property
    def grid(self) -> int:
        return self.values.size - 1

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, math.pi, self.grid + 1)

    @property
    def spacing(self) -> float:
        return math.pi / self.grid


def eval_potential(p: FourierPotential, x):
    """Evaluate the cosine series at ``x`` (scalar or array) in [0, pi]."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < -_EVAL_SLACK) or np.any(xs > math.pi + _EVAL_SLACK):
        raise DomainError("potential is defined on [0, pi] only")
    k = np.arange(1, len(p.coeffs))
    c = np.asarray(p.coeffs[1:])
    value = 0.5 * p.coeffs[0] + np.cos(np.multiply.outer(xs, k)) @ c
    return float(value) if xs.ndim == 0 else value


def _trapezoid_weights(grid: int) -> np.ndarray:
    w = np.full(grid + 1, math.pi / grid)
    w[0] = w[-1] = 0.5 * math.pi / grid
    return w


def fourier_coefficients(s: SampledPotential, max_index: int) -> FourierPotential:
    """Cosine coefficients ``q_0 .. q_max_index`` by the composite trapezoid rule.

    The rule is exact for cosine modes up to ``grid / 2``, which is why larger
    ``max_index`` values are rejected.  The returned ``meta`` carries an
    estimate of the O(grid^-2) quadrature error for smooth inputs.
    """
    if max_index < 0:
        raise DomainError("max_index must be non-negative")
    if max_index > s.grid // 2:
        raise DomainError(f"max_index {max_index} exceeds grid/2 = {s.grid // 2} (aliasing)")
    x = s.nodes
    w = _trapezoid_weights(s.grid) * s.values
    k = np.arange(max_index + 1)
    coeffs = (2.0 / math.pi) * (np.cos(np.multiply.outer(k, x)) @ w)

    h = s.spacing
    v = s.values
    slope_left = (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h)
    slope_right = (3 * v[-1] - 4 * v[-2] + v[-3]) / (2 * h)
    error_scale = (h * h / 12.0) * (2.0 / math.pi) * (abs(slope_left) + abs(slope_right))
    meta = {
        "source": "trapezoid",
        "grid": s.grid,
        "coefficient_error_bound": error_scale,
        "error_order": "grid^-2",
    }
    return FourierPotential(tuple(coeffs), band_limited=False, meta=meta)


def mean(p: FourierPotential) -> float:
    return 0.5 * p.coeffs[0]


def boundary_sum(p: FourierPotential) -> float:
    """``q(0) + q(pi)`` computed from the even coefficients, ``q_0 + 2 sum q_{2k}``.

    For a truncated (not band-limited) series this is the boundary sum of the
    truncation, not of the underlying function.
    """
    return p.coeffs[0] + 2.0 * math.fsum(p.coeffs[2::2])


class Symmetry(enum.Enum):
    DIRICHLET_FAVORABLE = "DirichletFavorable"
    NEUMANN_FAVORABLE = "NeumannFavorable"
    NEITHER = "Neither"
    BOTH = "Both"

    @property
    def allows_dirichlet(self) -> bool:
        return self in (Symmetry.DIRICHLET_FAVORABLE, Symmetry.BOTH)

    @property
    def allows_neumann(self) -> bool:
        return self in (Symmetry.NEUMANN_FAVORABLE, Symmetry.BOTH)


def slope_mismatch(s: SampledPotential) -> np.ndarray:
    """``q'(x) - q'(pi - x)`` at the grid nodes strictly inside (0, pi/2)."""
    v = s.values
    slope = np.empty_like(v)
    slope[1:-1] = (v[2:] - v[:-2]) / (2.0 * s.spacing)
    g = s.grid
    i = np.arange(1, g // 2)
    return slope[i] - slope[g - i]


def symmetry_classify(s: SampledPotential) -> Symmetry:
    """Sign test of ``q'(x) - q'(pi - x)`` on (0, pi/2) by centered differences."""
    if s.grid < 16:
        raise DomainError("symmetry classification needs grid >= 16")
    v = s.values
    slope = (v[2:] - v[:-2]) / (2.0 * s.spacing)
    tol = 1e-8 * (1.0 + float(np.max(np.abs(slope))))
    d = slope_mismatch(s)
    if np.all(np.abs(d) <= tol):
        return Symmetry.BOTH
    if np.all(d <= tol):
        return Symmetry.DIRICHLET_FAVORABLE
    if np.all(d >= -tol):
        return Symmetry.NEUMANN_FAVORABLE
    return Symmetry.NEITHER


def _as_index(beta) -> tuple[int, ...]:
    idx = tuple(int(b) for b in beta)
    if any(i != b for i, b in zip(idx, beta)):
        raise DomainError(f"dual-lattice index must be integral, got {beta!r}")
    return idx


@dataclass(frozen=True)
class TorusFourierPotential:
    """Finite Fourier potential ``q(x) = sum_beta qhat_beta exp(2 pi i beta^T W x)``.

    ``terms`` maps integer index vectors to complex coefficients; realness of
    ``q`` requires ``qhat_{-beta} = conj(qhat_beta)``.
    """

    terms: Mapping[tuple[int, ...], complex]

    def __post_init__(self):
        terms = {}
        dim = None
        for beta, value in dict(self.terms).items():
            idx = _as_index(beta)
            if dim is None:
                dim = len(idx)
            elif len(idx) != dim:
                raise DomainError("all torus potential indices must have the same dimension")
            value = complex(value)
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise DomainError("torus potential coefficients must be finite")
            if value != 0:
                terms[idx] = terms.get(idx, 0.0) + value
        scale = max([1.0, *(abs(v) for v in terms.values())])
        for idx, value in terms.items():
            partner = terms.get(tuple(-i for i in idx), 0.0)
            if abs(partner - value.conjugate()) > 1e-13 * scale:
                raise DomainError(
                    f"coefficient of {idx} is not conjugate to that of its negative; potential is not real"
                )
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_dim", dim)

    @classmethod
    def zero(cls) -> TorusFourierPotential:
        return cls({})

    @classmethod
    def single_mode(
        cls, beta: Sequence[int], amplitude: float, average: float = 0.0
    ) -> TorusFourierPotential:
        """``average + 2 * amplitude * cos(2 pi beta^T W x)``."""
        beta = _as_index(beta)
        terms: dict[tuple[int, ...], complex] = {}
        if average:
            terms[tuple(0 for _ in beta)] = average
        if any(beta):
            terms[beta] = amplitude
            terms[tuple(-b for b in beta)] = amplitude
        else:
            terms[beta] = terms.get(beta, 0.0) + 2.0 * amplitude
        return cls(terms)

    @property
    def dimension(self) -> int | None:
        return self._dim

    def coefficient(self, beta) -> complex:
        return self.terms.get(tuple(beta), 0.0)

    @property
    def average(self) -> float:
        """Mean of ``q`` over the torus: the real part of the zero-index coefficient."""
        for idx, value in self.terms.items():
            if not any(idx):
                return value.real
        return 0.0

    @property
    def max_index(self) -> int:
        return max([0, *(max(abs(i) for i in idx) for idx in self.terms)])


def potential_from_spec(spec: Mapping) -> FourierPotential | SampledPotential:
    """Decode ``{"type": "fourier", ...}`` or ``{"type": "sampled", ...}`` config objects."""
    kind = spec.get("type")
    if kind == "fourier":
        return FourierPotential(tuple(spec["coeffs"]))
    if kind == "sampled":
        values = spec["values"]
        grid = int(spec["grid"])
        if len(values) != grid + 1:
            raise DomainError(f"sampled potential with grid {grid} needs {grid + 1} values, got {len(values)}")
        return SampledPotential(np.asarray(values, dtype=float))
    raise DomainError(f"unknown potential type {kind!r}")


def torus_potential_from_spec(spec: Mapping) -> TorusFourierPotential:
    terms = {}
    for term in spec.get("terms", []):
        idx = _as_index(term["beta"])
        terms[idx] = terms.get(idx, 0.0) + complex(term.get("re", 0.0), term.get("im", 0.0))
    return TorusFourierPotential(terms)


def as_fourier(p: FourierPotential | SampledPotential, max_index: int | None = None) -> FourierPotential:
    """Fourier form of either potential kind; samples are transformed up to ``max_index``."""
    if isinstance(p, FourierPotential):
        return p
    if max_index is None:
        max_index = min(p.grid // 2, 128)
    return fourier_coefficients(p, max_index)
