"""Seeded random potentials for the property batteries.

The seed comes from ``SPECTRAL_SUMS_SEED`` when set, so that a failing
battery can be replayed exactly.
"""

import os

import numpy as np

from .potential import FourierPotential, TorusFourierPotential

SEED_ENV = "SPECTRAL_SUMS_SEED"
DEFAULT_SEED = 20240531


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    value = os.environ.get(SEED_ENV)
    return int(value) if value not in (None, "") else default


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(seed_from_env() if seed is None else seed)


def band_limited(rng: np.random.Generator, max_index: int = 10, amplitude: float = 3.0) -> FourierPotential:
    """Cosine series with a random band ``1 <= M <= max_index`` and coefficients uniform in [-amplitude, amplitude]."""
    m = int(rng.integers(1, max_index + 1))
    return FourierPotential(tuple(rng.uniform(-amplitude, amplitude, m + 1)))


def single_mode(rng: np.random.Generator, dimension: int, max_index: int = 2, amplitude: float = 2.0,
                average: float = 0.0) -> TorusFourierPotential:
    """``average + 2 c cos(2 pi beta^T W x)`` with a random nonzero ``beta`` and ``c``."""
    while True:
        beta = rng.integers(-max_index, max_index + 1, dimension)
        if beta.any():
            break
    return TorusFourierPotential.single_mode(beta.tolist(), float(rng.uniform(-amplitude, amplitude)), average)
