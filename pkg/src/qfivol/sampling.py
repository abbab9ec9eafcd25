"""Deterministic random ensembles for states and observables.

Every draw is derived from ``SeedSequence(seed, spawn_key=(index, channel))``
where ``channel`` separates the state stream from the observable stream.
The same (seed, dim, ensemble, index) therefore always yields bit-identical
output, independent of call order, process, or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import DensityMatrix

ENSEMBLES = (
    "complex-hermitian",
    "real-symmetric",
    "density",
    "real-density",
    "pauli-like-structured",
)

STATE_CHANNEL = 0
OBSERVABLE_CHANNEL = 1
PURE_CHANNEL = 2

MIN_DIM = 2
MAX_DIM = 8

# floor added to squared gaussians for structured spectra; keeps the diagonal
# state comfortably faithful so downstream divisions stay well conditioned
STRUCTURED_SPECTRUM_FLOOR = 0.05


@dataclass(frozen=True)
class RandomSpec:
    """Identifies a reproducible stream of random draws."""

    seed: int
    dim: int
    ensemble: str

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise ValueError(
                f"unknown ensemble {self.ensemble!r}; expected one of {ENSEMBLES}"
            )
        if not MIN_DIM <= self.dim <= MAX_DIM:
            raise ValueError(f"dim must be in [{MIN_DIM}, {MAX_DIM}], got {self.dim}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


def _rng(seed: int, index: int, channel: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(index), int(channel)))
    return np.random.default_rng(ss)


def _complex_gaussian(rng, dim):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def _hermitian_draw(rng, dim, real):
    m = rng.standard_normal((dim, dim)) if real else _complex_gaussian(rng, dim)
    return (m + m.conj().T) / 2


def _ginibre_density(rng, dim, real):
    g = rng.standard_normal((dim, dim)) if real else _complex_gaussian(rng, dim)
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def _structured_spectrum(rng, dim):
    g = rng.standard_normal(dim) ** 2 + STRUCTURED_SPECTRUM_FLOOR
    return g / g.sum()


def sample_state(spec: RandomSpec, index: int) -> DensityMatrix:
    """State draw for the ensemble's state stream.

    complex-hermitian/density use a complex Ginibre state, the real ensembles
    a real one, and pauli-like-structured a diagonal state with a floored
    random spectrum (the structured positivity result assumes a diagonal,
    faithful state).
    """
    rng = _rng(spec.seed, index, STATE_CHANNEL)
    if spec.ensemble in ("complex-hermitian", "density"):
        return _ginibre_density(rng, spec.dim, real=False)
    if spec.ensemble in ("real-symmetric", "real-density"):
        return _ginibre_density(rng, spec.dim, real=True)
    return DensityMatrix(np.diag(_structured_spectrum(rng, spec.dim)))


def sample_observables(spec: RandomSpec, index: int, count: int) -> tuple[np.ndarray, ...]:
    """Observable draws for one sample.

    For pauli-like-structured the count must be 3 and the result is the
    (A, B, C) triple: A an arbitrary complex Hermitian matrix, B Hermitian
    with zero diagonal, C real diagonal.
    """
    if count < 1:
        raise ValueError("count must be positive")
    rng = _rng(spec.seed, index, OBSERVABLE_CHANNEL)
    if spec.ensemble == "pauli-like-structured":
        if count != 3:
            raise ValueError("the structured ensemble draws exactly 3 observables")
        a = _hermitian_draw(rng, spec.dim, real=False)
        b = _hermitian_draw(rng, spec.dim, real=False)
        np.fill_diagonal(b, 0.0)
        c = np.diag(rng.standard_normal(spec.dim))
        return (a, b, c)
    real = spec.ensemble in ("real-symmetric", "real-density")
    return tuple(_hermitian_draw(rng, spec.dim, real) for _ in range(count))


def sample(spec: RandomSpec, index: int):
    """One draw from the ensemble.

    Density ensembles yield a DensityMatrix, the Hermitian/symmetric
    ensembles one observable, and pauli-like-structured the (A, B, C) triple.
    """
    if spec.ensemble in ("density", "real-density"):
        return sample_state(spec, index)
    if spec.ensemble == "pauli-like-structured":
        return sample_observables(spec, index, 3)
    return sample_observables(spec, index, 1)[0]


def sample_pure_state(seed: int, dim: int, index: int) -> DensityMatrix:
    """Rank-1 projector onto a normalized complex Gaussian vector."""
    rng = _rng(seed, index, PURE_CHANNEL)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()))
