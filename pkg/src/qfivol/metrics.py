"""Covariance, the monotone-metric inner product, and the f-correlation.

For a state with spectrum lam and eigenframe matrices a, b (centered
observables in the eigenbasis) the three central quantities are

* Cov(A, B)      = sum_{hj} (lam_h + lam_j)/2 * Re{a_hj b_jh},
* <X, Y>_f       = sum_{hj} Re{conj(x_hj) y_hj} / m_f(lam_h, lam_j),
* Corr_f(A, B)   = Cov(A, B) - sum_{hj} m_tilde_f(lam_h, lam_j) Re{a_hj b_jh},

and the two-route identity (f(0)/2) <i[rho,A], i[rho,B]>_f = Corr_f(A, B)
connects them for regular f on faithful states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import DensityMatrix, as_hermitian, icommutator, to_eigenframe
from .monotone import MonotoneFunction, TildeUndefinedError, mean_table, tilde


class MetricUndefinedError(ValueError):
    """The metric inner product needs a faithful state."""


@dataclass(frozen=True)
class MetricContext:
    """A state paired with precomputed scalar-mean tables for one function.

    ``mean_table_tilde`` is None for non-regular functions, which support
    the inner product but not the correlation route.
    """

    state: DensityMatrix
    function: MonotoneFunction
    mean_table_f: np.ndarray
    mean_table_tilde: np.ndarray | None


def metric_context(state: DensityMatrix, function: MonotoneFunction) -> MetricContext:
    table_f = mean_table(function, state.eigenvalues)
    table_t = (
        mean_table(tilde(function), state.eigenvalues) if function.regular else None
    )
    return MetricContext(state, function, table_f, table_t)


def _pair_weights(eigenvalues: np.ndarray) -> np.ndarray:
    return 0.5 * (eigenvalues[:, None] + eigenvalues[None, :])


def covariance(state: DensityMatrix, a, b) -> float:
    """Symmetrized covariance Re Tr(rho A0 B0); centers both arguments."""
    fa = to_eigenframe(state, a)
    fb = to_eigenframe(state, b)
    weights = _pair_weights(state.eigenvalues)
    return float(np.sum(weights * np.real(fa * fb.T)))


def mean_superop_apply(ctx: MetricContext, observable, use_tilde: bool = False) -> np.ndarray:
    """Apply the scalar-mean multiplier to a centered observable.

    In the eigenframe each entry (h, j) is scaled by the mean of lam_h and
    lam_j; the result is mapped back to the original basis and exactly
    symmetrized.  With use_tilde=False and [rho, A] = 0 this returns rho A0.
    """
    table = ctx.mean_table_tilde if use_tilde else ctx.mean_table_f
    if table is None:
        raise TildeUndefinedError(
            f"tilde mean table undefined for non-regular {ctx.function.fid}"
        )
    frame = to_eigenframe(ctx.state, observable)
    u = ctx.state.eigenvectors
    out = u @ (table * frame) @ u.conj().T
    return (out + out.conj().T) / 2


def qfi_inner(ctx: MetricContext, x, y) -> float:
    """Monotone-metric inner product of two self-adjoint tangent vectors.

    The arguments are used as given (no centering); the intended inputs are
    commutators i[rho, A].  Requires a faithful state, otherwise the mean
    table has zero entries and the sum is undefined.
    """
    if not ctx.state.faithful:
        raise MetricUndefinedError("qfi inner product requires a faithful state")
    u = ctx.state.eigenvectors
    fx = u.conj().T @ as_hermitian(x) @ u
    fy = u.conj().T @ as_hermitian(y) @ u
    return float(np.sum(np.real(np.conj(fx) * fy) / ctx.mean_table_f))


def f_correlation(ctx: MetricContext, a, b) -> float:
    """Covariance minus the tilde-mean weighted frame overlap.

    Defined for any state (zero eigenvalues contribute exact zeros through
    the tilde table) but only for regular functions.  For pure states the
    subtracted sum vanishes and the correlation equals the covariance.
    """
    if ctx.mean_table_tilde is None:
        raise TildeUndefinedError(
            f"f-correlation undefined for non-regular {ctx.function.fid}"
        )
    fa = to_eigenframe(ctx.state, a)
    fb = to_eigenframe(ctx.state, b)
    overlap = np.real(fa * fb.T)
    cov = float(np.sum(_pair_weights(ctx.state.eigenvalues) * overlap))
    return cov - float(np.sum(ctx.mean_table_tilde * overlap))


def identity_residual(ctx: MetricContext, a, b) -> float:
    """Absolute difference between the two routes to the correlation.

    Route one scales the inner product of the commutators by f(0)/2; route
    two is the tilde form computed by f_correlation.  Requires a faithful
    state and a regular function.
    """
    direct = 0.5 * ctx.function.value_at_zero * qfi_inner(
        ctx, icommutator(ctx.state, a), icommutator(ctx.state, b)
    )
    return abs(direct - f_correlation(ctx, a, b))
