"""Gram determinant volumes, the covariance-metric gap, and its decomposition.

For observables A_1..A_N and a regular function f, two Gram matrices are
compared: the covariance Gram {Cov(A_h, A_j)} and the metric-bound Gram
{Cov(A_h, A_j) - sum m_tilde(lam_u, lam_v) Re{a_uv b_vu}}, whose determinant
equals that of the scaled commutator inner products.  The gap between the
two determinants is conjectured (proved for N <= 2, and for N = 3 in the
real and structured cases) to be nonnegative, so the covariance ellipsoid
volume dominates the metric one.

The same gap admits an explicit decomposition as a positively-weighted sum
sum H * K over index tuples, which this module evaluates independently of
the determinant route as a cross-check oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .matrices import (
    DensityMatrix,
    as_hermitian,
    center,
    det_small,
    to_eigenframe,
)
from .metrics import MetricUndefinedError, metric_context
from .monotone import (
    MonotoneFunction,
    TildeUndefinedError,
    mean_table,
    scalar_mean,
    tilde,
    tilde_order,
)

MAX_OBSERVABLES = 8
DECOMPOSITION_MAX_DIM = 6
MAIN_INEQUALITY_SLACK = 1e-10
EQUALITY_RTOL = 1e-8
DEPENDENCE_SV_TOL = 1e-8
MONOTONICITY_SLACK = 1e-10

_PERMUTATIONS3 = tuple(itertools.permutations((0, 1, 2)))
_CYCLIC3 = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@dataclass(frozen=True)
class GramSpec:
    """A state, a tuple of observables, and a regular monotone function."""

    state: DensityMatrix
    observables: tuple
    function: MonotoneFunction

    def __post_init__(self):
        obs = tuple(np.asarray(o) for o in self.observables)
        object.__setattr__(self, "observables", obs)
        if not 1 <= len(obs) <= MAX_OBSERVABLES:
            raise ValueError(f"need 1..{MAX_OBSERVABLES} observables, got {len(obs)}")
        for o in obs:
            if o.shape != (self.state.dim, self.state.dim):
                raise ValueError(
                    f"observable shape {o.shape} does not match dim {self.state.dim}"
                )
        if not self.function.regular:
            raise TildeUndefinedError("gram volumes need a regular function")


@dataclass(frozen=True)
class VolumeReport:
    """Both Gram matrices, their determinants, and the gap between them."""

    cov_gram: np.ndarray
    qfi_gram: np.ndarray
    cov_det: float
    qfi_det: float
    gap: float
    robertson_det: float | None
    decomposition_gap: float | None


def grams_from_frames(eigenvalues, frames, tilde_table):
    """Covariance and metric-bound Gram matrices from eigenframe data."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    weights = 0.5 * (lam[:, None] + lam[None, :])
    n = len(frames)
    cov = np.empty((n, n))
    qfi = np.empty((n, n))
    for h in range(n):
        for j in range(h, n):
            overlap = np.real(frames[h] * frames[j].T)
            c = float(np.sum(weights * overlap))
            t = float(np.sum(tilde_table * overlap))
            cov[h, j] = cov[j, h] = c
            qfi[h, j] = qfi[j, h] = c - t
    return cov, qfi


def gram_matrices(state: DensityMatrix, observables, function: MonotoneFunction):
    ctx = metric_context(state, function)
    frames = [to_eigenframe(state, o) for o in observables]
    return grams_from_frames(state.eigenvalues, frames, ctx.mean_table_tilde)


def volume_gap(spec: GramSpec, *, with_decomposition: bool = False) -> VolumeReport:
    """Fill both Grams, both determinants, and the gap.

    The Robertson determinant is included for even observable counts.  The
    H*K decomposition is only computed on request; it is the expensive
    independent route and is restricted to N <= 3, faithful states, and
    dim <= 6.
    """
    cov, qfi = gram_matrices(spec.state, spec.observables, spec.function)
    cov_det = det_small(cov)
    qfi_det = det_small(qfi)
    n = len(spec.observables)
    rob = robertson_bound(spec.state, spec.observables) if n % 2 == 0 else None
    dec = gap_from_decomposition(spec) if with_decomposition else None
    return VolumeReport(cov, qfi, cov_det, qfi_det, cov_det - qfi_det, rob, dec)


def volume(spec: GramSpec, kind: str = "covariance") -> float:
    """sqrt(max(0, det)) of the chosen Gram matrix ('covariance' or 'qfi')."""
    if kind not in ("covariance", "qfi"):
        raise ValueError(f"kind must be 'covariance' or 'qfi', got {kind!r}")
    report = volume_gap(spec)
    det = report.cov_det if kind == "covariance" else report.qfi_det
    return math.sqrt(max(0.0, det))


def _half_square_gap(function: MonotoneFunction, u: float, v: float) -> float:
    # (u+v)/2 - m_tilde(u, v) in its cancellation-free form
    if u == v:
        return 0.0
    return function.value_at_zero * (u - v) ** 2 / (2.0 * scalar_mean(function, u, v))


def h_weight(function: MonotoneFunction, args) -> float:
    """H coefficient at 4 (order 2) or 6 (order 3) positive arguments.

    Evaluated as a sum of nonnegative products, using
    (u+v)/2 - m_tilde(u,v) = f(0)(u-v)^2 / (2 m_f(u,v)) for the gap factors,
    so the strict-positivity guarantee survives floating point even at
    extreme argument ratios where the direct product expansion cancels.
    """
    vals = [float(v) for v in args]
    if any(not (math.isfinite(v) and v > 0.0) for v in vals):
        raise ValueError(f"h_weight needs strictly positive finite arguments: {vals}")
    if not function.regular:
        raise TildeUndefinedError("h_weight needs a regular function")
    ft = tilde(function)
    if len(vals) == 4:
        x, y, w, z = vals
        m1 = scalar_mean(ft, x, y)
        m2 = scalar_mean(ft, w, z)
        d1 = _half_square_gap(function, x, y)
        d2 = _half_square_gap(function, w, z)
        return d1 * m2 + d2 * m1 + m1 * m2
    if len(vals) == 6:
        x, y, h, k, w, z = vals
        s1, s2, s3 = 0.5 * (x + y), 0.5 * (h + k), 0.5 * (w + z)
        m1 = scalar_mean(ft, x, y)
        m2 = scalar_mean(ft, h, k)
        m3 = scalar_mean(ft, w, z)
        d1 = _half_square_gap(function, x, y)
        d2 = _half_square_gap(function, h, k)
        d3 = _half_square_gap(function, w, z)
        return s1 * m3 * d2 + s3 * m2 * d1 + s2 * m1 * d3 + m1 * m2 * m3
    raise ValueError(f"h_weight takes 4 or 6 arguments, got {len(vals)}")


def k_coefficient(frames, indices) -> float:
    """K coefficient for 2 or 3 eigenframe matrices at a flat index tuple.

    For two frames (a, b) and indices (i, j, k, l) this is
    |a_ij|^2 |b_kl|^2 + |a_kl|^2 |b_ij|^2 - 2 Re{a_ij b_ji} Re{a_kl b_lk};
    for three frames the signed permutation sum over the three index pairs.
    """
    if len(indices) != 2 * len(frames):
        raise ValueError("need two indices per frame")
    pairs = [(int(indices[2 * i]), int(indices[2 * i + 1])) for i in range(len(frames))]
    if len(frames) == 2:
        a, b = frames
        (p1, p2) = pairs
        qa1, qa2 = abs(a[p1]) ** 2, abs(a[p2]) ** 2
        qb1, qb2 = abs(b[p1]) ** 2, abs(b[p2]) ** 2
        pab1 = float(np.real(a[p1] * b[p1[1], p1[0]]))
        pab2 = float(np.real(a[p2] * b[p2[1], p2[0]]))
        return qa1 * qb2 + qa2 * qb1 - 2.0 * pab1 * pab2
    if len(frames) == 3:
        a, b, c = frames
        q = [[float(abs(f[p]) ** 2) for p in pairs] for f in frames]

        def rev(f1, f2, p):
            return float(np.real(f1[p] * f2[p[1], p[0]]))

        pab = [rev(a, b, p) for p in pairs]
        pac = [rev(a, c, p) for p in pairs]
        pbc = [rev(b, c, p) for p in pairs]
        total = 0.0
        for s in _PERMUTATIONS3:
            total += q[0][s[0]] * q[1][s[1]] * q[2][s[2]]
            total += 2.0 * pac[s[0]] * pab[s[1]] * pbc[s[2]]
        for s in _CYCLIC3:
            total -= 2.0 * (
                q[0][s[0]] * pbc[s[1]] * pbc[s[2]]
                + q[1][s[0]] * pac[s[1]] * pac[s[2]]
                + q[2][s[0]] * pab[s[1]] * pab[s[2]]
            )
        return total
    raise ValueError("k_coefficient supports 2 or 3 frames")


def _axis3(vec: np.ndarray, axis: int) -> np.ndarray:
    shape = [1, 1, 1]
    shape[axis] = vec.size
    return vec.reshape(shape)


def k_grid(frames) -> np.ndarray:
    """All K coefficients over flattened index pairs (row-major (i, j)).

    Returns a P x P (order 2) or P x P x P (order 3) array with P = dim^2;
    entry [p1, p2(, p3)] is k_coefficient at those pairs.
    """
    flats = [np.asarray(f) for f in frames]
    if len(flats) == 2:
        a, b = flats
        qa = (np.abs(a) ** 2).reshape(-1)
        qb = (np.abs(b) ** 2).reshape(-1)
        pab = np.real(a * b.T).reshape(-1)
        return np.outer(qa, qb) + np.outer(qb, qa) - 2.0 * np.outer(pab, pab)
    if len(flats) == 3:
        a, b, c = flats
        qa = (np.abs(a) ** 2).reshape(-1)
        qb = (np.abs(b) ** 2).reshape(-1)
        qc = (np.abs(c) ** 2).reshape(-1)
        pab = np.real(a * b.T).reshape(-1)
        pac = np.real(a * c.T).reshape(-1)
        pbc = np.real(b * c.T).reshape(-1)
        out = np.zeros((qa.size,) * 3)
        for s in _PERMUTATIONS3:
            out += _axis3(qa, s[0]) * _axis3(qb, s[1]) * _axis3(qc, s[2])
            out += 2.0 * _axis3(pac, s[0]) * _axis3(pab, s[1]) * _axis3(pbc, s[2])
        for s in _CYCLIC3:
            out -= 2.0 * (
                _axis3(qa, s[0]) * _axis3(pbc, s[1]) * _axis3(pbc, s[2])
                + _axis3(qb, s[0]) * _axis3(pac, s[1]) * _axis3(pac, s[2])
                + _axis3(qc, s[0]) * _axis3(pab, s[1]) * _axis3(pab, s[2])
            )
        return out
    raise ValueError("k_grid supports 2 or 3 frames")


def gap_from_decomposition(spec: GramSpec) -> float:
    """The determinant gap evaluated through the explicit H*K sums.

    This is a genuinely independent route: the full quadruple/sextuple index
    sum is evaluated term by term (vectorized over the index grid), never
    through Gram determinants.  Requires N <= 3, a faithful state, and
    dim <= DECOMPOSITION_MAX_DIM to keep the grid small.
    """
    n = len(spec.observables)
    state = spec.state
    if n > 3:
        raise ValueError("decomposition is available for 1, 2, or 3 observables")
    if not state.faithful:
        raise MetricUndefinedError("decomposition requires a faithful state")
    if state.dim > DECOMPOSITION_MAX_DIM:
        raise ValueError(f"decomposition limited to dim <= {DECOMPOSITION_MAX_DIM}")
    lam = state.eigenvalues
    frames = [to_eigenframe(state, o) for o in spec.observables]
    tilde_tab = mean_table(tilde(spec.function), lam)
    if n == 1:
        return float(np.sum(tilde_tab * np.abs(frames[0]) ** 2))
    f_tab = mean_table(spec.function, lam)
    f0 = spec.function.value_at_zero
    gap_tab = f0 * (lam[:, None] - lam[None, :]) ** 2 / (2.0 * f_tab)
    s = (0.5 * (lam[:, None] + lam[None, :])).reshape(-1)
    d = gap_tab.reshape(-1)
    m = tilde_tab.reshape(-1)
    kv = k_grid(frames)
    if n == 2:
        hv = np.outer(d, m) + np.outer(m, d) + np.outer(m, m)
        return 0.5 * float(np.sum(hv * kv))
    hv = (
        _axis3(s, 0) * _axis3(m, 2) * _axis3(d, 1)
        + _axis3(d, 0) * _axis3(m, 1) * _axis3(s, 2)
        + _axis3(m, 0) * _axis3(s, 1) * _axis3(d, 2)
        + _axis3(m, 0) * _axis3(m, 1) * _axis3(m, 2)
    )
    return float(np.sum(hv * kv)) / 6.0


def robertson_bound(state: DensityMatrix, observables) -> float:
    """Determinant of the averaged commutator matrix; exactly 0 for odd N.

    The matrix entries are -(i/2) Tr(rho [A_h, A_j]), real and antisymmetric,
    so the determinant vanishes identically for odd N and gives the classical
    lower bound for even N.
    """
    n = len(observables)
    if n % 2 == 1:
        return 0.0
    mats = [as_hermitian(o) for o in observables]
    r = np.zeros((n, n))
    for h in range(n):
        for j in range(h + 1, n):
            t = complex(
                np.einsum("ij,ji->", state.matrix, mats[h] @ mats[j] - mats[j] @ mats[h])
            )
            r[h, j] = 0.5 * t.imag
            r[j, h] = -r[h, j]
    return det_small(r)


def observables_dependent(
    state: DensityMatrix, observables, tol: float = DEPENDENCE_SV_TOL
) -> bool:
    """Real-linear dependence of the centered observables.

    Stacks [Re, Im] vectorizations and thresholds the smallest singular
    value; self-adjoint matrices form a real vector space, so dependence is
    over real coefficients.
    """
    rows = []
    for o in observables:
        c = center(state, o)
        rows.append(np.concatenate([np.real(c).ravel(), np.imag(c).ravel()]))
    singular = np.linalg.svd(np.asarray(rows), compute_uv=False)
    return bool(singular[-1] < tol)


@dataclass(frozen=True)
class InequalityVerdict:
    """Outcome flags for one configuration; every outcome is data.

    candidate_counterexample mirrors (not main_holds): a negative gap beyond
    tolerance is recorded for later replay rather than raised, because for
    complex N = 3 inputs the inequality is an open conjecture.
    """

    report: VolumeReport
    scale: float
    main_holds: bool
    dependent: bool
    equality_consistent: bool
    monotonicity_holds: bool | None
    candidate_counterexample: bool


def check_inequalities(spec: GramSpec, partner: MonotoneFunction | None = None) -> InequalityVerdict:
    """Evaluate the volume inequality and its side conditions for one spec.

    main_holds:     gap >= -1e-10 * scale with scale = max(1, |cov_det|).
    dependent:      centered observables numerically dependent.
    equality_consistent: dependence implies |gap| <= 1e-8 * scale (the
                    proved direction of the equality characterization).
    monotonicity_holds: with a partner g, the qfi volumes respect every
                    grid-resolvable tilde ordering; None when incomparable.
    """
    report = volume_gap(spec)
    scale = max(1.0, abs(report.cov_det))
    main = bool(report.gap >= -MAIN_INEQUALITY_SLACK * scale)
    dependent = observables_dependent(spec.state, spec.observables)
    equality_ok = (not dependent) or abs(report.gap) <= EQUALITY_RTOL * scale
    mono: bool | None = None
    if partner is not None:
        order = tilde_order(spec.function, partner)
        vol_f = math.sqrt(max(0.0, report.qfi_det))
        partner_report = volume_gap(GramSpec(spec.state, spec.observables, partner))
        vol_g = math.sqrt(max(0.0, partner_report.qfi_det))
        checks = []
        if order.first_le_second:
            checks.append(vol_f >= vol_g - MONOTONICITY_SLACK)
        if order.second_le_first:
            checks.append(vol_g >= vol_f - MONOTONICITY_SLACK)
        mono = all(checks) if checks else None
    return InequalityVerdict(
        report=report,
        scale=scale,
        main_holds=main,
        dependent=dependent,
        equality_consistent=equality_ok,
        monotonicity_holds=mono,
        candidate_counterexample=not main,
    )


def hessian_generalized_variance(probabilities, x, y) -> np.ndarray:
    """Hessian of p -> Var_p(X) Var_p(Y) - Cov_p(X, Y)^2, unconstrained.

    Partial derivatives are taken in the ambient coordinates p_i without a
    simplex constraint; moments are linear in p, so second partials of the
    objective collect into the closed form below.  The result is symmetric
    and generally indefinite.
    """
    p = np.asarray(probabilities, dtype=np.float64)
    xv = np.asarray(x, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64)
    if p.ndim != 1 or xv.shape != p.shape or yv.shape != p.shape:
        raise ValueError("probabilities, x, y must be 1-d arrays of equal length")
    if np.any(p < 0.0):
        raise ValueError("probabilities must be nonnegative")
    if abs(float(p.sum()) - 1.0) > 1e-12:
        raise ValueError("probabilities must sum to 1 within 1e-12")
    ex = float(p @ xv)
    ey = float(p @ yv)
    var_x = float(p @ xv**2) - ex**2
    var_y = float(p @ yv**2) - ey**2
    cov = float(p @ (xv * yv)) - ex * ey
    u = xv**2 - 2.0 * ex * xv
    v = yv**2 - 2.0 * ey * yv
    w = xv * yv - ey * xv - ex * yv
    return (
        -2.0 * var_y * np.outer(xv, xv)
        - 2.0 * var_x * np.outer(yv, yv)
        + np.outer(u, v)
        + np.outer(v, u)
        - 2.0 * np.outer(w, w)
        + 2.0 * cov * (np.outer(xv, yv) + np.outer(yv, xv))
    )


def quadratic_form(matrix, vector) -> float:
    """v^T M v for a real matrix and vector."""
    m = np.asarray(matrix, dtype=np.float64)
    v = np.asarray(vector, dtype=np.float64)
    return float(v @ m @ v)
