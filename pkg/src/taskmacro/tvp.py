"""Time-varying-coefficient regression for the benefit policy rule.

The observation equation regresses the benefits-to-productivity ratio on an
intercept, lagged unemployment, and ``p`` of its own lags; every coefficient
follows an independent random walk. Estimation is Bayesian: a Kalman filter
and backward simulation smoother draw coefficient paths, and a Gibbs sampler
alternates those path draws with conjugate inverse-gamma variance draws.

Inverse-gamma convention: a variance prior written as ``IG(nu, s)`` here
means shape ``nu / 2`` and scale ``s``, so its mean is ``s / (nu / 2 - 1)``.
With the default ``nu = 5`` and ``s = (nu / 2 - 1) * 0.01 ** 2`` the prior
mean of the observation variance is exactly ``0.01 ** 2``. The convention is
stated because the (nu, s) notation alone does not pin it down.

The numerical kernels are JIT-compiled with numba when available and fall
back to the identical pure-Python code otherwise. All randomness is drawn
from a ``numpy.random.Generator`` outside the kernels in a fixed order, so
results are bit-for-bit reproducible for a given seed either way.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


class ConditioningError(RuntimeError):
    """A covariance lost positive semidefiniteness beyond tolerance."""


class SamplerDivergenceError(RuntimeError):
    """Variance draws overflowed; the message carries a trace excerpt."""


_LOG_2PI = math.log(2.0 * math.pi)
_EIG_FLOOR = -1e-10
_DIVERGENCE_CAP = 1e10

# status codes returned by the kernels (exceptions cannot cross the JIT
# boundary with dynamic messages)
_OK = 0
_BAD_INNOVATION = 1
_BAD_EIGENVALUE = 2


# ---------------------------------------------------------------------------
# model container and priors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TVPPriors:
    """Prior hyperparameters for the coefficient paths and variances.

    ``beta0_mean``/``m0_scale`` set the Gaussian prior on the initial
    coefficients. ``nu_obs``/``s_obs`` and ``nu_state``/``s_state`` are the
    inverse-gamma priors (in the convention documented in the module
    docstring) for the observation variance and the per-coefficient
    random-walk innovation variances.
    """

    beta0_mean: np.ndarray
    m0_scale: float
    nu_obs: float
    s_obs: float
    nu_state: float
    s_state: np.ndarray

    @staticmethod
    def default(n_coefficients: int, p: int) -> "TVPPriors":
        """Diffuse-initial, tight-innovation defaults.

        The state innovation scale vector is built from the base standard
        deviations (0.1 for the intercept, 0.01 for the unemployment slope
        and the first own lag, 0.05 for further own lags), squared and
        multiplied by ``nu / 2 - 1`` so each prior mean equals the squared
        base value.
        """
        nu = 5.0
        base_sd = [0.1, 0.01, 0.01] + [0.05] * max(p - 1, 0)
        base = np.asarray(base_sd[:n_coefficients], dtype=float) ** 2
        return TVPPriors(
            beta0_mean=np.zeros(n_coefficients),
            m0_scale=0.5,
            nu_obs=nu,
            s_obs=(nu / 2.0 - 1.0) * 0.01**2,
            nu_state=nu,
            s_state=(nu / 2.0 - 1.0) * base,
        )


@dataclass(frozen=True)
class TVPModel:
    """Aligned regression sample for the time-varying policy equation."""

    y: np.ndarray
    X: np.ndarray
    names: tuple[str, ...]
    p: int
    priors: TVPPriors
    dates: tuple[str, ...] | None = None

    @property
    def n_obs(self) -> int:
        return self.y.shape[0]

    @property
    def n_coefficients(self) -> int:
        return self.X.shape[1]

    @property
    def lag_columns(self) -> slice:
        """Columns holding the dependent variable's own lags."""
        return slice(2, 2 + self.p)


def make_model(
    benefits_ratio: Sequence[float] | np.ndarray,
    unemployment: Sequence[float] | np.ndarray,
    p: int = 1,
    priors: TVPPriors | None = None,
    dates: Sequence[str] | None = None,
) -> TVPModel:
    """Build the aligned regressor matrix for the policy equation.

    Row ``t`` regresses the period-``t`` benefits ratio on an intercept, the
    period ``t - 1`` unemployment rate, and the ratio's own lags ``1..p``.
    The first ``max(p, 1)`` periods are consumed to form lags.
    """
    y_raw = np.asarray(benefits_ratio, dtype=float)
    u_raw = np.asarray(unemployment, dtype=float)
    if y_raw.ndim != 1 or u_raw.ndim != 1 or y_raw.shape != u_raw.shape:
        raise ValueError("benefits_ratio and unemployment must be equal-length 1-D")
    if p < 0:
        raise ValueError(f"lag order must be nonnegative, got {p}")
    start = max(p, 1)
    n = y_raw.shape[0]
    if n - start < 2 + p + 1:
        raise ValueError(
            f"sample of {n} observations is too short for lag order {p}"
        )
    y = y_raw[start:]
    columns = [np.ones(n - start), u_raw[start - 1 : n - 1]]
    names = ["intercept", "u_lag1"]
    for lag in range(1, p + 1):
        columns.append(y_raw[start - lag : n - lag])
        names.append(f"y_lag{lag}")
    X = np.column_stack(columns)
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise ConditioningError(
            "regressor matrix is rank deficient over the sample; "
            "the coefficient paths are not identified"
        )
    if priors is None:
        priors = TVPPriors.default(X.shape[1], p)
    if priors.beta0_mean.shape[0] != X.shape[1] or priors.s_state.shape[0] != X.shape[1]:
        raise ValueError("prior vector lengths do not match the coefficient count")
    kept_dates = tuple(dates[start:]) if dates is not None else None
    return TVPModel(y=y, X=X, names=tuple(names), p=p, priors=priors, dates=kept_dates)


def load_policy_series(path: str | Path) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Read (date, benefits_ratio, unemployment) rows from a delimited file."""
    from .empirics import DataError

    path = Path(path)
    dates: list[str] = []
    y: list[float] = []
    u: list[float] = []
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise DataError(f"{path}: file is empty")
        for column in ("date", "benefits_ratio", "unemployment"):
            if column not in reader.fieldnames:
                raise DataError(f"{path}: missing column '{column}'")
        for record in reader:
            lineno = reader.line_num
            dates.append((record.get("date") or "").strip())
            for column, bucket in (("benefits_ratio", y), ("unemployment", u)):
                raw = (record.get(column) or "").strip()
                try:
                    bucket.append(float(raw))
                except ValueError:
                    raise DataError(
                        f"{path}:{lineno}: column '{column}': "
                        f"cannot parse {raw!r} as a number"
                    ) from None
    if not y:
        raise DataError(f"{path}: no data rows")
    return dates, np.asarray(y), np.asarray(u)


# ---------------------------------------------------------------------------
# kernels (JIT-compiled when numba is present)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _filter_core(y, X, h_obs, q_state, b0, p0_diag):
    """Forward recursion for the random-walk-coefficient state space."""
    T, k = X.shape
    means = np.zeros((T, k))
    covs = np.zeros((T, k, k))
    m = b0.copy()
    P = np.zeros((k, k))
    for i in range(k):
        P[i, i] = p0_diag[i]
    loglik = 0.0
    for t in range(T):
        for i in range(k):
            P[i, i] += q_state[i]
        x = X[t]
        Px = P @ x
        S = x @ Px + h_obs
        if S <= 0.0 or not np.isfinite(S):
            return means, covs, -np.inf, _BAD_INNOVATION
        v = y[t] - x @ m
        K = Px / S
        m = m + K * v
        for i in range(k):
            for j in range(k):
                P[i, j] -= K[i] * Px[j]
        for i in range(k):
            for j in range(i + 1, k):
                avg = 0.5 * (P[i, j] + P[j, i])
                P[i, j] = avg
                P[j, i] = avg
        loglik += -0.5 * (_LOG_2PI + np.log(S) + v * v / S)
        means[t] = m
        covs[t] = P
    return means, covs, loglik, _OK


@njit(cache=True)
def _draw_gauss(mean, cov, z, out):
    """out <- mean + A z with A A' = cov, via eigendecomposition.

    Eigenvalues in [-1e-10, 0) are clipped to zero; below that the
    covariance is declared indefinite.
    """
    w, V = np.linalg.eigh(cov)
    k = w.shape[0]
    for i in range(k):
        if w[i] < _EIG_FLOOR:
            return _BAD_EIGENVALUE
        if w[i] < 0.0:
            w[i] = 0.0
    scaled = np.sqrt(w) * z
    for i in range(k):
        acc = mean[i]
        for j in range(k):
            acc += V[i, j] * scaled[j]
        out[i] = acc
    return _OK


@njit(cache=True)
def _backward_core(means, covs, q_state, normals, path):
    """Joint smoothing draw, conditioning backward on the draw at t + 1.

    ``normals[t]`` provides the standard normal vector for the state at
    ``t``, so the random-number consumption order is fixed.
    """
    T, k = means.shape
    status = _draw_gauss(means[T - 1], covs[T - 1], normals[T - 1], path[T - 1])
    if status != _OK:
        return status
    gain = np.zeros((k, k))
    cond_cov = np.zeros((k, k))
    cond_mean = np.zeros(k)
    for t in range(T - 2, -1, -1):
        P = covs[t]
        pred = P.copy()
        for i in range(k):
            pred[i, i] += q_state[i]
        # gain = P (P + Q)^{-1}; both matrices symmetric
        gain = np.linalg.solve(pred, P).T
        diff = path[t + 1] - means[t]
        for i in range(k):
            acc = means[t][i]
            for j in range(k):
                acc += gain[i, j] * diff[j]
            cond_mean[i] = acc
        GP = gain @ P
        for i in range(k):
            for j in range(k):
                cond_cov[i, j] = P[i, j] - GP[i, j]
        for i in range(k):
            for j in range(i + 1, k):
                avg = 0.5 * (cond_cov[i, j] + cond_cov[j, i])
                cond_cov[i, j] = avg
                cond_cov[j, i] = avg
        status = _draw_gauss(cond_mean, cond_cov, normals[t], path[t])
        if status != _OK:
            return status
    return _OK


def _raise_for_status(status: int) -> None:
    if status == _BAD_INNOVATION:
        raise ConditioningError(
            "innovation variance is not positive; the filter cannot proceed"
        )
    if status == _BAD_EIGENVALUE:
        raise ConditioningError(
            f"covariance eigenvalue fell below the {_EIG_FLOOR} tolerance"
        )


# ---------------------------------------------------------------------------
# public filtering / smoothing / sampling API
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FilterResult:
    """Filtered coefficient means and covariances with the log-likelihood."""

    means: np.ndarray
    covariances: np.ndarray
    loglik: float


def _check_variances(model: TVPModel, variances: tuple[float, np.ndarray]) -> tuple[float, np.ndarray]:
    h_obs, q_state = variances
    h_obs = float(h_obs)
    q_state = np.asarray(q_state, dtype=float)
    if q_state.shape != (model.n_coefficients,):
        raise ValueError(
            f"state variance vector must have length {model.n_coefficients}"
        )
    if h_obs < 0.0 or np.any(q_state < 0.0):
        raise ValueError("variances must be nonnegative")
    return h_obs, q_state


def kalman_filter(model: TVPModel, variances: tuple[float, np.ndarray]) -> FilterResult:
    """Run the forward recursion at fixed variances.

    ``variances`` is ``(observation variance, state innovation vector)``.
    Covariances are symmetrized at every update.
    """
    h_obs, q_state = _check_variances(model, variances)
    p0 = np.full(model.n_coefficients, model.priors.m0_scale)
    means, covs, loglik, status = _filter_core(
        model.y, model.X, h_obs, q_state, model.priors.beta0_mean, p0
    )
    _raise_for_status(status)
    return FilterResult(means=means, covariances=covs, loglik=float(loglik))


def kalman_smoother(model: TVPModel, variances: tuple[float, np.ndarray]) -> np.ndarray:
    """Fixed-interval smoothed coefficient means at fixed variances."""
    h_obs, q_state = _check_variances(model, variances)
    filtered = kalman_filter(model, (h_obs, q_state))
    means, covs = filtered.means, filtered.covariances
    T, k = means.shape
    smoothed = np.empty_like(means)
    smoothed[-1] = means[-1]
    for t in range(T - 2, -1, -1):
        P = covs[t]
        pred = P + np.diag(q_state)
        gain = np.linalg.solve(pred, P).T
        smoothed[t] = means[t] + gain @ (smoothed[t + 1] - means[t])
    return smoothed


def backward_sample(
    filtered: FilterResult,
    variances: tuple[float, np.ndarray],
    rng: np.random.Generator,
) -> np.ndarray:
    """Draw one coefficient path from the joint smoothing distribution."""
    _, q_state = variances
    q_state = np.asarray(q_state, dtype=float)
    T, k = filtered.means.shape
    normals = rng.standard_normal((T, k))
    path = np.empty((T, k))
    status = _backward_core(filtered.means, filtered.covariances, q_state, normals, path)
    _raise_for_status(status)
    return path


# ---------------------------------------------------------------------------
# Gibbs sampler
# ---------------------------------------------------------------------------


@dataclass
class PolicyPosterior:
    """Retained Gibbs draws for the policy equation.

    ``beta`` has shape (draws, periods, coefficients); ``h_obs`` and
    ``q_state`` hold the variance draws. Band edges are pointwise central
    posterior intervals (default 68%, i.e. the 16th and 84th percentiles).
    """

    model: TVPModel
    beta: np.ndarray
    h_obs: np.ndarray
    q_state: np.ndarray
    n_burn: int
    seed: int | None = None

    @property
    def n_draws(self) -> int:
        return self.beta.shape[0]

    def bands(self, level: float = 68.0) -> dict[str, np.ndarray]:
        """Pointwise (lower, median, upper) per coefficient, stacked (T, 3)."""
        half = level / 2.0
        lo, med, hi = np.percentile(self.beta, [50.0 - half, 50.0, 50.0 + half], axis=0)
        return {
            name: np.column_stack([lo[:, j], med[:, j], hi[:, j]])
            for j, name in enumerate(self.model.names)
        }

    def reduced_paths(self) -> dict[str, np.ndarray]:
        """Long-run policy coefficients implied by each draw.

        Divides the intercept and unemployment-response paths by one minus
        the sum of the own-lag coefficients; with all lag coefficients zero
        this is the identity.
        """
        lag_sum = self.beta[:, :, self.model.lag_columns].sum(axis=2)
        denom = 1.0 - lag_sum
        return {
            "b0": self.beta[:, :, 0] / denom,
            "b1": self.beta[:, :, 1] / denom,
        }

    def reduced_bands(self, level: float = 68.0) -> dict[str, np.ndarray]:
        """Pointwise (lower, median, upper) for the reduced-form paths."""
        half = level / 2.0
        out: dict[str, np.ndarray] = {}
        for name, paths in self.reduced_paths().items():
            lo, med, hi = np.percentile(paths, [50.0 - half, 50.0, 50.0 + half], axis=0)
            out[name] = np.column_stack([lo, med, hi])
        return out

    def band_rows(self, level: float = 68.0) -> list[dict[str, float | str]]:
        """Flat per-period records (for delimited output)."""
        coef = self.bands(level)
        reduced = self.reduced_bands(level)
        T = self.model.n_obs
        dates = self.model.dates or tuple(str(t) for t in range(T))
        rows: list[dict[str, float | str]] = []
        for t in range(T):
            row: dict[str, float | str] = {"date": dates[t]}
            for name, arr in coef.items():
                row[f"{name}_lo"] = arr[t, 0]
                row[f"{name}_median"] = arr[t, 1]
                row[f"{name}_hi"] = arr[t, 2]
            for name, arr in reduced.items():
                row[f"{name}_lo"] = arr[t, 0]
                row[f"{name}_median"] = arr[t, 1]
                row[f"{name}_hi"] = arr[t, 2]
            rows.append(row)
        return rows


def _inverse_gamma(rng: np.random.Generator, shape: float, scale: float) -> float:
    """One draw with mean scale / (shape - 1)."""
    return scale / rng.gamma(shape, 1.0)


def gibbs(
    model: TVPModel,
    n_burn: int = 10_000,
    n_keep: int = 10_000,
    rng: np.random.Generator | int | None = 0,
    thin: int = 1,
) -> PolicyPosterior:
    """Alternate path draws and conjugate variance draws.

    Per sweep the generator is consumed in a fixed order — the (T, k) block
    of standard normals for the path draw, one gamma for the observation
    variance, then one gamma per coefficient for the state variances — so a
    fixed seed reproduces the chain exactly.
    """
    if n_burn < 1 or n_keep < 1:
        raise ValueError("n_burn and n_keep must both be at least 1")
    if thin < 1:
        raise ValueError("thin must be at least 1")
    seed = rng if isinstance(rng, int) else None
    generator = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    pri = model.priors
    T, k = model.X.shape
    a_obs = pri.nu_obs / 2.0 + T / 2.0
    a_state = pri.nu_state / 2.0 + (T - 1) / 2.0
    h_obs = pri.s_obs / (pri.nu_obs / 2.0 - 1.0)
    q_state = pri.s_state / (pri.nu_state / 2.0 - 1.0)
    p0 = np.full(k, pri.m0_scale)

    keep_beta = np.empty((n_keep, T, k))
    keep_h = np.empty(n_keep)
    keep_q = np.empty((n_keep, k))
    path = np.empty((T, k))
    trace: list[tuple[int, float, np.ndarray]] = []

    total = n_burn + n_keep * thin
    for sweep in range(total):
        means, covs, _, status = _filter_core(
            model.y, model.X, h_obs, q_state, pri.beta0_mean, p0
        )
        _raise_for_status(status)
        normals = generator.standard_normal((T, k))
        status = _backward_core(means, covs, q_state, normals, path)
        _raise_for_status(status)

        resid = model.y - np.einsum("tk,tk->t", model.X, path)
        h_obs = _inverse_gamma(generator, a_obs, pri.s_obs + 0.5 * resid @ resid)
        steps = np.diff(path, axis=0)
        ssq = np.einsum("tk,tk->k", steps, steps)
        q_state = np.array(
            [
                _inverse_gamma(generator, a_state, pri.s_state[j] + 0.5 * ssq[j])
                for j in range(k)
            ]
        )

        trace.append((sweep, h_obs, q_state.copy()))
        if len(trace) > 5:
            trace.pop(0)
        if (
            not math.isfinite(h_obs)
            or h_obs > _DIVERGENCE_CAP
            or not np.all(np.isfinite(q_state))
            or np.any(q_state > _DIVERGENCE_CAP)
        ):
            excerpt = "; ".join(
                f"sweep {s}: h={hv:.3e}, q={np.array2string(qv, precision=3)}"
                for s, hv, qv in trace
            )
            raise SamplerDivergenceError(
                f"variance draw overflowed at sweep {sweep}; recent draws: {excerpt}"
            )

        kept = sweep - n_burn
        if kept >= 0 and kept % thin == 0:
            idx = kept // thin
            if idx < n_keep:
                keep_beta[idx] = path
                keep_h[idx] = h_obs
                keep_q[idx] = q_state
    return PolicyPosterior(
        model=model,
        beta=keep_beta,
        h_obs=keep_h,
        q_state=keep_q,
        n_burn=n_burn,
        seed=seed,
    )
