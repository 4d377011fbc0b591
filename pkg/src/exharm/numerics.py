"""Shared numerical kernels.

The lowest eigenpair of a symmetric tridiagonal matrix comes from Sturm-sequence
bisection followed by inverse iteration (LAPACK ``stebz``/``stein`` through
scipy). Quadrature rules are plain node/weight pairs so that the same rule can be
reused on tabulated data and on callables.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import linalg, optimize


class NumericalError(RuntimeError):
    """A numerical kernel failed to produce a trustworthy result."""


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


@dataclass(frozen=True)
class TridiagonalMatrix:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.ascontiguousarray(self.diag, dtype=float)
        e = np.ascontiguousarray(self.offdiag, dtype=float)
        if d.ndim != 1 or e.ndim != 1:
            raise ValueError("diag and offdiag must be one-dimensional")
        if e.size != d.size - 1:
            raise ValueError(f"offdiag length {e.size} must be diag length - 1 = {d.size - 1}")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return self.diag.size

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def norm_inf(self) -> float:
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.offdiag)
        row[1:] += np.abs(self.offdiag)
        return float(row.max())

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def lowest_eigenpair(m: TridiagonalMatrix, tol: float = 1e-10) -> tuple[float, np.ndarray]:
    """Algebraically smallest eigenvalue and its unit eigenvector.

    The eigenvector sign is fixed so that its largest-magnitude entry is positive.
    Raises :class:`NumericalError` when the residual ``|Mv - lv|`` exceeds
    ``tol * |M|``.
    """
    if m.n < 2:
        raise ValueError(f"matrix dimension must be >= 2, got {m.n}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    try:
        w, v = linalg.eigh_tridiagonal(
            m.diag, m.offdiag, select="i", select_range=(0, 0), lapack_driver="stebz"
        )
    except linalg.LinAlgError as exc:
        raise NumericalError(f"bisection/inverse iteration failed for n={m.n}: {exc}") from exc
    lam = float(w[0])
    vec = v[:, 0]
    vec = vec / np.linalg.norm(vec)
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec
    scale = m.norm_inf()
    resid = float(np.linalg.norm(m.matvec(vec) - lam * vec))
    if resid > tol * scale:
        raise NumericalError(
            f"eigenpair residual {resid:.3e} exceeds tol*|M| = {tol * scale:.3e} (n={m.n})"
        )
    return lam, vec


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    a: float
    b: float
    kind: str = "custom"

    def __len__(self):
        return self.nodes.size


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n-1."""
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return QuadratureRule(0.5 * (a + b) + half * x, half * w, a, b, "gauss-legendre")


def composite_gauss_legendre(a: float, b: float, panels: int, order: int = 16) -> QuadratureRule:
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x
    weights = 0.5 * (hi - lo) * w
    return QuadratureRule(nodes.ravel(), weights.ravel(), a, b, "composite-gauss-legendre")


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights for ``n`` equally spaced nodes.

    An even node count closes with a 3/8 panel on the last four nodes.
    """
    if n < 3:
        raise ValueError("Simpson's rule needs at least 3 nodes")
    w = np.zeros(n)
    m = n if n % 2 == 1 else n - 3
    if m >= 3:
        w[:m] = 2.0
        w[1:m:2] = 4.0
        w[0] = w[m - 1] = 1.0
        w[:m] *= h / 3.0
    else:
        m = 1
    if n % 2 == 0:
        w[m - 1 :] += np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * h / 8.0)
    return w


def composite_simpson(x: np.ndarray) -> QuadratureRule:
    x = np.asarray(x, dtype=float)
    h = np.diff(x)
    if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
        raise ValueError("composite Simpson requires a uniform grid")
    return QuadratureRule(x, simpson_weights(x.size, float(h[0])), float(x[0]), float(x[-1]), "simpson")


def trapezoid(x: np.ndarray) -> QuadratureRule:
    x = np.asarray(x, dtype=float)
    h = np.diff(x)
    w = np.zeros_like(x)
    w[:-1] += 0.5 * h
    w[1:] += 0.5 * h
    return QuadratureRule(x, w, float(x[0]), float(x[-1]), "trapezoid")


def integrate(f: Callable[[np.ndarray], np.ndarray] | np.ndarray, rule: QuadratureRule) -> float:
    """Weighted sum of ``f`` over the rule's nodes.

    ``f`` is either a vectorized callable or values already tabulated at the nodes.
    """
    values = np.asarray(f(rule.nodes) if callable(f) else f, dtype=float)
    if values.shape != rule.nodes.shape:
        raise ValueError(f"integrand has shape {values.shape}, rule has {rule.nodes.shape}")
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise NumericalError(f"non-finite integrand {values[i]!r} at node {i} (x={rule.nodes[i]!r})")
    return float(np.dot(rule.weights, values))


def find_root(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12) -> float:
    """Root of a continuous function on a sign-changing bracket (Brent's method)."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return float(a)
    if fb == 0.0:
        return float(b)
    if not (math.isfinite(fa) and math.isfinite(fb)) or fa * fb > 0:
        raise BracketError(f"no sign change on [{a}, {b}]: f(a)={fa!r}, f(b)={fb!r}")
    r = optimize.brentq(f, a, b, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)
    return float(min(max(r, a), b))


@dataclass
class MinimizeOutcome:
    x: np.ndarray
    fun: float
    iterations: int
    evaluations: int
    converged: bool
    message: str = ""


def minimize_derivative_free(
    f: Callable[[np.ndarray], float],
    x0,
    tol: float = 1e-8,
    max_iter: int | None = None,
    restarts: int = 0,
    initial_step: float = 0.05,
    xtol: float | None = None,
) -> MinimizeOutcome:
    """Nelder-Mead simplex search.

    ``restarts`` re-seeds a fresh simplex around the incumbent, which helps the
    method escape the collapsed simplices it tends to produce in higher
    dimensions. Non-finite values other than ``+inf`` are an error; ``+inf`` is
    treated as an infeasible point. Convergence requires the simplex diameter
    below ``xtol`` (default ``tol``) and the spread of values below
    ``tol * max(1, |f|)``.
    """
    x0 = np.asarray(x0, dtype=float)
    f0 = float(f(x0))
    if not math.isfinite(f0):
        raise NumericalError(f"objective is not finite at the starting point: {f0!r}")

    def wrapped(x):
        val = float(f(x))
        if math.isnan(val):
            raise NumericalError(f"objective returned NaN at x={x!r}")
        return val

    n = x0.size
    max_iter = max_iter or 400 * n
    best_x, best_f = x0.copy(), f0
    total_it = total_ev = 0
    converged = False
    message = ""
    for _ in range(restarts + 1):
        simplex = np.vstack([best_x] + [best_x + initial_step * np.eye(n)[i] for i in range(n)])
        res = optimize.minimize(
            wrapped,
            best_x,
            method="Nelder-Mead",
            options=dict(
                xatol=tol if xtol is None else xtol, fatol=tol * max(1.0, abs(best_f)), maxiter=max_iter,
                maxfev=4 * max_iter, initial_simplex=simplex,
            ),
        )
        total_it += int(res.nit)
        total_ev += int(res.nfev)
        converged = bool(res.success)
        message = str(res.message)
        improvement = best_f - float(res.fun)
        if float(res.fun) <= best_f:
            best_x, best_f = np.asarray(res.x, dtype=float), float(res.fun)
        if improvement <= tol * max(1.0, abs(best_f)):
            break
    if not converged:
        warnings.warn(f"Nelder-Mead stopped before convergence: {message}", RuntimeWarning, stacklevel=2)
    return MinimizeOutcome(best_x, best_f, total_it, total_ev, converged, message)
