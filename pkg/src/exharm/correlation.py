"""Electron/PCP correlation diagnostics from the exact and mean-field solutions.

The exact ground state is ``Psi = psi(r) phi(R)`` with ``r = r_p - r_e`` and
``R = (r_e + m r_p) / M``. Integrating out one particle at fixed position of
the other gives the one-particle densities; fixing the other particle at the
origin gives the conditional densities and hence the correlation hills.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

from .mchf import (
    EnergyComponents, ScfResult, hf_density, hf_extent, hf_intracule, hf_intracule_moments, hf_one_moment,
)
from .model import SystemParams, com_ground
from .numerics import NumericalError, find_root, simpson_weights
from .radial import RadialSolution, gradient_norm

PARTICLES = ("e", "pcp")
FOUR_PI = 4.0 * math.pi

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


class DegenerateReferenceError(NumericalError):
    """Density at the reference point vanishes."""


class NoCrossingError(NumericalError):
    """A correlation hill never changes sign on its grid."""


def _check_particle(which):
    if which not in PARTICLES:
        raise ValueError(f"particle must be one of {PARTICLES}, got {which!r}")


def _radial_integral(r: np.ndarray, f: np.ndarray) -> float:
    """Simpson integral on a uniform grid (3/8 closing panel for even counts)."""
    return float(simpson_weights(r.size, r[1] - r[0]) @ f)


@dataclass(frozen=True)
class RadialDensity:
    """Spherical one-particle density tabulated on a uniform grid starting at 0."""

    r: np.ndarray
    rho: np.ndarray
    particle: str
    source: str = "exact"

    def norm(self) -> float:
        return _radial_integral(self.r, FOUR_PI * self.r**2 * self.rho)

    def at(self, x) -> np.ndarray:
        """Cubic interpolation; zero beyond the last node."""
        x = np.asarray(x, dtype=float)
        s = CubicSpline(self.r, self.rho)
        return np.where(x <= self.r[-1], s(np.minimum(x, self.r[-1])), 0.0)

    def resample(self, n: int = 2000) -> "RadialDensity":
        r = np.linspace(0.0, self.r[-1], n)
        return RadialDensity(r, self.at(r), self.particle, self.source)


@dataclass(frozen=True)
class IntraculeRdf:
    """Radial distribution ``D(r)`` of the electron/PCP distance."""

    r: np.ndarray
    D: np.ndarray
    source: str

    def norm(self) -> float:
        return float(np.trapezoid(self.D, self.r))


@dataclass(frozen=True)
class CorrelationHill:
    """Conditional minus unconditional density, reference particle at the origin."""

    r: np.ndarray
    values: np.ndarray
    particle: str
    conditional: np.ndarray

    def sum_rule(self) -> float:
        """``int hill 4 pi r^2 dr``; zero for an exact hill."""
        return _radial_integral(self.r, FOUR_PI * self.r**2 * self.values)

    def resample(self, n: int = 2000) -> "CorrelationHill":
        r = np.linspace(0.0, self.r[-1], n)
        return CorrelationHill(
            r, CubicSpline(self.r, self.values)(r), self.particle,
            CubicSpline(self.r, self.conditional)(r),
        )


# ---------------------------------------------------------------- geometry

def coordinate_weight(params: SystemParams, which: str) -> float:
    """Coefficient ``a`` in ``r_particle = R -/+ a r``: ``m/M`` for the electron, ``1/M`` for the PCP."""
    _check_particle(which)
    return params.m_pcp / params.M if which == "e" else 1.0 / params.M


def exact_mean_r2(sol: RadialSolution, params: SystemParams, which: str) -> float:
    """``<r_particle^2> = <R^2> + a^2 <r^2>``."""
    a = coordinate_weight(params, which)
    return com_ground(params).mean_r2 + a * a * sol.moment(2)


def particle_grid(sol: RadialSolution, params: SystemParams, which: str) -> np.ndarray:
    """Uniform grid for one particle's density and hill.

    Extends to ten times the particle's rms radius, with spacing fine enough to
    resolve both the particle density and the relative wavefunction.
    """
    rms = math.sqrt(exact_mean_r2(sol, params, which))
    extent = 10.0 * rms
    step = min(sol.moment(1), rms) / 40.0
    n = int(np.clip(extent / step, 2001, 40001)) | 1
    return np.linspace(0.0, extent, n)


# ---------------------------------------------------------------- one-particle densities

def _panels(lo, hi, count):
    edges = lo[:, None] + (hi - lo)[:, None] * np.linspace(0.0, 1.0, count + 1)[None, :]
    a, b = edges[:, :-1, None], edges[:, 1:, None]
    x = 0.5 * (a + b) + 0.5 * (b - a) * _GL_X
    w = 0.5 * (b - a) * _GL_W
    return x.reshape(lo.size, -1), np.broadcast_to(w, x.shape).reshape(lo.size, -1)


def _radial_panels(x, a, Mw, r_cut):
    """Composite Gauss-Legendre nodes in the relative coordinate for each target ``x``.

    The angular-averaged kernel peaks at ``r = x / a`` with width ``1/(a sqrt(Mw))``;
    the panels are concentrated there.
    """
    width = 1.0 / (a * math.sqrt(Mw))
    c = x / a
    lo = np.clip(c - 12.0 * width, 0.0, r_cut)
    hi = np.clip(c + 12.0 * width, 0.0, r_cut)
    zero = np.zeros_like(x)
    return [_panels(zero, lo, 8), _panels(lo, hi, 16), _panels(hi, np.full_like(x, r_cut), 8)]


def _density_analytic(x, sol, a, Mw):
    """Angular integral done in closed form.

    ``rho(x) = (Mw/pi)^(3/2) int u(r)^2 exp(-Mw (x - a r)^2) (1 - exp(-4 Mw a x r)) / (4 Mw a x r) dr``
    """
    total = np.zeros_like(x)
    for r, w in _radial_panels(x, a, Mw, sol.grid.r_max):
        u2 = sol.u_at(r) ** 2
        z = 4.0 * Mw * a * x[:, None] * r
        safe = np.where(z > 1e-12, z, 1.0)
        f = np.where(z > 1e-12, -np.expm1(-z) / safe, 1.0 - 0.5 * z)
        total += np.sum(w * u2 * np.exp(-Mw * (x[:, None] - a * r) ** 2) * f, axis=1)
    return (Mw / math.pi) ** 1.5 * total


def _density_angular(x, sol, a, Mw, n_angular):
    """Same integral with a Gauss-Legendre rule in ``cos(theta)``."""
    ct, wt = np.polynomial.legendre.leggauss(n_angular)
    total = np.zeros_like(x)
    for r, w in _radial_panels(x, a, Mw, sol.grid.r_max):
        u2 = sol.u_at(r) ** 2
        R2 = (x * x)[:, None, None] + (a * r)[:, :, None] ** 2 + 2.0 * a * x[:, None, None] * r[:, :, None] * ct
        ang = 0.5 * np.sum(wt * np.exp(-Mw * R2), axis=2)
        total += np.sum(w * u2 * ang, axis=1)
    return (Mw / math.pi) ** 1.5 * total


def exact_one_density(
    sol: RadialSolution,
    params: SystemParams,
    which: str,
    r=None,
    method: str = "analytic",
    n_angular: int = 64,
    norm_tol: float = 1e-6,
    chunk: int = 1024,
    check_norm: bool | None = None,
) -> RadialDensity:
    """One-particle density of the exact ground state.

    ``rho(x) = int |psi(r)|^2 |phi(x +/- a r)|^2 d^3 r``. With ``method="analytic"``
    the angular integral is done in closed form; ``method="angular"`` uses an
    ``n_angular``-point Gauss-Legendre rule in ``cos(theta)``, doubling it while
    the normalization misses ``norm_tol`` (up to 1024 points).

    ``r`` defaults to :func:`particle_grid`. The normalization check runs by
    default only on that grid; a caller-supplied grid must be uniform, start at
    0, and cover the density for ``check_norm=True`` to make sense.
    """
    _check_particle(which)
    a = coordinate_weight(params, which)
    Mw = com_ground(params).exponent
    x = particle_grid(sol, params, which) if r is None else np.asarray(r, dtype=float)

    def evaluate(n_ang):
        out = np.empty_like(x)
        step = chunk if method == "analytic" else max(1, chunk // 16)
        for s in range(0, x.size, step):
            xs = x[s : s + step]
            if method == "analytic":
                out[s : s + step] = _density_analytic(xs, sol, a, Mw)
            else:
                out[s : s + step] = _density_angular(xs, sol, a, Mw, n_ang)
        return out

    if method not in ("analytic", "angular"):
        raise ValueError(f"unknown method {method!r}")
    rho = evaluate(n_angular)
    dens = RadialDensity(x, rho, which)
    if check_norm is None:
        check_norm = r is None
    if not check_norm:
        return dens
    err = abs(dens.norm() - 1.0)
    while method == "angular" and err > norm_tol and n_angular < 1024:
        n_angular *= 2
        dens = RadialDensity(x, evaluate(n_angular), which)
        err = abs(dens.norm() - 1.0)
    if err > norm_tol:
        raise NumericalError(
            f"{which} density normalizes to {dens.norm():.8f}; "
            "use a denser angular rule or a longer grid"
        )
    return dens


def density_at_origin(sol: RadialSolution, params: SystemParams, which: str) -> float:
    a = coordinate_weight(params, which)
    Mw = com_ground(params).exponent
    return float(_density_analytic(np.array([0.0]), sol, a, Mw)[0])


# ---------------------------------------------------------------- hills

def conditional_density(sol: RadialSolution, params: SystemParams, which: str, r, rho_other_origin: float):
    """Density of ``which`` given the other particle at the origin."""
    _check_particle(which)
    if not rho_other_origin > 1e-300:
        raise DegenerateReferenceError(f"reference density {rho_other_origin!r} is zero")
    r = np.asarray(r, dtype=float)
    com = com_ground(params)
    scale = 1.0 / params.M if which == "e" else params.m_pcp / params.M
    return sol.psi_squared(r) * com.density(scale * r) / rho_other_origin


def correlation_hill(
    sol: RadialSolution,
    params: SystemParams,
    which: str,
    density: RadialDensity | None = None,
    rho_other_origin: float | None = None,
) -> CorrelationHill:
    """``hill(r) = Gamma(r, 0) / rho_other(0) - rho(r)`` with the other particle at the origin."""
    if density is None:
        density = exact_one_density(sol, params, which)
    if rho_other_origin is None:
        rho_other_origin = density_at_origin(sol, params, "pcp" if which == "e" else "e")
    cond = conditional_density(sol, params, which, density.r, rho_other_origin)
    return CorrelationHill(density.r, cond - density.rho, which, cond)


def correlation_radius(hill: CorrelationHill) -> float:
    """First zero crossing of the hill, refined on a local cubic interpolant."""
    v = hill.values
    if not v[0] > 0:
        raise NoCrossingError(f"{hill.particle} hill is not positive at the origin ({v[0]!r})")
    neg = np.flatnonzero(v < 0)
    if neg.size == 0:
        raise NoCrossingError(f"{hill.particle} hill has no sign change up to r={hill.r[-1]:g}")
    i = int(neg[0])
    lo, hi = max(0, i - 4), min(v.size, i + 4)
    spline = CubicSpline(hill.r[lo:hi], v[lo:hi])
    return find_root(lambda t: float(spline(t)), float(hill.r[i - 1]), float(hill.r[i]))


# ---------------------------------------------------------------- intracules

def exact_intracule(sol: RadialSolution) -> IntraculeRdf:
    """``D(r) = u(r)^2`` on the solution grid, padded with the boundary zeros."""
    r = np.concatenate([[0.0], sol.r, [sol.grid.r_max]])
    D = np.concatenate([[0.0], sol.u * sol.u, [0.0]])
    return IntraculeRdf(r, D, "exact")


def hydrogen_intracule(mu: float, r) -> np.ndarray:
    """Hydrogen-like limit ``D = 4 mu^3 r^2 exp(-2 mu r)``."""
    r = np.asarray(r, dtype=float)
    return 4.0 * mu**3 * r * r * np.exp(-2.0 * mu * r)


def oscillator_intracule(mu: float, omega: float, r) -> np.ndarray:
    """Oscillator limit ``D = 4 pi r^2 (mu w / pi)^(3/2) exp(-mu w r^2)``."""
    r = np.asarray(r, dtype=float)
    a = mu * omega
    return FOUR_PI * r * r * (a / math.pi) ** 1.5 * np.exp(-a * r * r)


def analytic_moments(kind: str, params: SystemParams) -> tuple[float, float]:
    """``<r>`` and variance of the intracule in the hydrogen or oscillator limit."""
    mu, w = params.mu, params.omega
    if kind == "hydrogen":
        return 1.5 / mu, 0.75 / mu**2
    if kind == "oscillator":
        return 2.0 / math.sqrt(math.pi * mu * w), (1.5 - 4.0 / math.pi) / (mu * w)
    raise ValueError(f"kind must be 'hydrogen' or 'oscillator', got {kind!r}")


def analytic_intracule(kind: str, params: SystemParams, r) -> IntraculeRdf:
    r = np.asarray(r, dtype=float)
    if kind == "hydrogen":
        return IntraculeRdf(r, hydrogen_intracule(params.mu, r), "analytic-hydrogen")
    if kind == "oscillator":
        return IntraculeRdf(r, oscillator_intracule(params.mu, params.omega, r), "analytic-oscillator")
    raise ValueError(f"kind must be 'hydrogen' or 'oscillator', got {kind!r}")


def intracule_moment(D: IntraculeRdf, n: float) -> float:
    """``<r^n> = int r^n D(r) dr``."""
    return float(np.trapezoid(D.r**n * D.D, D.r))


def v_ep_expectation(D: IntraculeRdf) -> float:
    """``<V_ep> = -int D(r) / r dr``; ``D ~ r^2`` makes the integrand vanish at 0."""
    safe = np.where(D.r > 0, D.r, 1.0)
    return -float(np.trapezoid(np.where(D.r > 0, D.D / safe, 0.0), D.r))


def delta_intracule(sol: RadialSolution, result: ScfResult) -> IntraculeRdf:
    """``D_exact - D_uncorr`` on a uniform grid covering both distributions.

    The grid continues the solution grid's spacing, so the exact part is
    sampled at its own nodes.
    """
    h = sol.grid.h
    extent = max(sol.grid.r_max, hf_extent(result))
    n = int(math.ceil(extent / h))
    r = h * np.arange(n + 1)
    exact = np.zeros_like(r)
    k = min(sol.u.size, n)
    exact[1 : k + 1] = sol.u[:k] ** 2
    return IntraculeRdf(r, exact - hf_intracule(result, r), "exact-minus-uncorrelated")


# ---------------------------------------------------------------- energies

def shell_potential(rho: RadialDensity) -> np.ndarray:
    """Electrostatic potential of a spherical unit charge cloud at its own nodes.

    ``V(r) = Q(r)/r + int_r^inf 4 pi s rho(s) ds``.
    """
    r = rho.r
    q = cumulative_simpson(FOUR_PI * r * r * rho.rho, x=r, initial=0.0)
    outer = cumulative_simpson(FOUR_PI * r * rho.rho, x=r, initial=0.0)
    outer = outer[-1] - outer
    safe = np.where(r > 0, r, 1.0)
    return np.where(r > 0, q / safe, 0.0) + outer


def j_ep(rho_e: RadialDensity, rho_p: RadialDensity, norm_tol: float = 1e-5) -> float:
    """Classical Coulomb attraction ``-int rho_p(r) V_e(r) d^3r`` of two spherical densities."""
    for d in (rho_e, rho_p):
        if abs(d.norm() - 1.0) > norm_tol:
            raise ValueError(f"{d.particle} density normalizes to {d.norm():.8f}, expected 1")
    # potential of the wider cloud, sampled on the grid of the narrower one
    outer_d, inner_d = (rho_e, rho_p) if rho_e.r[-1] >= rho_p.r[-1] else (rho_p, rho_e)
    V = CubicSpline(outer_d.r, shell_potential(outer_d))
    x = inner_d.r
    safe = np.where(x > 0, x, 1.0)
    Vx = np.where(x <= outer_d.r[-1], V(np.minimum(x, outer_d.r[-1])), 1.0 / safe)
    return -_radial_integral(x, FOUR_PI * x * x * inner_d.rho * Vx)


def exact_components(sol: RadialSolution, params: SystemParams) -> EnergyComponents:
    """Energy components of the exact state from the relative and CM factors.

    Cross terms between the relative and centre-of-mass gradients vanish for
    the real ground state, so each particle's kinetic energy splits into a
    relative and a CM part weighted by its mass.
    """
    m, M, w = params.m_pcp, params.M, params.omega
    com = com_ground(params)
    g = gradient_norm(sol)
    r2 = sol.moment(2)
    return EnergyComponents(
        T_e=0.5 * g + com.mean_grad2 / (2.0 * M * M),
        T_pcp=g / (2.0 * m) + m * com.mean_grad2 / (2.0 * M * M),
        V_ext_e=0.5 * w * w * (com.mean_r2 + (m / M) ** 2 * r2),
        V_ext_pcp=0.5 * m * w * w * (com.mean_r2 + r2 / (M * M)),
        V_ep=v_ep_expectation(exact_intracule(sol)),
    )


def sdd(rho_hf: RadialDensity, rho_exact: RadialDensity) -> tuple[np.ndarray, np.ndarray]:
    """Scaled density difference ``(rho_hf - rho_exact) / max(rho_exact)`` on the exact grid."""
    r = rho_exact.r
    hf = rho_hf.rho if np.array_equal(rho_hf.r, r) else rho_hf.at(r)
    return r, (hf - rho_exact.rho) / np.max(rho_exact.rho)


def hf_radial_density(result: ScfResult, which: str, r) -> RadialDensity:
    r = np.asarray(r, dtype=float)
    return RadialDensity(r, hf_density(result, which, r), which, "uncorrelated")


# ---------------------------------------------------------------- report

@dataclass(frozen=True)
class ExactDensities:
    rho_e: RadialDensity
    rho_pcp: RadialDensity
    hill_e: CorrelationHill
    hill_pcp: CorrelationHill


def exact_densities(sol: RadialSolution, params: SystemParams) -> ExactDensities:
    rho_e = exact_one_density(sol, params, "e")
    rho_p = exact_one_density(sol, params, "pcp")
    hill_e = correlation_hill(sol, params, "e", rho_e, float(rho_p.rho[0]))
    hill_p = correlation_hill(sol, params, "pcp", rho_p, float(rho_e.rho[0]))
    return ExactDensities(rho_e, rho_p, hill_e, hill_p)


@dataclass(frozen=True)
class CorrelationReport:
    e_exact: float
    e_uncorr: float
    e_corr_ref_indep: float
    e_corr_ref_dep: float
    deltas: EnergyComponents
    exact: EnergyComponents
    uncorr: EnergyComponents
    j_ep: float
    v_ep_exact: float
    radius_e: float
    radius_pcp: float
    r_mean_exact: float
    r2_exact: float
    r_mean_uncorr: float
    r2_uncorr: float

    @property
    def var_exact(self) -> float:
        return self.r2_exact - self.r_mean_exact**2

    @property
    def var_uncorr(self) -> float:
        return self.r2_uncorr - self.r_mean_uncorr**2


def correlation_report(
    params: SystemParams,
    sol: RadialSolution,
    result: ScfResult,
    densities: ExactDensities | None = None,
) -> CorrelationReport:
    """Both correlation energies, their decomposition, radii, and intracule moments.

    The reference-dependent energy is the sum of the five component differences,
    so the exact energy used here is the Rayleigh quotient on the solution grid
    plus the CM energy.
    """
    dens = densities or exact_densities(sol, params)
    ex = exact_components(sol, params)
    hf = result.components
    deltas = EnergyComponents(*(a - b for a, b in zip(ex.as_tuple(), hf.as_tuple())))
    D = exact_intracule(sol)
    v_ep = ex.V_ep
    j = j_ep(dens.rho_e, dens.rho_pcp)
    r1_hf, r2_hf = hf_intracule_moments(result)
    return CorrelationReport(
        e_exact=ex.total,
        e_uncorr=result.energy,
        e_corr_ref_indep=v_ep - j,
        e_corr_ref_dep=deltas.total,
        deltas=deltas,
        exact=ex,
        uncorr=hf,
        j_ep=j,
        v_ep_exact=v_ep,
        radius_e=correlation_radius(dens.hill_e),
        radius_pcp=correlation_radius(dens.hill_pcp),
        r_mean_exact=intracule_moment(D, 1),
        r2_exact=intracule_moment(D, 2),
        r_mean_uncorr=r1_hf,
        r2_uncorr=r2_hf,
    )


__all__ = [
    "RadialDensity", "IntraculeRdf", "CorrelationHill", "CorrelationReport",
    "ExactDensities", "exact_one_density", "density_at_origin", "conditional_density",
    "correlation_hill", "correlation_radius", "exact_intracule", "hydrogen_intracule",
    "oscillator_intracule", "analytic_moments", "analytic_intracule", "intracule_moment",
    "v_ep_expectation", "delta_intracule", "shell_potential", "j_ep", "exact_components",
    "sdd", "hf_radial_density", "exact_densities", "correlation_report", "particle_grid",
    "coordinate_weight", "exact_mean_r2", "hf_one_moment",
]
