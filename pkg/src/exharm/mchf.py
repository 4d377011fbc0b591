"""Two-component mean-field (product ansatz) solver in concentric s-Gaussian bases.

The electron and PCP orbitals are each expanded in normalized primitives
``g_a(r) = (2a/pi)^(3/4) exp(-a r^2)`` centred at the trap origin. All matrix
elements are closed-form; the SCF alternates between the two particles, each
seeing the trap plus the Coulomb attraction of the other's current density.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .model import SystemParams
from .numerics import NumericalError, minimize_derivative_free
from .reference import BASIS_7S7S, lookup

TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


class LinearDependenceError(NumericalError):
    """The overlap matrix is numerically singular."""


def _check_positive(*exps):
    for a in exps:
        if not np.all(np.asarray(a) > 0):
            raise ValueError(f"Gaussian exponents must be positive, got {a!r}")


# ---------------------------------------------------------------- integrals

def overlap(a, b):
    """``<g_a|g_b> = (2 sqrt(ab) / (a+b))^(3/2)``."""
    _check_positive(a, b)
    a, b = np.asarray(a, float), np.asarray(b, float)
    return (2.0 * np.sqrt(a * b) / (a + b)) ** 1.5


def kinetic(a, b, mass=1.0):
    """``<g_a| -lap/(2 mass) |g_b> = 3ab / (mass (a+b)) * S``."""
    if not mass > 0:
        raise ValueError("mass must be positive")
    a, b = np.asarray(a, float), np.asarray(b, float)
    return 3.0 * a * b / (mass * (a + b)) * overlap(a, b)


def quadratic_moment(a, b):
    """``<g_a| r^2 |g_b> = 3 / (2(a+b)) * S``."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    return 1.5 / (a + b) * overlap(a, b)


def attraction_eri(a_e, b_e, a_p, b_p):
    """Coulomb repulsion ``(g_ae g_be | 1/r12 | g_ap g_bp)`` of two concentric distributions.

    With ``p = a_e + b_e`` and ``q = a_p + b_p`` this is
    ``S_e S_p (2/sqrt(pi)) sqrt(pq / (p+q))``. The electron/PCP attraction
    matrix element is its negative.
    """
    _check_positive(a_e, b_e, a_p, b_p)
    p = np.asarray(a_e, float) + np.asarray(b_e, float)
    q = np.asarray(a_p, float) + np.asarray(b_p, float)
    return overlap(a_e, b_e) * overlap(a_p, b_p) * TWO_OVER_SQRT_PI * np.sqrt(p * q / (p + q))


# ---------------------------------------------------------------- bases

@dataclass(frozen=True)
class GaussianBasis:
    """Sorted, strictly increasing positive exponents of one particle's s primitives."""

    exponents: tuple

    def __post_init__(self):
        exps = np.asarray(self.exponents, dtype=float).ravel()
        if exps.size == 0:
            raise ValueError("basis must contain at least one exponent")
        if not np.all(np.isfinite(exps)) or np.any(exps <= 0):
            raise ValueError(f"exponents must be positive and finite: {exps.tolist()}")
        exps = np.sort(exps)
        if np.any(np.diff(exps) == 0):
            raise ValueError(f"duplicate exponents in basis: {exps.tolist()}")
        object.__setattr__(self, "exponents", tuple(float(x) for x in exps))

    def __len__(self):
        return len(self.exponents)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.exponents)

    @classmethod
    def even_tempered(cls, alpha0: float, beta: float = 3.0, n: int = 7) -> "GaussianBasis":
        return cls(tuple(alpha0 * beta**k for k in range(n)))


def table_basis(m_pcp: float, omega: float) -> tuple[GaussianBasis, GaussianBasis]:
    """Published optimized [7s:7s] exponents for a grid point."""
    row = lookup(BASIS_7S7S, m_pcp, omega)
    if row is None:
        raise KeyError(f"no tabulated basis for m={m_pcp:g}, omega={omega:g}")
    return GaussianBasis(row[0]), GaussianBasis(row[1])


def read_basis_file(path) -> tuple[GaussianBasis, GaussianBasis]:
    """Read one exponent per line; electron block, blank line, PCP block. ``#`` starts a comment."""
    blocks, cur = [], []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        try:
            cur.append(float(line))
        except ValueError:
            raise ValueError(f"{path}: cannot parse exponent {line!r}") from None
    if cur:
        blocks.append(cur)
    if len(blocks) != 2:
        raise ValueError(f"{path}: expected 2 exponent blocks (electron, PCP), found {len(blocks)}")
    return GaussianBasis(tuple(blocks[0])), GaussianBasis(tuple(blocks[1]))


def write_basis_file(path, basis_e: GaussianBasis, basis_p: GaussianBasis) -> None:
    lines = [repr(a) for a in basis_e.exponents] + [""] + [repr(a) for a in basis_p.exponents]
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------- SCF

@dataclass(frozen=True)
class EnergyComponents:
    T_e: float
    T_pcp: float
    V_ext_e: float
    V_ext_pcp: float
    V_ep: float

    @property
    def total(self) -> float:
        return self.T_e + self.T_pcp + self.V_ext_e + self.V_ext_pcp + self.V_ep

    def as_tuple(self) -> tuple:
        return (self.T_e, self.T_pcp, self.V_ext_e, self.V_ext_pcp, self.V_ep)


@dataclass(frozen=True)
class ScfOptions:
    energy_tol: float = 1e-10
    density_tol: float = 1e-8
    max_iter: int = 200
    damping: float = 0.5
    overlap_floor: float = 1e-12
    max_condition: float = 1e12
    interaction: bool = True


@dataclass
class ScfResult:
    params: SystemParams
    basis_e: GaussianBasis
    basis_p: GaussianBasis
    coeff_e: np.ndarray
    coeff_pcp: np.ndarray
    energy: float
    components: EnergyComponents
    converged: bool
    iterations: int
    energy_history: list = field(default_factory=list, repr=False)


class _Matrices:
    """One-body and interaction matrices for a basis pair."""

    def __init__(self, params: SystemParams, be: GaussianBasis, bp: GaussianBasis):
        m, w = params.m_pcp, params.omega
        ae, ap = be.array, bp.array
        self.pe = ae[:, None] + ae[None, :]
        self.pp = ap[:, None] + ap[None, :]
        self.Se = overlap(ae[:, None], ae[None, :])
        self.Sp = overlap(ap[:, None], ap[None, :])
        self.Te = kinetic(ae[:, None], ae[None, :], 1.0)
        self.Tp = kinetic(ap[:, None], ap[None, :], m)
        self.Ve = 0.5 * w * w * quadratic_moment(ae[:, None], ae[None, :])
        self.Vp = 0.5 * m * w * w * quadratic_moment(ap[:, None], ap[None, :])
        pe, pp = self.pe[:, :, None, None], self.pp[None, None, :, :]
        # (ij|kl), electron pair ij and PCP pair kl
        self.G = (
            self.Se[:, :, None, None] * self.Sp[None, None, :, :]
            * TWO_OVER_SQRT_PI * np.sqrt(pe * pp / (pe + pp))
        )

    def components(self, De, Dp) -> EnergyComponents:
        return EnergyComponents(
            T_e=float(np.sum(De * self.Te)),
            T_pcp=float(np.sum(Dp * self.Tp)),
            V_ext_e=float(np.sum(De * self.Ve)),
            V_ext_pcp=float(np.sum(Dp * self.Vp)),
            V_ep=-float(np.einsum("ij,ijkl,kl->", De, self.G, Dp)),
        )


def _orthogonalizer(S: np.ndarray, basis: GaussianBasis, opts: ScfOptions) -> np.ndarray:
    s, U = np.linalg.eigh(S)
    cond = s[-1] / s[0] if s[0] > 0 else math.inf
    if s[0] < opts.overlap_floor or cond > opts.max_condition:
        # the pair of primitives with the largest off-diagonal overlap is the culprit
        off = S - np.eye(len(S))
        i, j = np.unravel_index(np.argmax(off), off.shape)
        a = basis.exponents
        raise LinearDependenceError(
            f"overlap matrix near-singular (min eigenvalue {s[0]:.2e}, condition {cond:.2e}); "
            f"exponents {a[min(i, j)]:g} and {a[max(i, j)]:g} overlap {S[i, j]:.12f}"
        )
    return U / np.sqrt(s)


def _lowest_orbital(F: np.ndarray, X: np.ndarray) -> np.ndarray:
    _, C = np.linalg.eigh(X.T @ F @ X)
    c = X @ C[:, 0]
    k = np.argmax(np.abs(c))
    return c if c[k] > 0 else -c


def scf(
    params: SystemParams,
    basis_e: GaussianBasis,
    basis_p: GaussianBasis,
    opts: ScfOptions | None = None,
) -> ScfResult:
    """Alternating self-consistent field for the product wavefunction.

    Each macro-iteration diagonalizes the electron Fock matrix in the field of
    the current PCP density, then the PCP Fock matrix in the field of the new
    electron density. Both steps are exact minimizations of the energy over one
    orbital, so the energy cannot rise; if round-off makes it rise anyway the
    new density is mixed with the previous one using ``opts.damping``.
    """
    opts = opts or ScfOptions()
    mats = _Matrices(params, basis_e, basis_p)
    Xe = _orthogonalizer(mats.Se, basis_e, opts)
    Xp = _orthogonalizer(mats.Sp, basis_p, opts)
    he = mats.Te + mats.Ve
    hp = mats.Tp + mats.Vp
    lam = 1.0 if opts.interaction else 0.0

    ce = _lowest_orbital(he, Xe)
    cp = _lowest_orbital(hp, Xp)
    De, Dp = np.outer(ce, ce), np.outer(cp, cp)
    comps = mats.components(De, Dp)
    energy = comps.total - (1.0 - lam) * comps.V_ep
    history = [energy]
    converged = False
    it = 0
    for it in range(1, opts.max_iter + 1):
        ce_new = _lowest_orbital(he - lam * np.einsum("ijkl,kl->ij", mats.G, Dp), Xe)
        De_new = np.outer(ce_new, ce_new)
        cp_new = _lowest_orbital(hp - lam * np.einsum("ijkl,ij->kl", mats.G, De_new), Xp)
        Dp_new = np.outer(cp_new, cp_new)
        comps_new = mats.components(De_new, Dp_new)
        e_new = comps_new.total - (1.0 - lam) * comps_new.V_ep
        if e_new > energy + 1e-12:
            # damped step: mix densities, then re-extract the dominant natural orbital
            De_mix = opts.damping * De_new + (1 - opts.damping) * De
            Dp_mix = opts.damping * Dp_new + (1 - opts.damping) * Dp
            ce_new = _natural_orbital(De_mix, mats.Se)
            cp_new = _natural_orbital(Dp_mix, mats.Sp)
            De_new, Dp_new = np.outer(ce_new, ce_new), np.outer(cp_new, cp_new)
            comps_new = mats.components(De_new, Dp_new)
            e_new = comps_new.total - (1.0 - lam) * comps_new.V_ep
        dD = max(np.max(np.abs(De_new - De)), np.max(np.abs(Dp_new - Dp)))
        dE = abs(e_new - energy)
        ce, cp, De, Dp, comps, energy = ce_new, cp_new, De_new, Dp_new, comps_new, e_new
        history.append(energy)
        if dE < opts.energy_tol and dD < opts.density_tol:
            converged = True
            break
    if not opts.interaction:
        comps = EnergyComponents(comps.T_e, comps.T_pcp, comps.V_ext_e, comps.V_ext_pcp, 0.0)
    return ScfResult(params, basis_e, basis_p, ce, cp, comps.total, comps, converged, it, history)


def _natural_orbital(D: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Normalized dominant eigenvector of ``D S`` (the most occupied natural orbital)."""
    s, U = np.linalg.eigh(S)
    half = U @ np.diag(np.sqrt(s)) @ U.T
    inv_half = U @ np.diag(1.0 / np.sqrt(s)) @ U.T
    _, V = np.linalg.eigh(half @ D @ half)
    c = inv_half @ V[:, -1]
    c /= math.sqrt(c @ S @ c)
    return c if c[np.argmax(np.abs(c))] > 0 else -c


def optimize_exponents(
    params: SystemParams,
    basis_e: GaussianBasis,
    basis_p: GaussianBasis,
    opts: ScfOptions | None = None,
    tol: float = 1e-10,
    xtol: float = 1e-4,
    restarts: int = 1,
    max_iter: int | None = None,
    log_span: float = 8.0,
) -> tuple[GaussianBasis, GaussianBasis, ScfResult]:
    """Minimize the SCF energy over the logarithms of all exponents jointly.

    ``tol`` bounds the relative energy spread of the final simplex and ``xtol``
    its size in log-exponent space. Trial points whose basis is degenerate,
    whose SCF fails, or whose exponents leave the box ``x0 +- log_span`` of the
    starting particle range are treated as infeasible. The default evaluation
    budget is ``200`` per exponent. The returned energy never exceeds the
    starting energy.
    """
    opts = opts or ScfOptions()
    trial_opts = replace(opts, max_iter=min(opts.max_iter, 80))
    ne = len(basis_e)
    start = scf(params, basis_e, basis_p, opts)
    lo = np.log(np.r_[np.full(ne, basis_e.array.min()), np.full(len(basis_p), basis_p.array.min())]) - log_span
    hi = np.log(np.r_[np.full(ne, basis_e.array.max()), np.full(len(basis_p), basis_p.array.max())]) + log_span
    if max_iter is None:
        max_iter = 200 * (ne + len(basis_p))

    def split(x):
        return GaussianBasis(tuple(np.exp(x[:ne]))), GaussianBasis(tuple(np.exp(x[ne:])))

    def objective(x):
        if np.any(x < lo) or np.any(x > hi):
            return math.inf
        try:
            be, bp = split(x)
            res = scf(params, be, bp, trial_opts)
        except (ValueError, NumericalError):
            return math.inf
        return res.energy if res.converged else math.inf

    x0 = np.log(np.concatenate([basis_e.array, basis_p.array]))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        out = minimize_derivative_free(
            objective, x0, tol=tol, xtol=xtol, max_iter=max_iter, restarts=restarts, initial_step=0.1
        )
    if out.fun >= start.energy:
        return basis_e, basis_p, start
    be, bp = split(out.x)
    return be, bp, scf(params, be, bp, opts)


# ---------------------------------------------------------------- densities

def _weights(result: ScfResult, which: str):
    if which == "e":
        c, a = result.coeff_e, result.basis_e.array
    elif which == "pcp":
        c, a = result.coeff_pcp, result.basis_p.array
    else:
        raise ValueError(f"particle must be 'e' or 'pcp', got {which!r}")
    p = a[:, None] + a[None, :]
    w = np.outer(c, c) * overlap(a[:, None], a[None, :])
    return w.ravel(), p.ravel()


def hf_density(result: ScfResult, which: str, r) -> np.ndarray:
    """``rho(r) = |sum_i c_i g_i(r)|^2`` evaluated at ``r``.

    Written as a sum of normalized Gaussian densities
    ``sum_ij c_i c_j S_ij (p/pi)^(3/2) exp(-p r^2)`` with ``p = a_i + a_j``.
    """
    w, p = _weights(result, which)
    r = np.asarray(r, dtype=float)
    return np.sum(
        w * (p / math.pi) ** 1.5 * np.exp(-np.multiply.outer(r * r, p)), axis=-1
    )


def _convolution(result: ScfResult):
    we, pe = _weights(result, "e")
    wp, pp = _weights(result, "pcp")
    w = np.outer(we, wp).ravel()
    c = (np.multiply.outer(pe, pp) / np.add.outer(pe, pp)).ravel()
    return w, c


def hf_intracule(result: ScfResult, r) -> np.ndarray:
    """Radial distribution ``D(r) = 4 pi r^2 rho_int(r)`` of the electron/PCP distance.

    The intracule of two concentric Gaussian densities with exponents ``p`` and
    ``q`` is a normalized Gaussian with exponent ``pq / (p + q)``.
    """
    w, c = _convolution(result)
    r = np.asarray(r, dtype=float)
    g = (c / math.pi) ** 1.5 * np.exp(-np.multiply.outer(r * r, c))
    return 4.0 * math.pi * r * r * np.sum(w * g, axis=-1)


def hf_intracule_moments(result: ScfResult) -> tuple[float, float]:
    """Analytic ``<r>`` and ``<r^2>`` of the mean-field intracule."""
    w, c = _convolution(result)
    return float(np.sum(w * TWO_OVER_SQRT_PI / np.sqrt(c))), float(np.sum(w * 1.5 / c))


def hf_one_moment(result: ScfResult, which: str) -> float:
    """Analytic ``<r^2>`` of one particle's mean-field density."""
    w, p = _weights(result, which)
    return float(np.sum(w * 1.5 / p))


def hf_extent(result: ScfResult) -> float:
    """A distance beyond which the mean-field intracule is negligible (``< 1e-16``)."""
    _, c = _convolution(result)
    return math.sqrt(40.0 / c.min())
