"""End-to-end acceptance checks against the published tables.

Each test prints one ``PASS``/``FAIL`` line with the worst deviation and the
offending points, then asserts. Tolerances are the stated ones; none are
relaxed for known discrepancies.
"""

import filecmp
import functools
import math
import time

import numpy as np
import pytest

from conftest import densities, solved
from exharm.adiabatic import adiabatic_report
from exharm.correlation import correlation_report, delta_intracule, exact_components
from exharm.mchf import ScfOptions, hf_intracule_moments, scf, table_basis
from exharm.model import derive_params
from exharm.radial import relative_ground
from exharm.reference import (
    ADIABATIC, CORRELATION, ENERGIES_EXACT, ENERGIES_MCHF, GRID, MOMENTS, RADII,
)
from exharm.sweep import SweepConfig, run
from test_mchf import _eri_q, _kinetic_q, _overlap_q
from exharm.mchf import attraction_eri, kinetic, overlap

ANOMALY = (1836, 1.0)


@functools.lru_cache(maxsize=None)
def report(m, omega):
    p, sol, res = solved(m, omega)
    return correlation_report(p, sol, res, densities(m, omega))


def _verdict(capsys, number, title, failures, worst, extra=""):
    ok = not failures
    line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}  {title}: max |d| = {worst:.3g}{extra}"
    if failures:
        shown = "; ".join(failures[:6]) + (f"; ... ({len(failures)} total)" if len(failures) > 6 else "")
        line += f"\n    failing: {shown}"
    with capsys.disabled():
        print("\n" + line)
    return ok


class Tally:
    """Collects ``|computed - published|`` over many entries."""

    def __init__(self, tol_abs, tol_rel=0.0):
        self.tol_abs, self.tol_rel = tol_abs, tol_rel
        self.worst = 0.0
        self.failures = []

    def check(self, label, got, want):
        d = abs(got - want)
        self.worst = max(self.worst, d)
        if d > max(self.tol_abs, self.tol_rel * abs(want)):
            self.failures.append(f"{label} got {got:.5g} want {want:.5g}")


def test_criterion_01_exact_energies(capsys):
    t0 = time.perf_counter()
    tally = Tally(1e-3)
    for m, w in GRID:
        sol = relative_ground(derive_params(m, w))
        tally.check(f"({m},{w:g}) E", sol.best_energy + 1.5 * w, ENERGIES_EXACT[(m, w)][0])
    wall = time.perf_counter() - t0
    assert _verdict(capsys, 1, "exact energies", tally.failures, tally.worst, f", {wall:.1f}s")


def test_criterion_02_exact_components(capsys):
    tally = Tally(2e-3)
    names = ("T_e", "T_pcp", "V_ext_e", "V_ext_pcp", "V_ep")
    for m, w in GRID:
        p, sol, _ = solved(m, w)
        got = exact_components(sol, p).as_tuple()
        for name, g, want in zip(names, got, ENERGIES_EXACT[(m, w)][1:]):
            tally.check(f"({m},{w:g}) {name}", g, want)
    assert _verdict(capsys, 2, "exact energy components", tally.failures, tally.worst)


def test_criterion_03_mchf_golden_mode(capsys):
    tally = Tally(2e-3)
    names = ("E", "T_e", "T_pcp", "V_ext_e", "V_ext_pcp", "V_ep")
    slow = []
    for m, w in GRID:
        _, _, res = solved(m, w)
        if not res.converged or res.iterations >= 200:
            slow.append(f"({m},{w:g}) iterations={res.iterations}")
        got = (res.energy,) + res.components.as_tuple()
        for name, g, want in zip(names, got, ENERGIES_MCHF[(m, w)]):
            tally.check(f"({m},{w:g}) {name}", g, want)
    assert _verdict(capsys, 3, "MC-HF energies and components", tally.failures + slow, tally.worst)


def test_criterion_04_moments(capsys):
    exact, mchf = Tally(1e-3), Tally(2e-3)
    for m, w in GRID:
        _, sol, res = solved(m, w)
        r1, r2 = sol.moment(1), sol.moment(2)
        h1, h2 = hf_intracule_moments(res)
        want = MOMENTS[(m, w)]
        exact.check(f"({m},{w:g}) <r>_exact", r1, want[0])
        exact.check(f"({m},{w:g}) var_exact", r2 - r1 * r1, want[2])
        if (m, w) != ANOMALY:
            mchf.check(f"({m},{w:g}) <r>_mchf", h1, want[1])
            mchf.check(f"({m},{w:g}) var_mchf", h2 - h1 * h1, want[3])
    assert _verdict(capsys, 4, "intracule moments (excluding m=1836, w=1 MC-HF)",
                    exact.failures + mchf.failures, max(exact.worst, mchf.worst))


def test_criterion_05_correlation_energies(capsys):
    tally = Tally(2e-3)
    names = ("E_ref_indep", "E_ref_dep", "dT_e", "dT_pcp", "dV_ext_e", "dV_ext_pcp", "dV_ep")
    for m, w in GRID:
        rep = report(m, w)
        got = (rep.e_corr_ref_indep, rep.e_corr_ref_dep) + rep.deltas.as_tuple()
        for name, g, want in zip(names, got, CORRELATION[(m, w)]):
            tally.check(f"({m},{w:g}) {name}", g, want)
    assert _verdict(capsys, 5, "correlation energies", tally.failures, tally.worst)


def test_criterion_06_correlation_radii(capsys):
    tally = Tally(2e-3, 5e-3)
    for m, w in GRID:
        rep = report(m, w)
        want_e, want_p = RADII[(m, w)]
        tally.check(f"({m},{w:g}) r_c_e", rep.radius_e, want_e)
        tally.check(f"({m},{w:g}) r_c_pcp", rep.radius_pcp, want_p)
    assert _verdict(capsys, 6, "correlation radii", tally.failures, tally.worst)


def test_criterion_07_adiabatic(capsys):
    tally = Tally(1e-3)
    names = ("E_ad", "E_non_ad", "Delta_E")
    for m, w in GRID:
        rep = report(m, w)
        ad = adiabatic_report(derive_params(m, w), rep.e_exact, rep.e_corr_ref_dep)
        for name, g, want in zip(names, (ad.e_ad, ad.e_non_ad, ad.delta_e), ADIABATIC[(m, w)]):
            tally.check(f"({m},{w:g}) {name}", g, want)
    assert _verdict(capsys, 7, "adiabatic energies (table-consistent)", tally.failures, tally.worst)


def test_criterion_08_analytic_limits(capsys):
    failures, worst = [], 0.0
    for m in (1, 1836):
        p = derive_params(m, 1e-6)
        sol = relative_ground(p)
        de, dr = abs(sol.best_energy + p.mu / 2), abs(sol.moment(1) - 1.5 / p.mu)
        worst = max(worst, de, dr)
        if de >= 1e-4:
            failures.append(f"hydrogen m={m} |E_r + mu/2| = {de:.3g}")
        if dr >= 1e-3:
            failures.append(f"hydrogen m={m} |<r> - 3/(2mu)| = {dr:.3g}")
        p = derive_params(m, 1e4)
        rel = abs(relative_ground(p).best_energy / (1.5 * p.omega) - 1)
        worst = max(worst, rel)
        if rel >= 0.01:
            failures.append(f"oscillator m={m} relative error {rel:.3g}")
    assert _verdict(capsys, 8, "hydrogen and oscillator limits", failures, worst)


def _symmetry_gaps(w):
    """Largest electron/PCP mismatch of exact and mean-field observables at m = 1."""
    p, sol, _ = solved(1, w)
    d = densities(1, w)
    rep = report(1, w)
    ex = exact_components(sol, p)
    be, _ = table_basis(1, w)
    tight = ScfOptions(energy_tol=1e-15, density_tol=1e-13, max_iter=2000)
    hf = scf(p, be, be, tight)
    return max(
        np.max(np.abs(d.rho_e.rho - d.rho_pcp.rho)),
        np.max(np.abs(d.hill_e.values - d.hill_pcp.values)),
        abs(rep.radius_e - rep.radius_pcp),
        abs(ex.T_e - ex.T_pcp), abs(ex.V_ext_e - ex.V_ext_pcp),
        abs(hf.components.T_e - hf.components.T_pcp),
        abs(hf.components.V_ext_e - hf.components.V_ext_pcp),
        np.max(np.abs(hf.coeff_e - hf.coeff_pcp)),
    )


def test_criterion_09_property_suites(capsys):
    failures, worst = [], 0.0
    for m, w in GRID:
        d = densities(m, w)
        for hill in (d.hill_e, d.hill_pcp):
            s = abs(hill.sum_rule())
            worst = max(worst, s)
            if s >= 1e-5:
                failures.append(f"(a) ({m},{w:g}) {hill.particle} sum rule {s:.2e}")
        p, sol, res = solved(m, w)
        dD = delta_intracule(sol, res)
        s = abs(dD.norm())
        worst = max(worst, s)
        if s > 1e-8 or not dD.D[1] > 0:
            failures.append(f"(b) ({m},{w:g}) int dD = {s:.2e}, dD(h) = {dD.D[1]:.2e}")
        e_exact = report(m, w).e_exact
        if res.energy < e_exact:
            failures.append(f"(c) ({m},{w:g}) E_uncorr {res.energy:.6f} < E_exact {e_exact:.6f}")
    for w in (0.0001, 0.01, 0.1, 1.0, 10.0, 100.0):
        g = _symmetry_gaps(w)
        worst = max(worst, g)
        if g > 1e-10:
            failures.append(f"(d) m=1 w={w:g} electron/PCP mismatch {g:.2e}")
    rng = np.random.default_rng(2024)
    for k in range(100):
        a, b, c, e = np.exp(rng.uniform(math.log(0.01), math.log(50.0), 4))
        mass = float(np.exp(rng.uniform(0, math.log(2000.0))))
        for name, got, want in (
            ("S", overlap(a, b), _overlap_q(a, b)),
            ("T", kinetic(a, b, mass), _kinetic_q(a, b, mass)),
            ("ERI", attraction_eri(a, b, c, e), _eri_q(a, b, c, e)),
        ):
            diff = abs(got - want)
            worst = max(worst, diff)
            if diff > 1e-8 * max(1.0, abs(want)):
                failures.append(f"(e) draw {k} {name} off by {diff:.2e}")
    assert _verdict(capsys, 9, "property suites (a)-(e)", failures, worst)


def test_criterion_10_determinism(tmp_path, capsys):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        assert run(SweepConfig(tasks=("tables",), output_dir=str(out))) == 0
        outs.append(out)
    csvs = sorted(p.relative_to(outs[0]) for p in outs[0].rglob("*.csv"))
    other = sorted(p.relative_to(outs[1]) for p in outs[1].rglob("*.csv"))
    failures = [] if csvs == other else ["file lists differ"]
    failures += [str(rel) for rel in csvs if not filecmp.cmp(outs[0] / rel, outs[1] / rel, shallow=False)]
    assert _verdict(capsys, 10, f"determinism over {len(csvs)} CSV files", failures, float(len(failures)))
