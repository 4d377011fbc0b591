import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sint
from scipy.special import erf

from exharm.mchf import (
    GaussianBasis, LinearDependenceError, ScfOptions, attraction_eri, hf_density, hf_extent,
    hf_intracule, hf_intracule_moments, hf_one_moment, kinetic, optimize_exponents, overlap,
    quadratic_moment, read_basis_file, scf, table_basis, write_basis_file,
)
from exharm.model import derive_params

exps = st.floats(min_value=1e-3, max_value=1e3)


# ---------------------------------------------------------------- integral oracles

def _g(a, r):
    return (2.0 * a / math.pi) ** 0.75 * np.exp(-a * r * r)


def _radial(f):
    return sint.quad(lambda r: 4 * math.pi * r * r * f(r), 0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)[0]


def _overlap_q(a, b):
    return _radial(lambda r: _g(a, r) * _g(b, r))


def _kinetic_q(a, b, mass):
    # (1/2m) int grad g_a . grad g_b
    return _radial(lambda r: (2 * a * r) * (2 * b * r) * _g(a, r) * _g(b, r)) / (2 * mass)


def _r2_q(a, b):
    return _radial(lambda r: r * r * _g(a, r) * _g(b, r))


def _eri_q(ae, be, ap, bp):
    p, q = ae + be, ap + bp
    s_e, s_p = _overlap_q(ae, be), _overlap_q(ap, bp)

    def f(r):
        pot = erf(math.sqrt(q) * r) / r if r > 0 else 2 * math.sqrt(q / math.pi)
        return (p / math.pi) ** 1.5 * math.exp(-p * r * r) * pot

    return s_e * s_p * _radial(f)


def test_integral_examples():
    assert overlap(0.7, 0.7) == pytest.approx(1.0, abs=1e-15)
    assert kinetic(1.0, 1.0, 1.0) == pytest.approx(1.5, abs=1e-15)
    assert quadratic_moment(1.0, 1.0) == pytest.approx(0.75, abs=1e-15)


def test_integrals_against_quadrature():
    rng = np.random.default_rng(7)
    for _ in range(100):
        a, b, c, d = np.exp(rng.uniform(math.log(0.01), math.log(50.0), 4))
        mass = float(np.exp(rng.uniform(0, math.log(2000.0))))
        assert overlap(a, b) == pytest.approx(_overlap_q(a, b), abs=1e-8)
        assert kinetic(a, b, mass) == pytest.approx(_kinetic_q(a, b, mass), abs=1e-8, rel=1e-8)
        assert quadratic_moment(a, b) == pytest.approx(_r2_q(a, b), abs=1e-8, rel=1e-8)
        assert attraction_eri(a, b, c, d) == pytest.approx(_eri_q(a, b, c, d), abs=1e-8, rel=1e-8)


def test_eri_point_charge_limit():
    # a very compact PCP distribution acts as a point charge at the origin
    a = 0.8
    point = 2.0 * math.sqrt(2 * a / math.pi)  # <g_a|1/r|g_a>
    assert attraction_eri(a, a, 1e9, 1e9) == pytest.approx(point, rel=1e-4)


@settings(max_examples=50, deadline=None)
@given(exps, exps)
def test_overlap_is_symmetric_and_bounded(a, b):
    s = overlap(a, b)
    assert s == pytest.approx(overlap(b, a), rel=1e-14)
    assert 0 < s <= 1 + 1e-15


def test_integrals_reject_nonpositive_exponents():
    with pytest.raises(ValueError):
        overlap(-1.0, 1.0)
    with pytest.raises(ValueError):
        attraction_eri(1.0, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        kinetic(1.0, 1.0, 0.0)


# ---------------------------------------------------------------- bases

def test_basis_sorted_and_validated():
    b = GaussianBasis((3.0, 1.0, 2.0))
    assert b.exponents == (1.0, 2.0, 3.0)
    for bad in [(), (1.0, -1.0), (1.0, 1.0), (math.inf,)]:
        with pytest.raises(ValueError):
            GaussianBasis(bad)
    assert GaussianBasis.even_tempered(0.5, 2.0, 3).exponents == (0.5, 1.0, 2.0)


def test_basis_file_round_trip(tmp_path):
    be, bp = table_basis(207, 1.0)
    path = tmp_path / "basis.txt"
    write_basis_file(path, be, bp)
    assert read_basis_file(path) == (be, bp)


def test_basis_file_comments_and_errors(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("# electron\n0.5\n1.5  # tight\n\n\n# pcp\n2.0\n")
    be, bp = read_basis_file(good)
    assert be.exponents == (0.5, 1.5) and bp.exponents == (2.0,)
    one = tmp_path / "one.txt"
    one.write_text("0.5\n1.0\n")
    with pytest.raises(ValueError, match="2 exponent blocks"):
        read_basis_file(one)
    junk = tmp_path / "junk.txt"
    junk.write_text("0.5\nabc\n\n1.0\n")
    with pytest.raises(ValueError, match="abc"):
        read_basis_file(junk)


def test_unknown_table_basis():
    with pytest.raises(KeyError):
        table_basis(3, 1.0)


# ---------------------------------------------------------------- SCF

@pytest.mark.parametrize("m, omega, expected", [(1, 0.01, -0.1064), (1836, 100.0, 288.5608)])
def test_scf_energy_examples(m, omega, expected):
    res = scf(derive_params(m, omega), *table_basis(m, omega))
    assert res.converged and res.iterations < 200
    assert res.energy == pytest.approx(expected, abs=2e-3)


def test_scf_attraction_example():
    res = scf(derive_params(1836, 0.01), *table_basis(1836, 0.01))
    assert res.components.V_ep == pytest.approx(-0.9393, abs=2e-3)


@pytest.mark.parametrize("m, omega", [(1, 1.0), (10, 0.1), (207, 100.0), (1836, 0.0001)])
def test_scf_invariants(m, omega):
    res = scf(derive_params(m, omega), *table_basis(m, omega))
    for c, b in [(res.coeff_e, res.basis_e), (res.coeff_pcp, res.basis_p)]:
        S = overlap(b.array[:, None], b.array[None, :])
        assert c @ S @ c == pytest.approx(1.0, abs=1e-10)
    assert sum(res.components.as_tuple()) == pytest.approx(res.energy, abs=1e-9)
    assert res.components.V_ep <= 0
    assert np.all(np.diff(res.energy_history) <= 1e-11)


@settings(max_examples=20, deadline=None)
@given(
    st.floats(min_value=1.0, max_value=2000.0),
    st.floats(min_value=1e-3, max_value=1e2),
)
def test_noninteracting_single_gaussians_are_exact(m, omega):
    p = derive_params(m, omega)
    be = GaussianBasis((omega / 2,))
    bp = GaussianBasis((m * omega / 2,))
    res = scf(p, be, bp, ScfOptions(interaction=False))
    assert res.energy == pytest.approx(3.0 * omega, rel=1e-12)
    assert res.components.V_ep == 0.0


def test_linear_dependence_names_exponents():
    be = GaussianBasis((1.0, 1.0 + 1e-9, 5.0))
    with pytest.raises(LinearDependenceError, match=r"exponents 1 and 1"):
        scf(derive_params(1, 1.0), be, GaussianBasis((1.0,)))


# ---------------------------------------------------------------- densities

def test_single_gaussian_densities_are_analytic():
    p = derive_params(1, 1.0)
    res = scf(p, GaussianBasis((0.5,)), GaussianBasis((0.5,)), ScfOptions(interaction=False))
    r = np.linspace(0, 5, 11)
    assert np.allclose(hf_density(res, "e", r), (1 / math.pi) ** 1.5 * np.exp(-r * r), atol=1e-14)
    # convolution of two exponent-1 densities has exponent 1/2
    assert np.allclose(hf_intracule(res, r), 4 * math.pi * r * r * (0.5 / math.pi) ** 1.5 * np.exp(-0.5 * r * r), atol=1e-14)
    mean_r, mean_r2 = hf_intracule_moments(res)
    assert mean_r2 == pytest.approx(3.0, rel=1e-14)
    assert mean_r == pytest.approx(2 / math.sqrt(0.5 * math.pi), rel=1e-14)
    assert hf_one_moment(res, "pcp") == pytest.approx(1.5, rel=1e-14)
    with pytest.raises(ValueError):
        hf_density(res, "proton", r)


def test_hf_intracule_normalized_and_moments_match(point):
    _, _, res = point(207, 1.0)
    r = np.linspace(0, hf_extent(res), 20001)
    D = hf_intracule(res, r)
    assert np.trapezoid(D, r) == pytest.approx(1.0, abs=1e-8)
    mean_r, mean_r2 = hf_intracule_moments(res)
    assert np.trapezoid(r * D, r) == pytest.approx(mean_r, rel=1e-7)
    assert np.trapezoid(r * r * D, r) == pytest.approx(mean_r2, rel=1e-7)
    rho = hf_density(res, "e", r)
    assert np.trapezoid(4 * math.pi * r * r * rho, r) == pytest.approx(1.0, abs=1e-8)


# ---------------------------------------------------------------- exponent optimization

@pytest.mark.slow
def test_optimize_from_poor_start_reaches_published_energy():
    p = derive_params(1, 1.0)
    be = bp = GaussianBasis.even_tempered(0.01, 4.0)
    start = scf(p, be, bp).energy
    _, _, res = optimize_exponents(p, be, bp)
    assert res.energy <= start
    assert res.energy == pytest.approx(2.1719, abs=1e-3)


@pytest.mark.slow
def test_optimize_never_worsens_tabulated_basis():
    p = derive_params(207, 1.0)
    be, bp = table_basis(207, 1.0)
    start = scf(p, be, bp).energy
    _, _, res = optimize_exponents(p, be, bp)
    assert res.converged
    assert res.energy <= start
    assert res.energy <= 1.6904 + 1e-4
