import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightint import kernels, phi1
from weightint.intop import PHI1_SWITCH, _phi1_direct, _phi1_series
from weightint.bench import make_rng


def test_phi1_values():
    assert phi1(0, 5) == 5
    assert abs(phi1(-1, 1) - (1 - math.exp(-1))) <= 1e-15
    assert abs(phi1(-1, 1) - 0.6321205588) < 1e-10
    assert abs(phi1(1j, math.pi) - 2j) <= 1e-15
    assert phi1(3 - 2j, 0.0) == 0


def test_phi1_matches_mpmath_reference():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    rng = make_rng(3)
    for _ in range(200):
        z = complex(-abs(rng.normal()) * 10 ** rng.uniform(-7, 1), rng.normal() * 10 ** rng.uniform(-7, 1))
        t = 10 ** rng.uniform(-3, 2)
        ref = complex(mpmath.expm1(mpmath.mpc(z) * t) / mpmath.mpc(z))
        assert abs(phi1(z, t) - ref) <= 4e-15 * abs(ref)


@pytest.mark.parametrize("angle", np.linspace(0, 2 * np.pi, 17))
def test_branches_agree_at_switch(angle):
    z = PHI1_SWITCH * cmath.exp(1j * angle)
    for t in (1.0, 0.5, 3.0):
        zz = z / t
        a, b = _phi1_series(zz, t), _phi1_direct(zz, t)
        assert abs(a - b) <= 1e-14 * abs(b)


@settings(max_examples=200, deadline=None)
@given(
    re=st.floats(-50, 0),
    im=st.floats(-50, 50),
    t=st.floats(0, 100),
)
def test_phi1_solves_the_defining_integral(re, im, t):
    # phi1(z, t) = int_0^t exp(z s) ds: derivative in t is exp(z t)
    z = complex(re, im)
    h = 1e-6 * max(t, 1.0)
    if t < h:
        return
    fd = (phi1(z, t + h) - phi1(z, t - h)) / (2 * h)
    scale = 1.0 + abs(z) ** 2 * h + abs(z) ** 3 * h * h * max(t, 1.0)
    assert abs(fd - cmath.exp(z * t)) <= 1e-5 * scale


def test_array_kernel_matches_scalar(backend):
    rng = make_rng(11)
    z = rng.normal(size=500) * 10.0 ** rng.uniform(-8, 1, 500) + 1j * rng.normal(size=500) * 10.0 ** rng.uniform(-8, 1, 500)
    for t in (0.0, 0.1, 1.0, 37.0):
        got = kernels.phi1_array(z, t, impl=backend)
        want = np.array([phi1(x, t) for x in z])
        np.testing.assert_allclose(got, want, rtol=1e-14, atol=0)


def test_backends_agree():
    impls = kernels.available_backends()
    if len(impls) < 2:
        pytest.skip("compiled kernels not built")
    py, cy = impls["python"], impls["cython"]
    rng = make_rng(5)
    n = 7
    s = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    z = rng.normal(size=(n, n)) - 0.1 + 1j * rng.normal(size=(n, n))
    rho = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    lam = np.sort(rng.normal(size=n))
    times = np.linspace(0, 20, 301)
    for name, args in [
        ("integral_matrix", (s, z, 3.3)),
        ("integral_expectation", (s, z, 3.3)),
        ("evolve_pure", (c, s, lam, times, 1.3)),
        ("evolve_density", (rho, s, lam, times, 1.3)),
    ]:
        fn = getattr(kernels, name)
        np.testing.assert_allclose(fn(*args, impl=cy), fn(*args, impl=py), rtol=1e-12, atol=1e-12, err_msg=name)
    v = rng.normal(size=301) + 1j * rng.normal(size=301)
    a = kernels.trapezoid_weighted(v, times, 0.3, -1.1, impl=cy)
    b = kernels.trapezoid_weighted(v, times, 0.3, -1.1, impl=py)
    assert abs(a - b) <= 1e-12 * abs(b)


def test_backend_name():
    assert kernels.BACKEND in kernels.available_backends()


def test_long_grid_has_no_phase_drift():
    # compiled kernels advance phases by recurrence; compare with direct exponentials
    rng = make_rng(13)
    n = 5
    lam = np.sort(rng.normal(size=n)) * 3.0
    s = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    rho = np.outer(c, c.conj())
    times = np.linspace(0.0, 500.0, 100_001)
    for name, first in (("evolve_pure", c), ("evolve_density", rho)):
        got = getattr(kernels, name)(first, s, lam, times, 0.9)
        want = getattr(kernels, name)(first, s, lam, times, 0.9, impl=kernels.available_backends()["python"])
        assert np.max(np.abs(got - want)) <= 1e-12 * np.max(np.abs(want))
