import math

import numpy as np
import pytest

import crownlab


def test_root_systems():
    a2 = crownlab.root_system("A2m1")
    assert a2["weyl_order"] == 6
    assert a2["dim_n"] == 3
    np.testing.assert_allclose(a2["rho"], [1.0, 0.0, -1.0])
    assert crownlab.root_system("A1m2")["multiplicities"] == [2]


def test_majorization():
    assert crownlab.majorization_margin([1.0, 0.0, -1.0], [2.0, 0.0, -2.0]) >= 0
    assert crownlab.majorization_margin([3.0, 0.0, -3.0], [2.0, 0.0, -2.0]) < 0


def test_c_function_plancherel():
    nu = 1.3
    c = crownlab.c_function("A1m1", [1j * nu, -1j * nu])
    assert abs(1 / abs(c) ** 2 - math.pi * nu * math.tanh(math.pi * nu)) < 1e-10


def test_series_matches_integral():
    h, t = 0.75, 5.0
    lam = [1j * t, -1j * t]
    s = crownlab.spherical_series("A1m1", lam, [h, -h], [0.0, 0.0])
    g = np.diag([math.exp(h), math.exp(-h)]).astype(complex)
    i = crownlab.spherical_integral("sl2r", lam, g, [0.0, 0.0])
    assert abs(s - i) < 1e-6 * abs(i)


def test_heat_kernel_real_slice():
    r = 1.0
    g = np.diag([math.exp(r / 2), math.exp(-r / 2)]).astype(complex)
    v = crownlab.heat_kernel(1.0, g, [0.0, 0.0])
    ref = crownlab.hyperbolic_plane_heat_kernel(1.0, r)
    assert abs(v - ref) < 1e-5 * ref


def test_guard_exception():
    with pytest.raises(crownlab.NumericalGuard):
        crownlab.spherical_series("A1m1", [1.0, -1.0], [0.5, -0.5], [0.0, 0.0])


def test_campaign_deterministic():
    a = crownlab.verify_convexity(3, "real", 50, 11)
    b = crownlab.verify_convexity(3, "real", 50, 11, threads=2)
    assert a == b
    assert a["counts"]["violations"] == 0
    sample, verdict = crownlab.check_sample(2, "complex", 1, 0)
    assert sample["n"] == 2 and verdict["status"] in ("confirmed", "skipped_borderline")
