"""Per-leg parking/transit time optimization."""

import math

import pytest

from arp.inner_solver import (PARK_BOUNDS, START_POINT, TIME_WEIGHT,
                              TRANSIT_BOUNDS, LegResult, _leg_dv, fd_gradient,
                              optimize_leg)
from arp.orbits import Orbit, OrbitalElements

MU = 1.32712440018e11
AU = 1.495978707e8
TAU = 59396.0

SOURCE = OrbitalElements(a=1.0 * AU, e=0.0, i=0.0, raan=0.0, argp=0.0,
                         M0=0.0, epoch=TAU)
TARGET = OrbitalElements(a=1.3 * AU, e=0.0, i=0.02, raan=0.3, argp=0.0,
                         M0=2.0, epoch=TAU)


def test_result_stays_in_bounds():
    leg = optimize_leg(SOURCE, TARGET, TAU, MU)
    assert isinstance(leg, LegResult)
    assert PARK_BOUNDS[0] <= leg.t_park <= PARK_BOUNDS[1]
    assert TRANSIT_BOUNDS[0] <= leg.t_transit <= TRANSIT_BOUNDS[1]
    assert leg.f_leg == pytest.approx(
        leg.dv_leg + TIME_WEIGHT * (leg.t_park + leg.t_transit), abs=1e-12)


def test_never_worse_than_the_start_point():
    orb_s = Orbit(SOURCE, MU)
    orb_a = Orbit(TARGET, MU)
    dv0 = _leg_dv(orb_s, orb_a, TAU + START_POINT[0], START_POINT[1], MU)
    f0 = dv0 + TIME_WEIGHT * (START_POINT[0] + START_POINT[1])
    leg = optimize_leg(SOURCE, TARGET, TAU, MU)
    assert leg.f_leg <= f0


def test_deterministic_across_reruns():
    a = optimize_leg(SOURCE, TARGET, TAU, MU)
    b = optimize_leg(SOURCE, TARGET, TAU, MU)
    assert a == b


def test_close_to_coarse_grid_optimum():
    # 10-day grid upper-bounds the optimum landscape; the local solver must
    # land within 1% of it
    orb_s = Orbit(SOURCE, MU)
    orb_a = Orbit(TARGET, MU)
    best = math.inf
    park = PARK_BOUNDS[0]
    while park <= PARK_BOUNDS[1]:
        transit = TRANSIT_BOUNDS[0]
        while transit <= TRANSIT_BOUNDS[1]:
            try:
                dv = _leg_dv(orb_s, orb_a, TAU + park, transit, MU)
            except Exception:
                transit += 10.0
                continue
            best = min(best, dv + TIME_WEIGHT * (park + transit))
            transit += 10.0
        park += 10.0
    leg = optimize_leg(SOURCE, TARGET, TAU, MU)
    assert leg.f_leg <= best * 1.01


def test_fd_gradient_on_a_quadratic():
    g = lambda x: 3.0 * x[0] ** 2 + 2.0 * x[0] * x[1] + x[1] ** 2
    gx, gy = fd_gradient(g, (1.0, 2.0))
    assert gx == pytest.approx(6.0 * 1.0 + 2.0 * 2.0, rel=1e-5)
    assert gy == pytest.approx(2.0 * 1.0 + 2.0 * 2.0, rel=1e-5)
