"""Deterministic per-leg optimization of parking and transit times.

Each leg of a visiting sequence has two continuous decision variables: the
time x0 spent parked on the current orbit and the transit time x1 of the
Lambert transfer. They are optimized with bounded SLSQP from the fixed
start point (0, 30), so the result is a pure function of the inputs.
"""

import math
import warnings
from dataclasses import dataclass

from scipy.optimize import minimize

from arp.lambert import LambertError, lambert
from arp.orbits import Orbit, OrbitalElements

PARK_BOUNDS = (0.0, 730.0)
TRANSIT_BOUNDS = (1.0, 730.0)
START_POINT = (0.0, 30.0)
TIME_WEIGHT = 2.0 / 30.0       # km/s per day, the scalarization trade-off
FD_STEP = 1e-6                 # forward-difference step, days
MAX_ITER = 1000
# SLSQP sees times in units of 30 days: with raw day units its line search
# crawls and converges prematurely in shallow valleys
_TIME_UNIT = 30.0
# objective value reported when the Lambert solver fails mid-search; large
# enough that no feasible leg competes with it
_FAILURE_PENALTY = 1e9


class LegError(RuntimeError):
    """A leg could not be optimized (Lambert failure at the start point)."""


@dataclass(frozen=True)
class LegResult:
    """Optimized parking/transit times and cost of one leg."""

    t_park: float
    t_transit: float
    dv_leg: float
    f_leg: float
    iterations: int
    converged: bool = True


def _leg_dv(orb_s: Orbit, orb_a: Orbit, departure: float, transit: float, mu: float) -> float:
    """Sum of the two impulse magnitudes (km/s) for one transfer."""
    r1, vs = orb_s.state_at(departure)
    r2, va = orb_a.state_at(departure + transit)
    sol = lambert(r1, r2, transit, mu)
    v1, v2 = sol.v1, sol.v2
    d1x = v1[0] - vs[0]
    d1y = v1[1] - vs[1]
    d1z = v1[2] - vs[2]
    d2x = va[0] - v2[0]
    d2y = va[1] - v2[1]
    d2z = va[2] - v2[2]
    return (math.sqrt(d1x * d1x + d1y * d1y + d1z * d1z)
            + math.sqrt(d2x * d2x + d2y * d2y + d2z * d2z))


def optimize_leg(s: OrbitalElements, a: OrbitalElements, tau: float, mu: float) -> LegResult:
    """Minimize the leg cost |dv1| + |dv2| + (2/30)*(x0 + x1) over (x0, x1).

    x0 (parking, days) is bounded to [0, 730] and x1 (transit, days) to
    [1, 730]; parking elapses on orbit s starting at epoch tau, so the
    transfer departs at tau + x0. The best feasible iterate seen is
    returned, which makes the result never worse than the start point.
    """
    orb_s = Orbit(s, mu)
    orb_a = Orbit(a, mu)

    try:
        dv0 = _leg_dv(orb_s, orb_a, tau + START_POINT[0], START_POINT[1], mu)
    except LambertError as exc:
        raise LegError(f"Lambert failure at the leg start point: {exc}") from exc
    # best feasible iterate: (f, dv, x0, x1)
    best = [dv0 + TIME_WEIGHT * (START_POINT[0] + START_POINT[1]), dv0,
            START_POINT[0], START_POINT[1]]

    lo0, hi0 = PARK_BOUNDS
    lo1, hi1 = TRANSIT_BOUNDS

    def eval_days(x0, x1):
        # project the line-search iterate back into the box
        if x0 < lo0:
            x0 = lo0
        elif x0 > hi0:
            x0 = hi0
        if x1 < lo1:
            x1 = lo1
        elif x1 > hi1:
            x1 = hi1
        try:
            dv = _leg_dv(orb_s, orb_a, tau + x0, x1, mu)
        except LambertError:
            return _FAILURE_PENALTY
        f = dv + TIME_WEIGHT * (x0 + x1)
        if f < best[0]:
            best[0] = f
            best[1] = dv
            best[2] = x0
            best[3] = x1
        return f

    # the last objective evaluation, reused by the gradient's base point
    last = [math.nan, math.nan, 0.0]

    def objective(u):
        x0 = float(u[0]) * _TIME_UNIT
        x1 = float(u[1]) * _TIME_UNIT
        f = eval_days(x0, x1)
        last[0] = x0
        last[1] = x1
        last[2] = f
        return f

    def gradient(u):
        x0 = float(u[0]) * _TIME_UNIT
        x1 = float(u[1]) * _TIME_UNIT
        g0 = last[2] if (last[0] == x0 and last[1] == x1) else eval_days(x0, x1)
        return ((eval_days(x0 + FD_STEP, x1) - g0) / FD_STEP * _TIME_UNIT,
                (eval_days(x0, x1 + FD_STEP) - g0) / FD_STEP * _TIME_UNIT)

    with warnings.catch_warnings():
        # the line search may step outside the box; the projection above
        # makes that benign, so scipy's clip warning is just noise
        warnings.simplefilter("ignore", RuntimeWarning)
        res = minimize(objective,
                       (START_POINT[0] / _TIME_UNIT, START_POINT[1] / _TIME_UNIT),
                       jac=gradient, method="SLSQP",
                       bounds=((lo0 / _TIME_UNIT, hi0 / _TIME_UNIT),
                               (lo1 / _TIME_UNIT, hi1 / _TIME_UNIT)),
                       options={"maxiter": MAX_ITER, "ftol": 1e-8})
    return LegResult(t_park=best[2], t_transit=best[3], dv_leg=best[1],
                     f_leg=best[0], iterations=int(res.nit),
                     converged=bool(res.success))


def fd_gradient(g, x, h: float = FD_STEP):
    """Forward-difference gradient of a 2-variable scalar function."""
    g0 = g((x[0], x[1]))
    return ((g((x[0] + h, x[1])) - g0) / h,
            (g((x[0], x[1] + h)) - g0) / h)
