"""Lambert problem solver and rendezvous impulse computation.

Solves for the zero-revolution prograde conic connecting two heliocentric
positions in a fixed time of flight, using the universal-variable
formulation with bisection on the time equation.
"""

import math
from dataclasses import dataclass

from arp.orbits import DAY_S, Orbit, OrbitalElements

_TWO_PI = 2.0 * math.pi
_TIME_TOL = 1e-11          # relative tolerance on the time equation
# acceptance tolerance when the psi bracket is exhausted at float
# resolution before the primary tolerance is met
_TIME_TOL_FALLBACK = 1e-9
_MAX_ITER = 80
_PSI_MAX = 4.0 * math.pi * math.pi
_PSI_FLOOR = -1.0e5        # hyperbolic limit before cosh overflows
# within this angle of a 180 degree transfer the geometry no longer defines a
# plane reliably; the transfer plane is declared to be the ecliptic instead
_PLANE_DECLARE_TOL = 1e-6
# closer than this the velocity reconstruction loses all precision
_SINGULAR_TOL = 1e-9


class LambertError(RuntimeError):
    """Base class for Lambert solver failures."""


class SingularGeometryError(LambertError):
    """Transfer geometry does not define a usable plane."""


class LambertConvergenceError(LambertError):
    """The time-equation iteration did not converge within the cap."""


@dataclass(frozen=True)
class LambertSolution:
    """Departure/arrival velocities (km/s) of the connecting arc."""

    v1: tuple
    v2: tuple
    iterations: int
    converged: bool


@dataclass(frozen=True)
class ImpulsePair:
    """The two rendezvous impulses (km/s vectors) of one transfer leg."""

    dv1: tuple
    dv2: tuple


def _stumpff(psi: float):
    """Stumpff functions C2(psi), C3(psi).

    Series on [-1, 1] and half-angle identities outside it. The naive
    (1 - cos(sqrt(psi))) / psi form cancels catastrophically near psi = 0,
    and near-parabolic arcs put the time-equation root exactly there.
    """
    if psi > 1.0:
        s = math.sqrt(psi)
        half = math.sin(0.5 * s)
        return 2.0 * half * half / psi, (s - math.sin(s)) / (s * psi)
    if psi < -1.0:
        s = math.sqrt(-psi)
        half = math.sinh(0.5 * s)
        return -2.0 * half * half / psi, (math.sinh(s) - s) / (s * -psi)
    c2 = term2 = 0.5
    c3 = term3 = 1.0 / 6.0
    for k in range(1, 16):
        term2 *= -psi / ((2.0 * k + 1.0) * (2.0 * k + 2.0))
        term3 *= -psi / ((2.0 * k + 2.0) * (2.0 * k + 3.0))
        c2 += term2
        c3 += term3
        if abs(term2) < 1e-18 and abs(term3) < 1e-18:
            break
    return c2, c3


def lambert(r1, r2, tof: float, mu: float) -> LambertSolution:
    """Solve Lambert's problem for the zero-revolution prograde arc.

    r1 and r2 are position 3-vectors in km, tof is the time of flight in
    days. Returns the velocities at both ends of the arc. Raises
    SingularGeometryError for (near-)0 or (near-)180 degree transfer angles
    and LambertConvergenceError if the root-find stalls.
    """
    if tof <= 0.0:
        raise ValueError(f"time of flight must be positive, got {tof}")
    r1x, r1y, r1z = float(r1[0]), float(r1[1]), float(r1[2])
    r2x, r2y, r2z = float(r2[0]), float(r2[1]), float(r2[2])
    r1n = math.sqrt(r1x * r1x + r1y * r1y + r1z * r1z)
    r2n = math.sqrt(r2x * r2x + r2y * r2y + r2z * r2z)
    if r1n == 0.0 or r2n == 0.0:
        raise ValueError("positions must be non-zero vectors")

    cx = r1y * r2z - r1z * r2y
    cy = r1z * r2x - r1x * r2z
    cz = r1x * r2y - r1y * r2x
    cn = math.sqrt(cx * cx + cy * cy + cz * cz)
    dot = r1x * r2x + r1y * r2y + r1z * r2z
    angle = math.atan2(cn, dot)

    if math.pi - angle < _SINGULAR_TOL:
        raise SingularGeometryError(
            f"transfer angle within {_SINGULAR_TOL} rad of 180 degrees")
    if angle < _SINGULAR_TOL:
        raise SingularGeometryError(
            f"transfer angle within {_SINGULAR_TOL} rad of 0 degrees")

    if math.pi - angle < _PLANE_DECLARE_TOL:
        # plane declared to be the ecliptic: sweep taken as the short way
        dnu = angle
    elif cz >= 0.0:
        dnu = angle
    else:
        dnu = _TWO_PI - angle

    A = math.sin(dnu) * math.sqrt(r1n * r2n / (1.0 - math.cos(dnu)))

    tof_s = tof * DAY_S
    rtmu = math.sqrt(mu)
    lo = -_PSI_MAX
    hi = _PSI_MAX * (1.0 - 1e-12)
    # residuals of the time equation at the bracket ends, once known
    e_lo = None
    e_hi = None
    # short flight times need strongly hyperbolic arcs (psi far below
    # -4*pi^2); push the lower bound out until it brackets the target
    while lo > _PSI_FLOOR:
        c2, c3 = _stumpff(lo)
        y = r1n + r2n + A * (lo * c3 - 1.0) / math.sqrt(c2)
        if y < 0.0:
            break
        t = (math.sqrt(y / c2) ** 3 * c3 + A * math.sqrt(y)) / rtmu
        if t < tof_s:
            e_lo = t - tof_s
            break
        lo *= 2.0
    y = t = 0.0
    it = 0
    converged = False
    last_side = 0
    best_err = math.inf
    best_y = 0.0
    while it < _MAX_ITER:
        it += 1
        if e_lo is not None and e_hi is not None:
            # false position with Illinois damping of the stagnant end
            psi = lo - e_lo * (hi - lo) / (e_hi - e_lo)
            if not lo < psi < hi:
                psi = 0.5 * (lo + hi)
        else:
            psi = 0.5 * (lo + hi)
        c2, c3 = _stumpff(psi)
        y = r1n + r2n + A * (psi * c3 - 1.0) / math.sqrt(c2)
        if y < 0.0:
            # A > 0 with psi too low drives y negative; shrink from below
            lo = psi
            e_lo = None
            last_side = 0
            continue
        t = (math.sqrt(y / c2) ** 3 * c3 + A * math.sqrt(y)) / rtmu
        err = t - tof_s
        if abs(err) < best_err:
            best_err = abs(err)
            best_y = y
        if abs(err) < _TIME_TOL * tof_s:
            converged = True
            break
        if t < tof_s:
            lo = psi
            e_lo = err
            if last_side == -1 and e_hi is not None:
                e_hi *= 0.5
            last_side = -1
        else:
            hi = psi
            e_hi = err
            if last_side == 1 and e_lo is not None:
                e_lo *= 0.5
            last_side = 1
        if hi - lo <= 1e-16 * max(1.0, abs(lo), abs(hi)):
            break
    if not converged and best_err <= _TIME_TOL_FALLBACK * tof_s:
        # iterations or bracket resolution exhausted; the best iterate is
        # still orders of magnitude inside any physically meaningful accuracy
        y = best_y
        converged = True
    if not converged:
        raise LambertConvergenceError(
            f"no convergence in {it} iterations: target tof {tof_s:.6e} s, "
            f"reached {t:.6e} s, psi bracket [{lo:.6e}, {hi:.6e}]")

    f = 1.0 - y / r1n
    g = A * math.sqrt(y / mu)
    gdot = 1.0 - y / r2n
    v1 = ((r2x - f * r1x) / g, (r2y - f * r1y) / g, (r2z - f * r1z) / g)
    v2 = ((gdot * r2x - r1x) / g, (gdot * r2y - r1y) / g, (gdot * r2z - r1z) / g)
    return LambertSolution(v1=v1, v2=v2, iterations=it, converged=True)


def propagate_state(r0, v0, dt: float, mu: float):
    """Propagate a cartesian state by dt days along its two-body conic.

    Universal-variable Kepler propagation; unlike the element machinery this
    handles hyperbolic transfer arcs, which is needed when sampling exported
    trajectories. Returns (r, v) tuples.
    """
    r0x, r0y, r0z = float(r0[0]), float(r0[1]), float(r0[2])
    v0x, v0y, v0z = float(v0[0]), float(v0[1]), float(v0[2])
    if dt == 0.0:
        return (r0x, r0y, r0z), (v0x, v0y, v0z)
    if dt < 0.0:
        raise ValueError("dt must be non-negative")
    dt_s = dt * DAY_S
    r0n = math.sqrt(r0x * r0x + r0y * r0y + r0z * r0z)
    v02 = v0x * v0x + v0y * v0y + v0z * v0z
    rdotv = r0x * v0x + r0y * v0y + r0z * v0z
    rtmu = math.sqrt(mu)
    alpha = 2.0 / r0n - v02 / mu
    hi = math.inf
    if alpha > 1e-12:
        # Elliptic: the state is periodic, so reduce dt to one revolution and
        # bound chi by the single-period value (psi stays within [0, 4 pi^2]).
        period_s = 2.0 * math.pi / (rtmu * alpha * math.sqrt(alpha))
        dt_s = math.fmod(dt_s, period_s)
        if dt_s == 0.0:
            return (r0x, r0y, r0z), (v0x, v0y, v0z)
        hi = 2.0 * math.pi / math.sqrt(alpha)
        chi = rtmu * dt_s * alpha
    elif alpha < -1e-12:
        sa = math.sqrt(-1.0 / alpha)
        num = -2.0 * mu * alpha * dt_s
        den = rdotv + math.sqrt(-mu / alpha) * (1.0 - r0n * alpha)
        chi = sa * math.log(abs(num / den))
    else:
        chi = rtmu * dt_s / r0n
    target = rtmu * dt_s
    lo = 0.0
    r = r0n
    psi = c2 = c3 = 0.0
    converged = False
    for _ in range(100):
        psi = chi * chi * alpha
        c2, c3 = _stumpff(psi)
        chi2 = chi * chi
        tval = (chi2 * chi * c3 + (rdotv / rtmu) * chi2 * c2
                + r0n * chi * (1.0 - psi * c3))
        r = chi2 * c2 + (rdotv / rtmu) * chi * (1.0 - psi * c3) + r0n * (1.0 - psi * c2)
        err = target - tval
        if abs(err) < 1e-12 * abs(target):
            converged = True
            break
        # tval is monotone in chi (its derivative is r > 0), so the sign of
        # err narrows a bracket; bisect whenever the Newton step escapes it.
        if err > 0.0:
            lo = max(lo, chi)
        else:
            hi = min(hi, chi)
        step = chi + err / r
        if lo < step < hi:
            chi = step
        elif math.isinf(hi):
            chi = 2.0 * max(chi, lo) + 1.0
        else:
            chi = 0.5 * (lo + hi)
        if math.isfinite(hi) and hi - lo <= 1e-15 * max(1.0, abs(hi)):
            converged = True
            break
    if not converged:
        raise LambertConvergenceError(
            f"universal propagation did not converge for dt {dt} days")
    chi2 = chi * chi
    f = 1.0 - chi2 * c2 / r0n
    g = dt_s - chi2 * chi * c3 / rtmu
    gdot = 1.0 - chi2 * c2 / r
    fdot = rtmu / (r * r0n) * chi * (psi * c3 - 1.0)
    return ((f * r0x + g * v0x, f * r0y + g * v0y, f * r0z + g * v0z),
            (fdot * r0x + gdot * v0x, fdot * r0y + gdot * v0y, fdot * r0z + gdot * v0z))


def transfer_impulses(s: OrbitalElements, a: OrbitalElements, tau: float,
                      t: float, mu: float) -> ImpulsePair:
    """Impulses for departing orbit s at epoch tau and rendezvousing with a.

    tau is the departure epoch (MJD days) and t the transit time in days:
    dv1 injects from s onto the Lambert arc, dv2 matches the target's
    velocity on arrival at tau + t.
    """
    r1, vs = Orbit(s, mu).state_at(tau)
    r2, va = Orbit(a, mu).state_at(tau + t)
    sol = lambert(r1, r2, t, mu)
    dv1 = (sol.v1[0] - vs[0], sol.v1[1] - vs[1], sol.v1[2] - vs[2])
    dv2 = (va[0] - sol.v2[0], va[1] - sol.v2[1], va[2] - sol.v2[2])
    return ImpulsePair(dv1=dv1, dv2=dv2)
