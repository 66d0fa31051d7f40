"""Keplerian two-body machinery: element/state conversions and propagation.

Units at the module boundary are km, km/s and days (Modified Julian Date);
all internal computation is done in seconds. Only elliptic orbits are
supported.
"""

import math
from dataclasses import dataclass

DAY_S = 86400.0

_TWO_PI = 2.0 * math.pi
_KEPLER_TOL = 1e-13
_NEWTON_MAX_ITER = 50
# below these thresholds the node / periapsis direction is numerically
# meaningless and the corresponding angle is pinned to zero
_CIRCULAR_E = 1e-11
_EQUATORIAL_I = 1e-11


class OrbitError(ValueError):
    """Input outside the elliptic two-body domain."""


def _reduce_angle(x: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    x = math.fmod(x, _TWO_PI)
    if x < 0.0:
        x += _TWO_PI
    return 0.0 if x >= _TWO_PI else x


@dataclass(frozen=True)
class OrbitalElements:
    """Classical elliptic orbital elements.

    a is the semi-major axis in km, angles are radians and the epoch (the
    instant at which the mean anomaly equals M0) is in MJD days. Angles are
    reduced to [0, 2*pi) on construction.
    """

    a: float
    e: float
    i: float
    raan: float
    argp: float
    M0: float
    epoch: float

    def __post_init__(self):
        if not self.a > 0.0:
            raise OrbitError(f"semi-major axis must be positive, got {self.a}")
        if not 0.0 <= self.e < 1.0:
            raise OrbitError(f"eccentricity must be in [0, 1), got {self.e}")
        for name in ("i", "raan", "argp", "M0"):
            object.__setattr__(self, name, _reduce_angle(getattr(self, name)))


@dataclass(frozen=True)
class StateVector:
    """Heliocentric cartesian state: position (km), velocity (km/s), epoch (MJD)."""

    r: tuple
    v: tuple
    epoch: float

    def __post_init__(self):
        object.__setattr__(self, "r", (float(self.r[0]), float(self.r[1]), float(self.r[2])))
        object.__setattr__(self, "v", (float(self.v[0]), float(self.v[1]), float(self.v[2])))
        if self.r[0] == 0.0 and self.r[1] == 0.0 and self.r[2] == 0.0:
            raise OrbitError("position vector must be non-zero")


def solve_kepler(M: float, e: float) -> float:
    """Solve Kepler's equation E - e*sin(E) = M for the eccentric anomaly.

    Newton iteration seeded with M (or pi for high eccentricities), with a
    bisection fallback for the rare pathological cases. The result stays in
    the same 2*pi branch as M and satisfies the equation to 1e-13.
    """
    if not 0.0 <= e < 1.0:
        raise OrbitError(f"eccentricity must be in [0, 1), got {e}")
    k = math.floor(M / _TWO_PI)
    m = M - _TWO_PI * k
    E = m if e < 0.8 else math.pi
    for _ in range(_NEWTON_MAX_ITER):
        f = E - e * math.sin(E) - m
        if abs(f) < _KEPLER_TOL:
            return E + _TWO_PI * k
        E -= f / (1.0 - e * math.cos(E))
    # Newton failed to settle; E - m = e*sin(E) bounds the root to [m-e, m+e]
    # and the residual is monotone enough there for bisection.
    lo, hi = m - e, m + e
    for _ in range(200):
        E = 0.5 * (lo + hi)
        f = E - e * math.sin(E) - m
        if abs(f) < _KEPLER_TOL:
            break
        if f > 0.0:
            hi = E
        else:
            lo = E
    return E + _TWO_PI * k


class Orbit:
    """Propagation cache for one body.

    Precomputes the perifocal basis and mean motion of a fixed element set so
    that repeated epoch queries cost one Kepler solve plus a handful of
    multiplications. This is the hot path under Lambert cost evaluations.
    """

    __slots__ = ("a", "e", "n", "M0", "epoch", "mu", "_b", "_px", "_py", "_pz",
                 "_qx", "_qy", "_qz")

    def __init__(self, el: OrbitalElements, mu: float):
        if mu <= 0.0:
            raise OrbitError(f"gravitational parameter must be positive, got {mu}")
        self.a = el.a
        self.e = el.e
        self.n = math.sqrt(mu / (el.a * el.a * el.a))
        self.M0 = el.M0
        self.epoch = el.epoch
        self.mu = mu
        self._b = el.a * math.sqrt(1.0 - el.e * el.e)
        ci = math.cos(el.i)
        si = math.sin(el.i)
        co = math.cos(el.raan)
        so = math.sin(el.raan)
        cw = math.cos(el.argp)
        sw = math.sin(el.argp)
        self._px = co * cw - so * sw * ci
        self._py = so * cw + co * sw * ci
        self._pz = sw * si
        self._qx = -co * sw - so * cw * ci
        self._qy = -so * sw + co * cw * ci
        self._qz = cw * si

    def state_at(self, at: float):
        """Position and velocity tuples (km, km/s) at epoch `at` (MJD days)."""
        M = self.M0 + self.n * ((at - self.epoch) * DAY_S)
        E = solve_kepler(M, self.e)
        cE = math.cos(E)
        sE = math.sin(E)
        x = self.a * (cE - self.e)
        y = self._b * sE
        Edot = self.n / (1.0 - self.e * cE)
        vx = -self.a * sE * Edot
        vy = self._b * cE * Edot
        return (
            (x * self._px + y * self._qx, x * self._py + y * self._qy, x * self._pz + y * self._qz),
            (vx * self._px + vy * self._qx, vx * self._py + vy * self._qy, vx * self._pz + vy * self._qz),
        )

    def position_at(self, at: float):
        """Position tuple (km) at epoch `at` (MJD days)."""
        M = self.M0 + self.n * ((at - self.epoch) * DAY_S)
        E = solve_kepler(M, self.e)
        x = self.a * (math.cos(E) - self.e)
        y = self._b * math.sin(E)
        return (x * self._px + y * self._qx, x * self._py + y * self._qy, x * self._pz + y * self._qz)


def elements_to_state(el: OrbitalElements, mu: float, at: float) -> StateVector:
    """Propagate elements to a cartesian state at epoch `at` (MJD days)."""
    r, v = Orbit(el, mu).state_at(at)
    return StateVector(r, v, at)


def state_to_elements(sv: StateVector, mu: float) -> OrbitalElements:
    """Recover classical elements from an elliptic cartesian state.

    Degenerate geometries follow fixed conventions: near-circular orbits get
    argp = 0 with the anomaly measured from the ascending node, and
    near-equatorial orbits get raan = 0 with the node pinned to +x.
    """
    if mu <= 0.0:
        raise OrbitError(f"gravitational parameter must be positive, got {mu}")
    rx, ry, rz = sv.r
    vx, vy, vz = sv.v
    r = math.sqrt(rx * rx + ry * ry + rz * rz)
    v2 = vx * vx + vy * vy + vz * vz
    energy = 0.5 * v2 - mu / r
    if energy >= 0.0:
        raise OrbitError(f"state is not elliptic (specific energy {energy} >= 0)")
    a = -mu / (2.0 * energy)

    hx = ry * vz - rz * vy
    hy = rz * vx - rx * vz
    hz = rx * vy - ry * vx
    h = math.sqrt(hx * hx + hy * hy + hz * hz)
    if h == 0.0:
        raise OrbitError("degenerate rectilinear state (zero angular momentum)")
    ux, uy, uz = hx / h, hy / h, hz / h

    rv = rx * vx + ry * vy + rz * vz
    c1 = v2 / mu - 1.0 / r
    c2 = rv / mu
    ex = c1 * rx - c2 * vx
    ey = c1 * ry - c2 * vy
    ez = c1 * rz - c2 * vz
    e = math.sqrt(ex * ex + ey * ey + ez * ez)

    # atan2 keeps tiny inclinations resolvable where acos(hz/h) cannot
    i = math.atan2(math.hypot(hx, hy), hz)

    # ascending node direction (z x h); pinned to +x when equatorial
    nx, ny = -hy, hx
    nn = math.sqrt(nx * nx + ny * ny)
    if i < _EQUATORIAL_I or nn == 0.0:
        raan = 0.0
        nx, ny = 1.0, 0.0
    else:
        raan = _reduce_angle(math.atan2(ny, nx))
        nx, ny = nx / nn, ny / nn

    def _plane_angle(ax, ay, az, bx, by, bz):
        # angle from in-plane vector a to in-plane vector b, positive about h
        cosv = ax * bx + ay * by + az * bz
        cx = ay * bz - az * by
        cy = az * bx - ax * bz
        cz = ax * by - ay * bx
        sinv = ux * cx + uy * cy + uz * cz
        return math.atan2(sinv, cosv)

    if e < _CIRCULAR_E:
        argp = 0.0
        nu = _plane_angle(nx, ny, 0.0, rx / r, ry / r, rz / r)
    else:
        exn, eyn, ezn = ex / e, ey / e, ez / e
        argp = _reduce_angle(_plane_angle(nx, ny, 0.0, exn, eyn, ezn))
        nu = _plane_angle(exn, eyn, ezn, rx / r, ry / r, rz / r)

    E = 2.0 * math.atan2(math.sqrt(1.0 - e) * math.sin(0.5 * nu),
                         math.sqrt(1.0 + e) * math.cos(0.5 * nu))
    M0 = _reduce_angle(E - e * math.sin(E))
    return OrbitalElements(a=a, e=e, i=i, raan=raan, argp=argp, M0=M0, epoch=sv.epoch)


def period(el: OrbitalElements, mu: float) -> float:
    """Orbital period in days (Kepler's third law)."""
    if mu <= 0.0:
        raise OrbitError(f"gravitational parameter must be positive, got {mu}")
    return _TWO_PI * math.sqrt(el.a ** 3 / mu) / DAY_S
