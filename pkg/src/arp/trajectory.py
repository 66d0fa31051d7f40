"""Sampled heliocentric trajectory export for a scored visiting sequence.

Turns an (instance, permutation, time vector) triple into a plain dict of
parking/transfer arcs sampled as XYZ positions, plus the impulse schedule,
ready for JSON serialization and plotting. Parking arcs of zero duration
are omitted; every transfer contributes one arc and two impulses.
"""

import json
import math

from .lambert import lambert, propagate_state
from .orbits import Orbit, period
from .problem import Instance, evaluate_full

SAMPLES_PER_ARC = 100


def _linspace(lo: float, hi: float, count: int):
    step = (hi - lo) / (count - 1)
    return [lo + step * k for k in range(count - 1)] + [hi]


def _park_arc(body: str, orbit: Orbit, t_start: float, t_end: float) -> dict:
    samples = [list(orbit.position_at(at))
               for at in _linspace(t_start, t_end, SAMPLES_PER_ARC)]
    return {"kind": "park", "body": body, "t_start_mjd": t_start,
            "t_end_mjd": t_end, "samples": samples}


def _transfer_arc(body: str, r1, v1, t_start: float, t_end: float,
                  mu: float) -> dict:
    samples = []
    for dt in _linspace(0.0, t_end - t_start, SAMPLES_PER_ARC):
        r, _ = propagate_state(r1, v1, dt, mu)
        samples.append(list(r))
    return {"kind": "transfer", "body": body, "t_start_mjd": t_start,
            "t_end_mjd": t_end, "samples": samples}


def build_trajectory(instance: Instance, pi, t) -> dict:
    """Sample every arc of the tour described by (pi, t).

    Validation and impulse magnitudes are delegated to evaluate_full, so
    any permutation or time-vector problem raises the same errors the
    scorer would. Returns a dict matching the trajectory JSON layout.
    """
    ev = evaluate_full(instance, pi, t)
    pi = tuple(int(x) for x in pi)
    mu = instance.mu
    tau = instance.tau0
    current = instance.earth
    body = "earth"
    legs = []
    impulses = []
    for i, leg in enumerate(ev.per_leg):
        orbit = Orbit(current, mu)
        # sub-epsilon parking stops have no representable extent at MJD scale
        if tau + leg.t_park > tau:
            legs.append(_park_arc(body, orbit, tau, tau + leg.t_park))
        departure = tau + leg.t_park
        arrival = departure + leg.t_transit
        target = instance.asteroids[pi[i]]
        r1, _ = orbit.state_at(departure)
        r2 = Orbit(target, mu).position_at(arrival)
        sol = lambert(r1, r2, leg.t_transit, mu)
        body = f"ast{pi[i]}"
        legs.append(_transfer_arc(body, r1, sol.v1, departure, arrival, mu))
        impulses.append({"epoch_mjd": departure, "dv_kms": leg.dv_out})
        impulses.append({"epoch_mjd": arrival, "dv_kms": leg.dv_in})
        tau = arrival
        current = target
    earth = Orbit(instance.earth, mu)
    year = period(instance.earth, mu)
    earth_orbit = [list(earth.position_at(at))
                   for at in _linspace(instance.tau0, instance.tau0 + year,
                                       SAMPLES_PER_ARC)]
    return {
        "name": instance.name,
        "tau0": instance.tau0,
        "dv": ev.dv,
        "T": ev.T,
        "f": ev.f,
        "legs": legs,
        "impulses": impulses,
        "earth_orbit": earth_orbit,
    }


def save_trajectory(trajectory: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(trajectory, sort_keys=True, indent=2) + "\n")


def load_trajectory(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
