"""Asteroid routing problem: catalogs, instances, and objective evaluation.

An instance is Earth plus n asteroid orbits, a start epoch tau0, and the
gravitational parameter mu. A visiting sequence is scored by summing, leg by
leg, the two rendezvous impulses of a ballistic transfer (parking on the
current orbit, then a Lambert arc to the next asteroid), with elapsed time
penalized at 2 km/s per 30 days.

Units at all public boundaries: km, km/s, days (epochs in MJD).
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from .inner_solver import (LegError, PARK_BOUNDS, TIME_WEIGHT, TRANSIT_BOUNDS,
                           optimize_leg)
from .lambert import LambertError, transfer_impulses
from .orbits import DAY_S, OrbitalElements
from .rng import SplitMix64

SUN_MU = 1.32712440018e11  # km^3/s^2
AU_KM = 1.495978707e8
DEFAULT_TAU0 = 59396.0  # MJD, mid-2021

# Earth ephemeris at J2000 (element set commonly quoted for epoch MJD 51544.5)
DEFAULT_EARTH = OrbitalElements(
    a=1.00000011 * AU_KM,
    e=0.01671022,
    i=math.radians(0.00005),
    raan=math.radians(-11.26064),
    argp=math.radians(114.20783),
    M0=math.radians(357.51716),
    epoch=51544.5,
)

CATALOG_HEADER = ("id", "epoch_mjd", "a_au", "e", "i_deg", "raan_deg",
                  "argp_deg", "M_deg")

EARTH_ID = 0


class CatalogError(ValueError):
    """Malformed catalog file."""


class EvaluationError(RuntimeError):
    """A leg of a visiting sequence could not be evaluated."""


@dataclass(frozen=True)
class CatalogRecord:
    id: int
    elements: OrbitalElements


@dataclass(frozen=True)
class AsteroidCatalog:
    records: tuple  # CatalogRecord, excluding Earth
    source: str
    earth: OrbitalElements = DEFAULT_EARTH

    def __len__(self) -> int:
        return len(self.records)


def parse_catalog(text: str, source: str = "<string>") -> AsteroidCatalog:
    """Parse catalog CSV text; see load_catalog for the format."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CatalogError(f"{source}: empty catalog") from None
    if tuple(h.strip() for h in header) != CATALOG_HEADER:
        raise CatalogError(
            f"{source}: bad header {header!r}, expected {','.join(CATALOG_HEADER)}")
    records = []
    earth: Optional[OrbitalElements] = None
    seen = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(CATALOG_HEADER):
            raise CatalogError(f"{source}:{lineno}: expected "
                               f"{len(CATALOG_HEADER)} fields, got {len(row)}")
        try:
            rec_id = int(row[0])
            epoch, a_au, e, i_deg, raan_deg, argp_deg, m_deg = map(float, row[1:])
        except ValueError as exc:
            raise CatalogError(f"{source}:{lineno}: {exc}") from None
        if rec_id in seen:
            raise CatalogError(f"{source}:{lineno}: duplicate id {rec_id}")
        seen.add(rec_id)
        try:
            elements = OrbitalElements(
                a=a_au * AU_KM, e=e, i=math.radians(i_deg),
                raan=math.radians(raan_deg), argp=math.radians(argp_deg),
                M0=math.radians(m_deg), epoch=epoch)
        except ValueError as exc:
            raise CatalogError(f"{source}:{lineno}: {exc}") from None
        if rec_id == EARTH_ID:
            earth = elements
        else:
            records.append(CatalogRecord(id=rec_id, elements=elements))
    if earth is None:
        earth = DEFAULT_EARTH
    return AsteroidCatalog(records=tuple(records), source=source, earth=earth)


@functools.lru_cache(maxsize=1)
def default_catalog() -> AsteroidCatalog:
    """The 1000-asteroid synthetic catalog shipped with the package."""
    text = (resources.files("arp") / "data" / "catalog.csv").read_text(
        encoding="utf-8")
    return parse_catalog(text, "arp://data/catalog.csv")


def load_catalog(path) -> AsteroidCatalog:
    """Load an asteroid catalog from a CSV file.

    Format: UTF-8 CSV, header id,epoch_mjd,a_au,e,i_deg,raan_deg,argp_deg,M_deg.
    Semi-major axis in AU, angles in degrees. A row with id 0 supplies Earth's
    elements; otherwise a built-in Earth element set is used.
    """
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read(), source=str(path))


def catalog_to_csv(catalog: AsteroidCatalog) -> str:
    """Serialize a catalog (Earth row first) back to CSV text."""
    def fmt(rec_id: int, el: OrbitalElements) -> str:
        fields = (str(rec_id), repr(el.epoch), repr(el.a / AU_KM), repr(el.e),
                  repr(math.degrees(el.i)), repr(math.degrees(el.raan)),
                  repr(math.degrees(el.argp)), repr(math.degrees(el.M0)))
        return ",".join(fields)

    lines = [",".join(CATALOG_HEADER), fmt(EARTH_ID, catalog.earth)]
    lines.extend(fmt(rec.id, rec.elements) for rec in catalog.records)
    return "\n".join(lines) + "\n"


def _unit_float(gen: SplitMix64) -> float:
    # 53-bit mantissa draw in [0, 1)
    return (gen.next_u64() >> 11) * 2.0 ** -53


def synthetic_catalog(size: int, seed: int = 2021) -> AsteroidCatalog:
    """Generate a synthetic inner-belt catalog of the given size.

    Elements are drawn from a fixed portable PRNG (SplitMix64), so the same
    (size, seed) always yields the same catalog on any platform: a in
    [0.9, 2.2] AU, e in [0, 0.25), i in [0, 12) degrees, other angles uniform.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    gen = SplitMix64(seed)
    records = []
    for rec_id in range(1, size + 1):
        a_au = 0.9 + 1.3 * _unit_float(gen)
        e = 0.25 * _unit_float(gen)
        inc = math.radians(12.0 * _unit_float(gen))
        raan = 2.0 * math.pi * _unit_float(gen)
        argp = 2.0 * math.pi * _unit_float(gen)
        m0 = 2.0 * math.pi * _unit_float(gen)
        records.append(CatalogRecord(id=rec_id, elements=OrbitalElements(
            a=a_au * AU_KM, e=e, i=inc, raan=raan, argp=argp, M0=m0,
            epoch=DEFAULT_TAU0)))
    return AsteroidCatalog(records=tuple(records),
                           source=f"synthetic_{size}_{seed}")


@dataclass(frozen=True)
class Instance:
    """A routing problem: Earth, n asteroid orbits, start epoch, and mu."""

    n: int
    seed: int
    tau0: float
    mu: float
    earth: OrbitalElements
    asteroids: tuple  # n OrbitalElements
    ids: tuple  # catalog ids, parallel to asteroids
    name: str

    def __post_init__(self):
        if self.n != len(self.asteroids) or self.n != len(self.ids):
            raise ValueError("n does not match the asteroid list")
        if self.n < 1:
            raise ValueError("instance must contain at least one asteroid")


def generate_instance(catalog: AsteroidCatalog, n: int, seed: int,
                      tau0: float = DEFAULT_TAU0,
                      mu: float = SUN_MU) -> Instance:
    """Draw n catalog asteroids without replacement, seeded and portable.

    Selection is a partial Fisher-Yates shuffle over the catalog records in
    file order, driven by SplitMix64(seed), so instances are reproducible
    across platforms. The instance is named "<n>_<seed>".
    """
    k = len(catalog.records)
    if not 1 <= n <= k:
        raise ValueError(f"n must be in 1..{k}, got {n}")
    gen = SplitMix64(seed)
    pool = list(catalog.records)
    for i in range(n):
        j = i + gen.next_below(k - i)
        pool[i], pool[j] = pool[j], pool[i]
    chosen = pool[:n]
    return Instance(
        n=n, seed=seed, tau0=tau0, mu=mu, earth=catalog.earth,
        asteroids=tuple(rec.elements for rec in chosen),
        ids=tuple(rec.id for rec in chosen),
        name=f"{n}_{seed}")


def _elements_to_dict(el: OrbitalElements) -> dict:
    return {"a_km": el.a, "e": el.e, "i_rad": el.i, "raan_rad": el.raan,
            "argp_rad": el.argp, "M0_rad": el.M0, "epoch_mjd": el.epoch}


def _elements_from_dict(d: dict) -> OrbitalElements:
    return OrbitalElements(a=d["a_km"], e=d["e"], i=d["i_rad"],
                           raan=d["raan_rad"], argp=d["argp_rad"],
                           M0=d["M0_rad"], epoch=d["epoch_mjd"])


def instance_to_dict(instance: Instance) -> dict:
    asteroids = [dict(_elements_to_dict(el), id=rec_id)
                 for el, rec_id in zip(instance.asteroids, instance.ids)]
    return {"n": instance.n, "seed": instance.seed, "tau0": instance.tau0,
            "mu": instance.mu, "earth": _elements_to_dict(instance.earth),
            "asteroids": asteroids, "name": instance.name}


def instance_from_dict(d: dict) -> Instance:
    return Instance(
        n=int(d["n"]), seed=int(d["seed"]), tau0=float(d["tau0"]),
        mu=float(d["mu"]), earth=_elements_from_dict(d["earth"]),
        asteroids=tuple(_elements_from_dict(a) for a in d["asteroids"]),
        ids=tuple(int(a["id"]) for a in d["asteroids"]),
        name=str(d["name"]))


def save_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(instance_to_dict(instance), sort_keys=True,
                            indent=2) + "\n")


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))


def scalarize(dv: float, T: float) -> float:
    """Objective f = dv + (2 km/s / 30 days) * T."""
    return dv + TIME_WEIGHT * T


@dataclass(frozen=True)
class LegBreakdown:
    dv_out: float  # departure impulse magnitude, km/s
    dv_in: float  # arrival impulse magnitude, km/s
    t_park: float
    t_transit: float


@dataclass(frozen=True)
class Evaluation:
    dv: float  # km/s
    T: float  # days
    f: float
    per_leg: tuple  # n LegBreakdown records


def _validate_permutation(pi: Sequence[int], n: int) -> tuple:
    pi = tuple(int(x) for x in pi)
    if sorted(pi) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {pi!r}")
    return pi


def evaluate_full(instance: Instance, pi: Sequence[int],
                  t: Sequence[float]) -> Evaluation:
    """Score a visiting sequence under an explicit 2n time vector.

    pi holds 0-based asteroid indices in visit order; t alternates parking
    and transit durations (days). Leg i parks on the current orbit from the
    current epoch, then flies a Lambert arc of t[2i+1] days to asteroid
    pi[i]; epochs accumulate leg by leg from tau0.
    """
    n = instance.n
    pi = _validate_permutation(pi, n)
    t = tuple(float(x) for x in t)
    if len(t) != 2 * n:
        raise ValueError(f"time vector must have {2 * n} entries, got {len(t)}")
    for i in range(n):
        if not PARK_BOUNDS[0] <= t[2 * i] <= PARK_BOUNDS[1]:
            raise ValueError(f"parking time t[{2 * i}] out of bounds: {t[2 * i]}")
        if not TRANSIT_BOUNDS[0] <= t[2 * i + 1] <= TRANSIT_BOUNDS[1]:
            raise ValueError(
                f"transit time t[{2 * i + 1}] out of bounds: {t[2 * i + 1]}")
    tau = instance.tau0
    current = instance.earth
    dv = 0.0
    legs = []
    for i in range(n):
        park, transit = t[2 * i], t[2 * i + 1]
        target = instance.asteroids[pi[i]]
        try:
            pair = transfer_impulses(current, target, tau + park, transit,
                                     instance.mu)
        except LambertError as exc:
            raise EvaluationError(f"leg {i} (asteroid {pi[i]}): {exc}") from exc
        dv_out = math.sqrt(sum(c * c for c in pair.dv1))
        dv_in = math.sqrt(sum(c * c for c in pair.dv2))
        dv += dv_out + dv_in
        legs.append(LegBreakdown(dv_out=dv_out, dv_in=dv_in, t_park=park,
                                 t_transit=transit))
        tau += park + transit
        current = target
    T = math.fsum(t)
    return Evaluation(dv=dv, T=T, f=scalarize(dv, T), per_leg=tuple(legs))


def evaluate_sequence(instance: Instance, pi: Sequence[int]):
    """Score a visiting sequence, optimizing each leg's times in turn.

    Runs the deterministic per-leg solver n times, each leg starting at the
    previous leg's arrival epoch, then rescores the assembled time vector
    with evaluate_full so that both entry points agree exactly. Returns
    (Evaluation, time vector).
    """
    n = instance.n
    pi = _validate_permutation(pi, n)
    tau = instance.tau0
    current = instance.earth
    times = []
    for i in range(n):
        target = instance.asteroids[pi[i]]
        try:
            leg = optimize_leg(current, target, tau, instance.mu)
        except LegError as exc:
            raise EvaluationError(f"leg {i} (asteroid {pi[i]}): {exc}") from exc
        times.extend((leg.t_park, leg.t_transit))
        tau += leg.t_park + leg.t_transit
        current = target
    t = tuple(times)
    return evaluate_full(instance, pi, t), t
