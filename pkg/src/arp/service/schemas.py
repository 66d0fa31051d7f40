"""Request and response bodies of the HTTP service.

InstanceModel mirrors the instance JSON file format exactly, so a request
body and a saved instance file are interchangeable.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel

from ..problem import (DEFAULT_TAU0, Evaluation, Instance, instance_from_dict,
                       instance_to_dict)


class ElementsModel(BaseModel):
    a_km: float
    e: float
    i_rad: float
    raan_rad: float
    argp_rad: float
    M0_rad: float
    epoch_mjd: float


class AsteroidModel(ElementsModel):
    id: int


class InstanceModel(BaseModel):
    n: int
    seed: int
    tau0: float
    mu: float
    earth: ElementsModel
    asteroids: List[AsteroidModel]
    name: str

    @classmethod
    def from_instance(cls, instance: Instance) -> "InstanceModel":
        return cls.model_validate(instance_to_dict(instance))

    def to_instance(self) -> Instance:
        return instance_from_dict(self.model_dump())


class GenerateRequest(BaseModel):
    n: int
    seed: int
    tau0: float = DEFAULT_TAU0
    catalog_csv: Optional[str] = None  # inline CSV text; bundled catalog when omitted


class LegModel(BaseModel):
    dv_out: float
    dv_in: float
    t_park: float
    t_transit: float


class EvaluationModel(BaseModel):
    dv: float
    T: float
    f: float
    per_leg: List[LegModel]
    times: List[float]

    @classmethod
    def from_evaluation(cls, ev: Evaluation, times) -> "EvaluationModel":
        return cls(dv=ev.dv, T=ev.T, f=ev.f,
                   per_leg=[LegModel(dv_out=leg.dv_out, dv_in=leg.dv_in,
                                     t_park=leg.t_park,
                                     t_transit=leg.t_transit)
                            for leg in ev.per_leg],
                   times=list(times))


class EvaluateRequest(BaseModel):
    instance: InstanceModel
    permutation: List[int]
    times: Optional[List[float]] = None  # omitted -> optimize each leg


class GreedyRequest(BaseModel):
    instance: InstanceModel


class GreedyResponse(BaseModel):
    permutation: List[int]
    evaluation: EvaluationModel


class ExperimentRequest(BaseModel):
    instance: InstanceModel
    algorithm: str
    representation: str = "order"
    budget: int = 400
    repetitions: int = 30
    base_seed: int = 0
    greedy_seed: bool = False
    outdir: str = "results"
    workers: int = 1


class ExperimentResultModel(BaseModel):
    group: str
    group_dir: str
    runs_completed: int
    failures: List[Tuple[int, str]]
    best_f: Optional[float]


class JobModel(BaseModel):
    id: str
    status: str  # queued | running | done | failed
    error: Optional[str] = None
    result: Optional[ExperimentResultModel] = None


class HealthResponse(BaseModel):
    status: str
    version: str
