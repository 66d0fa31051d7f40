"""HTTP facade over instance generation, evaluation, and experiment runs.

All handlers are thin: they convert between the pydantic bodies and the
library types, map domain errors to status codes (bad inputs 400, infeasible
evaluations 422), and delegate. Experiments run on a background worker and
are polled by job id.
"""

from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..harness import ExperimentSpec, run_experiment
from ..inner_solver import LegError
from ..optimizers import RunConfig, greedy_nn
from ..permutation import Representation
from ..problem import (EvaluationError, default_catalog, evaluate_full,
                       evaluate_sequence, generate_instance, parse_catalog)
from ..trajectory import build_trajectory
from .jobs import JobStore
from .schemas import (EvaluateRequest, EvaluationModel, ExperimentRequest,
                      ExperimentResultModel, GenerateRequest, GreedyRequest,
                      GreedyResponse, HealthResponse, InstanceModel, JobModel)


def _instance(model: InstanceModel):
    try:
        return model.to_instance()
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _run_experiment_job(req: ExperimentRequest) -> ExperimentResultModel:
    spec = ExperimentSpec(
        instance=req.instance.to_instance(),
        algorithm=req.algorithm,
        representation=Representation(req.representation),
        budget=req.budget,
        repetitions=req.repetitions,
        base_seed=req.base_seed,
        greedy_seed=req.greedy_seed,
        outdir=req.outdir,
    )
    result = run_experiment(spec, workers=req.workers)
    best_f = min((o.history.best.f for o in result.outcomes), default=None)
    return ExperimentResultModel(
        group=spec.group, group_dir=spec.group_dir,
        runs_completed=len(result.outcomes), failures=result.failures,
        best_f=best_f)


def create_app() -> FastAPI:
    jobs = JobStore()

    @asynccontextmanager
    async def lifespan(_app):
        yield
        jobs.shutdown()

    app = FastAPI(title="arp-bench", version=__version__, lifespan=lifespan)
    app.state.jobs = jobs

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/instances/generate", response_model=InstanceModel)
    def generate(req: GenerateRequest):
        try:
            catalog = (parse_catalog(req.catalog_csv, "<request>")
                       if req.catalog_csv is not None else default_catalog())
            instance = generate_instance(catalog, req.n, req.seed, req.tau0)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return InstanceModel.from_instance(instance)

    @app.post("/evaluate", response_model=EvaluationModel)
    def evaluate(req: EvaluateRequest):
        instance = _instance(req.instance)
        try:
            if req.times is None:
                ev, times = evaluate_sequence(instance, req.permutation)
            else:
                ev = evaluate_full(instance, req.permutation, req.times)
                times = req.times
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except (EvaluationError, LegError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return EvaluationModel.from_evaluation(ev, times)

    @app.post("/greedy", response_model=GreedyResponse)
    def greedy(req: GreedyRequest):
        instance = _instance(req.instance)
        try:
            perm, _ = greedy_nn(instance)
            ev, times = evaluate_sequence(instance, perm)
        except (EvaluationError, LegError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return GreedyResponse(
            permutation=list(perm),
            evaluation=EvaluationModel.from_evaluation(ev, times))

    @app.post("/trajectory")
    def trajectory(req: EvaluateRequest) -> dict:
        instance = _instance(req.instance)
        try:
            times = req.times
            if times is None:
                _, times = evaluate_sequence(instance, req.permutation)
            return build_trajectory(instance, req.permutation, times)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except (EvaluationError, LegError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/experiments", response_model=JobModel)
    def submit_experiment(req: ExperimentRequest):
        try:
            # surface spec problems now, not inside the background job
            RunConfig(budget=req.budget,
                      representation=Representation(req.representation),
                      seed=req.base_seed, greedy_seed=req.greedy_seed)
            ExperimentSpec(instance=_instance(req.instance),
                           algorithm=req.algorithm,
                           representation=Representation(req.representation),
                           budget=req.budget, repetitions=req.repetitions,
                           base_seed=req.base_seed,
                           greedy_seed=req.greedy_seed, outdir=req.outdir)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        job_id = jobs.submit(_run_experiment_job, req)
        return JobModel(id=job_id, status="queued")

    @app.get("/experiments/{job_id}", response_model=JobModel)
    def experiment_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"no such job: {job_id}")
        return JobModel(id=job_id, status=job["status"], error=job["error"],
                        result=job["result"])

    return app
