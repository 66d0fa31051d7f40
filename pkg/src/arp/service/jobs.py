"""In-process background queue for long-running experiment requests."""

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor


class JobStore:
    """Single-worker queue with lock-guarded status polling.

    One worker thread keeps experiments serialized; an experiment may fan
    out its own repetitions internally, so stacking them would oversubscribe
    the machine.
    """

    def __init__(self):
        self._executor = ThreadPoolExecutor(max_workers=1)
        self._lock = threading.Lock()
        self._jobs = {}

    def submit(self, fn, *args) -> str:
        job_id = uuid.uuid4().hex
        with self._lock:
            self._jobs[job_id] = {"status": "queued", "result": None,
                                  "error": None}

        def run():
            self._update(job_id, status="running")
            try:
                result = fn(*args)
            except Exception as exc:  # report, never kill the worker
                self._update(job_id, status="failed",
                             error=f"{type(exc).__name__}: {exc}")
            else:
                self._update(job_id, status="done", result=result)

        self._executor.submit(run)
        return job_id

    def _update(self, job_id: str, **fields) -> None:
        with self._lock:
            self._jobs[job_id].update(fields)

    def get(self, job_id: str):
        """Snapshot of one job's state, or None if the id is unknown."""
        with self._lock:
            job = self._jobs.get(job_id)
            return dict(job) if job is not None else None

    def shutdown(self) -> None:
        self._executor.shutdown(wait=False)
