"""Command-line client for the benchmark service.

Every subcommand talks to the HTTP API: against a remote server when
--server is given, otherwise against an in-process app, so the CLI and the
service cannot drift apart. Permutations are written dash-separated (the
history CSV convention); commas are accepted on input too.
"""

import json
import os
import time
import warnings

import click
import httpx

from . import __version__


class ApiClient:
    """Minimal JSON-over-HTTP wrapper, in-process unless a server is named."""

    def __init__(self, server=None):
        self._in_process = server is None
        if self._in_process:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())
            self._client.__enter__()  # run lifespan so the job worker stops cleanly
        else:
            self._client = httpx.Client(base_url=server, timeout=120.0)

    def close(self) -> None:
        if self._in_process:
            self._client.__exit__(None, None, None)
        else:
            self._client.close()

    def get(self, path: str) -> dict:
        return self._handle(self._client.get(path))

    def post(self, path: str, payload: dict) -> dict:
        return self._handle(self._client.post(path, json=payload))

    @staticmethod
    def _handle(response) -> dict:
        if response.status_code == 400:
            raise click.UsageError(response.json()["detail"])
        if response.status_code >= 300:
            try:
                detail = response.json()["detail"]
            except Exception:
                detail = response.text
            raise click.ClickException(f"{response.status_code}: {detail}")
        return response.json()


def _parse_ints(text: str):
    return [int(tok) for tok in text.replace(",", "-").split("-") if tok]


def _parse_floats(text: str):
    return [float(tok) for tok in text.split(",") if tok]


def _load_instance_payload(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read instance {path}: {exc}")


def _echo_evaluation(ev: dict) -> None:
    click.echo(f"dv_kms: {ev['dv']!r}")
    click.echo(f"T_days: {ev['T']!r}")
    click.echo(f"f: {ev['f']!r}")


def _write_json(payload: dict, path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


@click.group()
@click.version_option(version=__version__, prog_name="arp")
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx, server):
    """Asteroid routing benchmark tools."""
    ctx.obj = ApiClient(server)
    ctx.call_on_close(ctx.obj.close)


@main.command()
@click.option("-n", required=True, type=click.IntRange(min=1),
              help="Instance size (asteroids to select).")
@click.option("--seed", required=True, type=int, help="Selection seed.")
@click.option("--tau0", default=None, type=float,
              help="Start epoch (MJD); default mid-2021.")
@click.option("--catalog", default=None, type=click.Path(exists=True),
              help="Catalog CSV; default is the bundled one.")
@click.option("--outdir", default=".", type=click.Path(file_okay=False),
              help="Directory for the instance file.")
@click.pass_obj
def generate(client, n, seed, tau0, catalog, outdir):
    """Write the instance file <outdir>/<n>_<seed>.json."""
    payload = {"n": n, "seed": seed}
    if tau0 is not None:
        payload["tau0"] = tau0
    if catalog is not None:
        with open(catalog, encoding="utf-8") as fh:
            payload["catalog_csv"] = fh.read()
    inst = client.post("/instances/generate", payload)
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, f"{inst['name']}.json")
    _write_json(inst, path)
    click.echo(path)


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("permutation")
@click.option("--times", default=None,
              help="Explicit 2n time vector (comma-separated days); "
                   "omitted times are optimized per leg.")
@click.option("--trajectory-out", default="trajectory.json",
              type=click.Path(dir_okay=False), show_default=True,
              help="Where to write the trajectory export.")
@click.pass_obj
def evaluate(client, instance_file, permutation, times, trajectory_out):
    """Score PERMUTATION (e.g. 0-3-2-1) and export its trajectory."""
    payload = {"instance": _load_instance_payload(instance_file),
               "permutation": _parse_ints(permutation)}
    if times is not None:
        payload["times"] = _parse_floats(times)
    ev = client.post("/evaluate", payload)
    _echo_evaluation(ev)
    traj = client.post("/trajectory", dict(payload, times=ev["times"]))
    _write_json(traj, trajectory_out)
    click.echo(f"trajectory: {trajectory_out}")


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def greedy(client, instance_file):
    """Nearest-neighbor tour of the instance."""
    res = client.post("/greedy",
                      {"instance": _load_instance_payload(instance_file)})
    click.echo("permutation: " + "-".join(str(i) for i in res["permutation"]))
    _echo_evaluation(res["evaluation"])


@main.command("export-trajectory")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("permutation")
@click.option("--times", default=None,
              help="Explicit 2n time vector (comma-separated days).")
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Output JSON path.")
@click.pass_obj
def export_trajectory(client, instance_file, permutation, times, out):
    """Sample the tour's arcs and impulses to a trajectory JSON."""
    payload = {"instance": _load_instance_payload(instance_file),
               "permutation": _parse_ints(permutation)}
    if times is not None:
        payload["times"] = _parse_floats(times)
    traj = client.post("/trajectory", payload)
    _write_json(traj, out)
    click.echo(out)


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", required=True,
              type=click.Choice(["greedy", "rs", "umm", "cego"]),
              help="Optimizer to benchmark.")
@click.option("--repr", "representation", default="order",
              type=click.Choice(["order", "rank"]), show_default=True,
              help="Permutation representation.")
@click.option("--budget", default=400, type=int, show_default=True)
@click.option("--reps", default=30, type=int, show_default=True,
              help="Independent repetitions.")
@click.option("--seed", default=0, type=int, show_default=True,
              help="Base seed; run r uses seed + r.")
@click.option("--greedy-seed", is_flag=True,
              help="Seed the init design with the greedy tour.")
@click.option("--outdir", default="results", show_default=True,
              type=click.Path(file_okay=False))
@click.option("--workers", default=1, type=click.IntRange(min=1),
              show_default=True, help="Parallel run slots.")
@click.pass_obj
def run(client, instance_file, algo, representation, budget, reps, seed,
        greedy_seed, outdir, workers):
    """Run a full experiment and write per-run history CSVs + summary."""
    payload = {"instance": _load_instance_payload(instance_file),
               "algorithm": algo, "representation": representation,
               "budget": budget, "repetitions": reps, "base_seed": seed,
               "greedy_seed": greedy_seed, "outdir": outdir,
               "workers": workers}
    job = client.post("/experiments", payload)
    while job["status"] in ("queued", "running"):
        time.sleep(0.5)
        job = client.get(f"/experiments/{job['id']}")
    if job["status"] == "failed":
        raise click.ClickException(job["error"])
    result = job["result"]
    for run_index, message in result["failures"]:
        click.echo(f"run {run_index} failed: {message}", err=True)
    click.echo(f"group: {result['group_dir']}")
    click.echo(f"runs: {result['runs_completed']}")
    if result["best_f"] is not None:
        click.echo(f"best_f: {result['best_f']!r}")
    if not result["runs_completed"]:
        raise click.ClickException("all runs failed")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, type=int, show_default=True)
def serve(host, port):
    """Start the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
