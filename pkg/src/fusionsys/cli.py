"""The ``fusion`` command line: a thin client of the HTTP service.

Every subcommand builds a request and sends it over HTTP.  By default the
requests are served by an in-process application instance (no server
needed); ``--server URL`` targets a running ``fusion serve`` instance
instead.  Reports with the same seed and flags are byte-identical across
runs; timing is included only with ``--timing``.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from . import __version__
from .lattice import LATTICE_CAP
from .fusion import CLOSURE_CAP


def _client(server: str | None, cache_dir=None, no_cache=False) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=3600.0)
    # in-process service instance; the CLI stays a thin HTTP client either way
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service.app import create_app
    return TestClient(create_app(cache_dir=cache_dir, cache_enabled=not no_cache))


def _common_payload(group, prime, seed, lattice_cap, closure_cap, no_cache, timing,
                    catalog_path=None, deep=False):
    return {
        "group": group, "prime": prime, "seed": seed,
        "lattice_cap": lattice_cap, "closure_cap": closure_cap,
        "no_cache": no_cache, "include_timing": timing,
        "catalog_path": catalog_path, "deep": deep,
    }


def _emit(response: httpx.Response, as_json: bool, renderer=None) -> int:
    if response.status_code != 200:
        try:
            payload = response.json()
            click.echo(f"error [{payload.get('module', '?')}]: "
                       f"{payload.get('error', response.text)}", err=True)
        except Exception:
            click.echo(f"error: HTTP {response.status_code}: {response.text}",
                       err=True)
        return 2
    payload = response.json()
    if as_json or renderer is None:
        click.echo(json.dumps(payload, indent=1, sort_keys=True))
    else:
        click.echo(renderer(payload))
    return 0


@click.group()
@click.version_option(version=__version__, prog_name="fusion")
@click.option("--server", default=None, metavar="URL",
              help="target a running service instead of computing in-process")
@click.option("--catalog", "catalog_path", default=None, type=click.Path(exists=True),
              help="override the built-in catalog data file")
@click.option("--seed", default=0, show_default=True, help="seed for randomized steps")
@click.option("--lattice-cap", default=LATTICE_CAP, show_default=True,
              help="maximum Sylow order for subgroup-lattice enumeration")
@click.option("--closure-cap", default=CLOSURE_CAP, show_default=True,
              help="maximum morphism count for closures")
@click.option("--json", "as_json", is_flag=True, help="emit raw JSON")
@click.option("--no-cache", is_flag=True, help="bypass the disk cache")
@click.option("--cache-dir", default=None, type=click.Path(), help="cache directory")
@click.option("--timing", is_flag=True, help="include timing in reports")
@click.option("--deep", is_flag=True,
              help="also compute centralizer-subsystem bounds in reports")
@click.pass_context
def main(ctx, server, catalog_path, seed, lattice_cap, closure_cap, as_json,
         no_cache, cache_dir, timing, deep):
    """Compute fusion systems of finite groups and their p'-index structure."""
    ctx.obj = {
        "server": server, "seed": seed, "lattice_cap": lattice_cap,
        "closure_cap": closure_cap, "json": as_json, "no_cache": no_cache,
        "cache_dir": cache_dir, "timing": timing, "catalog_path": catalog_path,
        "deep": deep,
    }


@main.command()
@click.argument("group")
@click.option("-p", "--prime", type=int, required=True)
@click.pass_context
def info(ctx, group, prime):
    """Full analysis report for one group at one prime."""
    o = ctx.obj
    with _client(o["server"], o["cache_dir"], o["no_cache"]) as client:
        resp = client.post("/v1/report", json=_common_payload(
            group, prime, o["seed"], o["lattice_cap"], o["closure_cap"],
            o["no_cache"], o["timing"], o["catalog_path"], o["deep"]))
    sys.exit(_emit(resp, o["json"], _render_report))


def _render_report(rep: dict) -> str:
    lines = [
        f"{rep['label']} at p = {rep['prime']}",
        f"  |G| = {rep['group_order']}, |S| = {rep['sylow_order']} "
        f"(degree {rep['sylow_degree']}, abelian: {rep['sylow_abelian']})",
        f"  subgroups {rep['counts']['subgroups']}, classes {rep['counts']['f_classes']}, "
        f"centric {rep['counts']['centric']}, centric-radical {rep['counts']['centric_radical']}",
        f"  |Gamma| = {rep['gamma']['order']} {rep['gamma']['structure']}",
        f"  saturation: {rep['saturation']['verdict']}",
        f"  simplicity: {rep['simplicity']['verdict']} ({rep['simplicity']['evidence']})",
        f"  predictor match: {rep['comparison']['match']}",
    ]
    if rep.get("weakly_closed_shortcut"):
        sc = rep["weakly_closed_shortcut"]
        lines.append(f"  weakly closed A: id {sc['A']} order {sc['A_order']} "
                     f"|Aut_F(A)| = {sc['aut_A_order']} gamma-via-A = {sc['gamma_via_A']}")
        if sc.get("bounds"):
            b = sc["bounds"]
            lines.append(f"  bounds: {b['lower']} <= |Gamma| <= {b['upper']}")
    if rep.get("rigidity_h1"):
        r = rep["rigidity_h1"]
        lines.append(f"  H1(kernel automizer; A) = {r['h1_invariants']} "
                     f"(rigid: {r['rigid']})")
    if rep.get("timing_seconds"):
        lines.append(f"  timing: {rep['timing_seconds']}")
    return "\n".join(lines)


@main.command()
@click.argument("group")
@click.option("-p", "--prime", type=int, required=True)
@click.pass_context
def gamma(ctx, group, prime):
    """The p'-quotient of one group's fusion system."""
    o = ctx.obj
    with _client(o["server"], o["cache_dir"], o["no_cache"]) as client:
        resp = client.post("/v1/gamma", json=_common_payload(
            group, prime, o["seed"], o["lattice_cap"], o["closure_cap"],
            o["no_cache"], o["timing"], o["catalog_path"]))
    sys.exit(_emit(resp, True))


@main.command()
@click.pass_context
def survey(ctx):
    """Run the built-in classification survey; exit 0 iff zero mismatches."""
    o = ctx.obj
    with _client(o["server"], o["cache_dir"], o["no_cache"]) as client:
        resp = client.post("/v1/survey", json={
            "seed": o["seed"], "lattice_cap": o["lattice_cap"],
            "closure_cap": o["closure_cap"], "no_cache": o["no_cache"]})
    if resp.status_code != 200:
        sys.exit(_emit(resp, True))
    payload = resp.json()
    if o["json"]:
        click.echo(json.dumps(payload, indent=1, sort_keys=True))
    else:
        from .report import survey_text
        click.echo(survey_text(payload))
    sys.exit(0 if payload["mismatches"] == 0 else 1)


@main.command("saturate-check")
@click.argument("dumpfile", type=click.Path(exists=True))
@click.pass_context
def saturate_check(ctx, dumpfile):
    """Check the saturation axioms for an abstract system in dump format."""
    o = ctx.obj
    with open(dumpfile) as fh:
        text = fh.read()
    with _client(o["server"], o["cache_dir"], o["no_cache"]) as client:
        resp = client.post("/v1/saturate-check", json={
            "dump": text, "lattice_cap": o["lattice_cap"],
            "closure_cap": o["closure_cap"]})
    code = _emit(resp, o["json"],
                 lambda p: f"verdict: {p['verdict']}" + "".join(
                     f"\n  axiom {f['axiom']}: subgroup {f['subgroup']} -- {f['detail']}"
                     for f in p["failures"]))
    if code == 0 and resp.json()["verdict"] != "saturated":
        code = 1
    sys.exit(code)


@main.command()
@click.argument("group")
@click.option("-p", "--prime", type=int, required=True)
@click.pass_context
def predict(ctx, group, prime):
    """Arithmetic classification prediction (no group computation)."""
    o = ctx.obj
    with _client(o["server"], o["cache_dir"], o["no_cache"]) as client:
        resp = client.post("/v1/predict", json={"group": group, "prime": prime})
    sys.exit(_emit(resp, True))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8037, show_default=True)
@click.pass_context
def serve(ctx, host, port):
    """Run the HTTP service."""
    import uvicorn
    from .service.app import create_app
    o = ctx.obj
    uvicorn.run(create_app(cache_dir=o["cache_dir"],
                           cache_enabled=not o["no_cache"]),
                host=host, port=port)


if __name__ == "__main__":
    main()
