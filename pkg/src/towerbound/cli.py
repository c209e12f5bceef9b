"""Command line front end.

Every command builds a request model and hands it to the service layer,
in process by default or over HTTP when --server is given, so the CLI
itself never computes anything. Exit codes: 0 all assertions passed,
1 an assertion failed, 2 a fixture was skipped as infeasible under the
budget, 3 usage error.
"""

from __future__ import annotations

import click
import httpx

from .cache import Cache
from .config import Config, load_config
from .errors import InfeasibleError
from .report import Report
from .service import (
    FORMATS,
    BoundRequest,
    HodgeRequest,
    ReportModel,
    ShapesRequest,
    VerifyRequest,
    handle_bound,
    handle_hodge,
    handle_shapes,
    handle_verify,
    render_report,
)

_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(FORMATS),
    default="md",
    show_default=True,
    help="Report rendering.",
)


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="key=value file: guard, cache-dir, primes.",
)
@click.option(
    "--server",
    default=None,
    metavar="URL",
    help="Send requests to a running service instead of computing in process.",
)
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, server: str | None) -> None:
    """Exact growth bounds for cohomology in congruence towers."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config(config_path)
    ctx.obj["server"] = server


def _config(ctx: click.Context) -> Config:
    return ctx.obj["config"]


def _cache(ctx: click.Context) -> Cache | None:
    cache_dir = _config(ctx).cache_dir
    return Cache(cache_dir) if cache_dir else None


def _http_detail(resp) -> str:
    try:
        return str(resp.json().get("detail"))
    except ValueError:
        return resp.text


def _post(server: str, path: str, payload: dict) -> dict:
    resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    if resp.status_code == 422:
        raise click.UsageError(_http_detail(resp))
    if resp.status_code == 503:
        raise InfeasibleError(_http_detail(resp))
    resp.raise_for_status()
    return resp.json()


def _run(ctx, path, model, handler, payload, *, with_cache=False) -> Report:
    server = ctx.obj["server"]
    if server is not None:
        return ReportModel(**_post(server, path, payload)).to_report()
    kwargs = {"cache": _cache(ctx)} if with_cache else {}
    return handler(model(**payload), **kwargs).to_report()


def _exit_code(report: Report) -> int:
    if report.assertions.failed:
        return 1
    if report.assertions.skipped:
        return 2
    return 0


def _finish(ctx: click.Context, report: Report, fmt: str) -> None:
    click.echo(render_report(report, fmt), nl=False)
    ctx.exit(_exit_code(report))


@cli.command()
@click.argument("rank", type=int)
@_format_option
@click.pass_context
def shapes(ctx: click.Context, rank: int, fmt: str) -> None:
    """Table of designated shapes of total RANK with exponent columns."""
    report = _run(ctx, "/shapes", ShapesRequest, handle_shapes, {"rank": rank})
    _finish(ctx, report, fmt)


@cli.command()
@click.argument("rank", type=int)
@click.argument("degree", type=int)
@click.option(
    "--level",
    default="",
    metavar="Q^N,...",
    help="Residue sizes with multiplicities, e.g. 5^2,7.",
)
@_format_option
@click.pass_context
def bound(ctx: click.Context, rank: int, degree: int, level: str, fmt: str) -> None:
    """Headline growth bound for degree-DEGREE cohomology at rank RANK."""
    payload = {"rank": rank, "degree": degree, "level": level}
    report = _run(ctx, "/bound", BoundRequest, handle_bound, payload)
    _finish(ctx, report, fmt)


@cli.command()
@click.argument("rank", type=int)
@_format_option
@click.pass_context
def hodge(ctx: click.Context, rank: int, fmt: str) -> None:
    """Low-degree Hodge pieces with dimensions and decay exponents."""
    report = _run(ctx, "/hodge", HodgeRequest, handle_hodge, {"rank": rank})
    _finish(ctx, report, fmt)


def _budget_payload(ctx, scope, pmax, nmax, guard, rank_max, modulus_cap) -> dict:
    if guard is None:
        guard = _config(ctx).guard
    payload = {
        "scope": scope,
        "pmax": pmax,
        "nmax": nmax,
        "guard": guard,
        "rank_max": rank_max,
        "modulus_cap": modulus_cap,
    }
    return {k: v for k, v in payload.items() if v is not None}


_budget_options = [
    click.option("--pmax", type=int, default=None, help="Largest prime swept."),
    click.option("--nmax", type=int, default=None, help="Largest level exponent."),
    click.option("--guard", type=int, default=None, help="Enumeration size cap."),
    click.option("--rank-max", type=int, default=None, help="Largest rank swept."),
    click.option(
        "--modulus-cap", type=int, default=None, help="Largest modulus for oracles."
    ),
]


def _with_budget_options(command):
    for option in reversed(_budget_options):
        command = option(command)
    return command


@cli.command()
@click.argument("scope")
@_with_budget_options
@_format_option
@click.pass_context
def verify(ctx, scope, pmax, nmax, guard, rank_max, modulus_cap, fmt) -> None:
    """Run the named verifier suite (shapes, cohomology, gl2, gl3,
    indices, or all) inside the budget."""
    payload = _budget_payload(ctx, scope, pmax, nmax, guard, rank_max, modulus_cap)
    report = _run(
        ctx, "/verify", VerifyRequest, handle_verify, payload, with_cache=True
    )
    _finish(ctx, report, fmt)


@cli.command()
@click.option("--scope", default="all", show_default=True)
@_with_budget_options
@_format_option
@click.pass_context
def report(ctx, scope, pmax, nmax, guard, rank_max, modulus_cap, fmt) -> None:
    """Full verification report in the chosen rendering."""
    payload = _budget_payload(ctx, scope, pmax, nmax, guard, rank_max, modulus_cap)
    result = _run(
        ctx, "/verify", VerifyRequest, handle_verify, payload, with_cache=True
    )
    _finish(ctx, result, fmt)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="towerbound", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as err:
        click.echo(f"error: {err.format_message()}", err=True)
        return 3
    except InfeasibleError as err:
        click.echo(f"infeasible: {err}", err=True)
        return 2
    except ValueError as err:
        click.echo(f"error: {err}", err=True)
        return 3
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
