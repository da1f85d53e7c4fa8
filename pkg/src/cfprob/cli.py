"""Command-line client for the reasoning operations.

Every subcommand builds the same request model the HTTP endpoint takes and
renders the response; by default the handler runs in-process, with --server
the request goes to a running service instead.

Exit codes: 0 success, 1 undefined/impossible query result, 2 usage or
parse error, 3 check-suite failure.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .service import ops, schemas
from .service.ops import OperationError

EXIT_UNDEFINED = 1
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3

_OPS = {
    "parse": (ops.parse_op, schemas.ParseResponse, False),
    "worlds": (ops.worlds_op, schemas.WorldsResponse, True),
    "query": (ops.query_op, schemas.QueryResponse, True),
    "revise": (ops.revise_op, schemas.ReviseResponse, True),
    "image": (ops.image_op, schemas.ImageResponse, True),
    "simulate": (ops.simulate_op, schemas.SimulateResponse, True),
    "check": (ops.check_op, schemas.CheckResponse, True),
    "generate": (ops.generate_op, schemas.GenerateResponse, False),
}


def fmt(x: float) -> str:
    """Numbers are printed with 10 significant digits."""
    return f"{x:.10g}"


def _dispatch(ctx_obj: dict, op_name: str, request) -> object:
    handler, response_type, takes_store = _OPS[op_name]
    server = ctx_obj.get("server")
    if server:
        import httpx

        reply = httpx.post(
            f"{server.rstrip('/')}/v1/{op_name}",
            json=request.model_dump(),
            timeout=120.0,
        )
        if reply.status_code >= 400:
            try:
                detail = reply.json().get("detail", reply.text)
            except ValueError:
                detail = reply.text
            _die(detail)
        return response_type.model_validate(reply.json())
    try:
        return handler(request) if not takes_store else handler(request, None)
    except (OperationError, ValueError) as exc:
        _die(str(exc))


def _die(message: str, code: int = EXIT_USAGE):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _model_ref(path: str, max_atoms: int | None) -> schemas.ModelRef:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _die(str(exc))
    return schemas.ModelRef(text=text, max_atoms=max_atoms)


def _emit(ctx_obj: dict, response, text_renderer) -> None:
    if ctx_obj.get("json"):
        click.echo(response.model_dump_json(indent=2))
    else:
        text_renderer(response)


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
@click.option("--server", default=None, metavar="URL",
              help="Send requests to a running service instead of in-process.")
@click.option("--max-atoms", default=None, type=int,
              help="Override the vocabulary size limit (default 20).")
@click.pass_context
def main(ctx, as_json, server, max_atoms):
    """Query, revise, image, simulate, and check ranked world models."""
    ctx.obj = {"json": as_json, "server": server, "max_atoms": max_atoms}


@main.command()
@click.option("--model", "model_path", type=click.Path(), default=None,
              help="Take the vocabulary from a model file.")
@click.option("--atoms", default=None, metavar="A,B,C",
              help="Comma-separated vocabulary.")
@click.argument("formula")
@click.pass_obj
def parse(obj, model_path, atoms, formula):
    """Parse a formula and print its canonical form."""
    req = schemas.ParseRequest(
        formula=formula,
        atoms=atoms.split(",") if atoms else None,
        model=_model_ref(model_path, obj["max_atoms"]) if model_path else None,
    )
    res = _dispatch(obj, "parse", req)
    _emit(obj, res, lambda r: click.echo(r.canonical))


@main.command()
@click.option("--model", "model_path", type=click.Path(), required=True)
@click.option("--of", default=None, metavar="FORMULA",
              help="List the worlds satisfying a formula instead.")
@click.pass_obj
def worlds(obj, model_path, of):
    """List a model's worlds with their degrees and weights."""
    req = schemas.WorldsRequest(model=_model_ref(model_path, obj["max_atoms"]), of=of)
    res = _dispatch(obj, "worlds", req)

    def render(r):
        for row in r.worlds:
            line = f"{row.world}  pi={fmt(row.pi)}"
            if row.p is not None:
                line += f" p={fmt(row.p)}"
            click.echo(line)

    _emit(obj, res, render)


@main.command()
@click.option("--model", "model_path", type=click.Path(), required=True)
@click.option("--believes", default=None, metavar="F")
@click.option("--status", default=None, metavar="F")
@click.option("--pi", default=None, metavar="F")
@click.option("--n", default=None, metavar="F", help="Necessity degree.")
@click.option("--p", default=None, metavar="F", help="Factual probability.")
@click.option("--cond", default=None, metavar="B",
              help="Conditional probability of B (needs --given).")
@click.option("--cf", default=None, metavar="B",
              help="Counterfactual probability of B (needs --given).")
@click.option("--given", default=None, metavar="A")
@click.option("--conditional", default=None, metavar="'A => B'",
              help="Truth of the conditional.")
@click.pass_obj
def query(obj, model_path, believes, status, pi, n, p, cond, cf, given, conditional):
    """Evaluate a single query against a model."""
    picked = [
        (kind, value)
        for kind, value in (
            ("believes", believes), ("status", status), ("pi", pi),
            ("necessity", n), ("p", p), ("cond", cond), ("cf", cf),
            ("conditional", conditional),
        )
        if value is not None
    ]
    if len(picked) != 1:
        raise click.UsageError("pick exactly one query flag")
    kind, value = picked[0]
    if kind == "conditional":
        if given is not None:
            raise click.UsageError("--conditional carries its own condition")
        if value.count("=>") != 1:
            raise click.UsageError("conditional must have the form 'A => B'")
        antecedent, _, consequent = value.partition("=>")
        formula, given = consequent.strip(), antecedent.strip()
    else:
        formula = value
    req = schemas.QueryRequest(
        model=_model_ref(model_path, obj["max_atoms"]),
        kind=kind, formula=formula, given=given,
    )
    res = _dispatch(obj, "query", req)

    def render(r):
        if not r.defined:
            click.echo("undefined")
        elif r.value is not None:
            click.echo(fmt(r.value))
        elif r.truth is not None:
            click.echo("true" if r.truth else "false")
        else:
            click.echo(r.status)

    _emit(obj, res, render)
    if not res.defined:
        if res.reason:
            click.echo(f"note: {res.reason}", err=True)
        sys.exit(EXIT_UNDEFINED)


@main.command()
@click.option("--model", "model_path", type=click.Path(), required=True)
@click.option("--by", required=True, metavar="A", help="Sentence to revise by.")
@click.option("--natural", is_flag=True,
              help="Full natural revision (returns a whole new model).")
@click.option("--demotion", default=0.5, show_default=True,
              type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
              help="Demotion factor for natural revision.")
@click.pass_obj
def revise(obj, model_path, by, natural, demotion):
    """Revise a model and print the revised distribution and belief set."""
    req = schemas.ReviseRequest(
        model=_model_ref(model_path, obj["max_atoms"]),
        by=by, natural=natural, demotion=demotion,
    )
    res = _dispatch(obj, "revise", req)

    def render(r):
        if not r.defined:
            click.echo("undefined")
            return
        click.echo("belief: " + (" | ".join(r.belief) if r.belief else "(inconsistent)"))
        for row in r.distribution:
            click.echo(f"{row.world}  mass={fmt(row.mass)}  P={fmt(row.mass / r.total)}")
        if r.model_text:
            click.echo("revised model:")
            click.echo(r.model_text.rstrip("\n"))

    _emit(obj, res, render)
    if not res.defined:
        if res.reason:
            click.echo(f"note: {res.reason}", err=True)
        sys.exit(EXIT_UNDEFINED)


@main.command()
@click.option("--model", "model_path", type=click.Path(), required=True)
@click.option("--by", required=True, metavar="A")
@click.option("--policy", default="pl", show_default=True, metavar="pl|centered|FILE",
              help="Selection policy, or a path to an explicit table.")
@click.pass_obj
def image(obj, model_path, by, policy):
    """Image the factual distribution by a sentence."""
    if policy in ("pl", "pl_uniform"):
        policy_kind, table = "pl_uniform", None
    elif policy == "centered":
        policy_kind, table = "centered", None
    else:
        try:
            table = Path(policy).read_text(encoding="utf-8")
        except OSError as exc:
            _die(str(exc))
        policy_kind = "explicit"
    req = schemas.ImageRequest(
        model=_model_ref(model_path, obj["max_atoms"]),
        by=by, policy=policy_kind, table=table,
    )
    res = _dispatch(obj, "image", req)

    def render(r):
        if not r.defined:
            click.echo("undefined")
            return
        for row in r.distribution:
            click.echo(f"{row.world}  mass={fmt(row.mass)}  P={fmt(row.mass / r.total)}")

    _emit(obj, res, render)
    if not res.defined:
        if res.reason:
            click.echo(f"note: {res.reason}", err=True)
        sys.exit(EXIT_UNDEFINED)


@main.command()
@click.option("--model", "model_path", type=click.Path(), required=True)
@click.option("--by", required=True, metavar="A")
@click.option("--of", required=True, metavar="B")
@click.pass_obj
def simulate(obj, model_path, by, of):
    """Compare the three revision routes on one query."""
    req = schemas.SimulateRequest(
        model=_model_ref(model_path, obj["max_atoms"]), by=by, of=of
    )
    res = _dispatch(obj, "simulate", req)

    def render(r):
        if not r.defined:
            click.echo("direct      undefined")
            click.echo("sequence    undefined")
            click.echo("single      undefined")
            return
        click.echo(f"direct      {fmt(r.direct)}")
        click.echo(f"sequence    {fmt(r.via_sequence)}")
        click.echo(f"single      {fmt(r.via_single)}")
        click.echo(f"rank        {fmt(r.rank)}")
        click.echo(f"alpha       {r.alpha}")
        click.echo(f"agreement   {'ok' if r.agree else 'DISAGREE'} "
                   f"(max {fmt(r.max_disagreement)})")

    _emit(obj, res, render)
    if not res.defined:
        sys.exit(EXIT_UNDEFINED)


@main.command()
@click.option("--model", "model_path", type=click.Path(), required=True)
@click.option("--suite", default="all", show_default=True,
              type=click.Choice(["agm", "theorems", "all"]))
@click.option("--depth", default=2, show_default=True, type=click.IntRange(1, 4))
@click.option("--seed", default=0, show_default=True)
@click.option("--count", default=12, show_default=True, type=click.IntRange(min=0),
              help="Random formulas added to the pool.")
@click.option("--keep-passes", is_flag=True, help="Record passing checks too.")
@click.pass_obj
def check(obj, model_path, suite, depth, seed, count, keep_passes):
    """Run the claim-check suites against a model."""
    req = schemas.CheckRequest(
        model=_model_ref(model_path, obj["max_atoms"]),
        suite=suite, depth=depth, seed=seed, count=count, keep_passes=keep_passes,
    )
    res = _dispatch(obj, "check", req)

    def render(r):
        for report in r.reports:
            _render_report(report)
        click.echo(
            f"overall: {'PASS' if r.passed else 'FAIL'} "
            f"({r.checks_run} checks, {r.checks_failed} failures)"
        )

    _emit(obj, res, render)
    if not res.passed:
        sys.exit(EXIT_CHECK_FAILED)


def _render_report(report: dict) -> None:
    click.echo(f"suite: {report['suite']}")
    if report.get("seed") is not None:
        click.echo(f"seed: {report['seed']}")
    claims = report.get("claims", {})
    width = max((len(c) for c in claims), default=10) + 2
    click.echo(f"{'claim'.ljust(width)}{'run':>8}{'failed':>8}")
    for claim in sorted(claims):
        entry = claims[claim]
        click.echo(f"{claim.ljust(width)}{entry['run']:>8}{entry['failed']:>8}")
    for note in report.get("notes", []):
        click.echo(f"note: {note}")
    for claim in sorted(claims):
        for record in claims[claim].get("records", []):
            if not record["passed"]:
                click.echo(
                    f"FAIL {record['claim']} [{record['instantiation']}] "
                    f"expected {record['expected']}, got {record['actual']}"
                )


@main.command()
@click.option("--seed", default=0, show_default=True)
@click.option("--atoms", default=4, show_default=True, type=click.IntRange(1, 10))
@click.option("--ranks", default=3, show_default=True, type=click.IntRange(1, 6))
@click.option("--complete", is_flag=True, help="Make every world possible.")
@click.pass_obj
def gen(obj, seed, atoms, ranks, complete):
    """Generate a seeded random model and print it in file format."""
    req = schemas.GenerateRequest(
        seed=seed, atoms=atoms, ranks=ranks, complete=complete
    )
    res = _dispatch(obj, "generate", req)
    _emit(obj, res, lambda r: click.echo(r.model_text, nl=False))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("cfprob.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
