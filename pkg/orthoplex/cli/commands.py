from sys import exit
from typing import Any, Dict, Optional, Sequence

import click

from orthoplex import errors

from .config import check_config, parse_tolerance_overrides
from .output import Document, error_document, exit_code, write_document
from .run import run

_OPTIONS = [
    click.argument("spec", required=False),
    click.option("--g", "g", help="Interaction spec, alternative to SPEC"),
    click.option("--n", type=int, help="System size"),
    click.option("--m", type=float, help="Specific magnetization"),
    click.option("--rho", type=float, help="Specific particle number"),
    click.option("--beta", type=float, help="Field conjugate to m"),
    click.option("--mu", type=float, help="Field conjugate to rho"),
    click.option("--ensemble", type=click.Choice(["micro", "grand"])),
    click.option("--samples", type=int, help="Monte Carlo sample count"),
    click.option("--seed", type=int),
    click.option("--threads", type=int),
    click.option("--observable", help="phi1, abs_phi1, tanh_phi1 or cos_sum2"),
    click.option("--observables", type=int, help="Size of the random suite"),
    click.option("--delta", type=float, help="Laplace window half-width"),
    click.option("--a", type=float, help="Left end of the magnetization window"),
    click.option("--b", type=float, help="Right end of the magnetization window"),
    click.option("--grid-points", "grid_points", type=int),
    click.option("--ladder", type=int, multiple=True, help="Sizes n, repeatable"),
    click.option("--format", "fmt", type=click.Choice(["json", "csv"])),
    click.option("--out", default="-", type=click.Path(dir_okay=False)),
    click.option("--tol", multiple=True, help="Tolerance override KEY=VALUE"),
    click.option("--verbose", is_flag=True),
    click.option("--timing", is_flag=True, help="Record runtime_ms"),
]


def _with_options(func):
    for option in reversed(_OPTIONS):
        func = option(func)
    return func


def _emit(doc: Document, fmt: str, out: str, outcome: Any = None) -> None:
    columns = outcome.columns if outcome is not None else None
    rows = outcome.rows if outcome is not None else None
    with click.open_file(out, "w") as fd:
        write_document(fd, doc, fmt, columns=columns, rows=rows)


def _fail(command: str, error: Exception, fmt: str, out: str) -> None:
    click.echo(f"ERROR: {error}", err=True)
    _emit(error_document(command, error), fmt, out)
    exit(exit_code(error))


def execute(
    command: str,
    raw: Dict[str, Any],
    tol: Sequence[str],
    out: str = "-",
    verbose: bool = False,
    timing: bool = False,
) -> None:
    fmt = raw.get("format") or "json"
    try:
        overrides = parse_tolerance_overrides(tol)
    except errors.ValidationError as e:
        _fail(command, e, fmt, out)
        return
    config, config_errors = check_config(raw, overrides)
    if config_errors is not None:
        found = list(config_errors)
        for e in found[1:]:
            click.echo(f"ERROR: {e}", err=True)
        _fail(command, found[0], fmt, out)
        return
    assert config is not None

    if verbose:
        click.echo(f"Running {command}", err=True)
    status, doc, outcome, messages = run(config, timing=timing)
    for message in messages:
        click.echo(f"WARN: {message}", err=True)
    if status != 0:
        click.echo(f"ERROR: {doc['error']['message']}", err=True)
    _emit(doc, config["format"], out, outcome)
    if verbose:
        click.echo(f"Finished {command} with status {status}", err=True)
    exit(status)


def _subcommand(name: str, summary: str) -> click.Command:
    @click.command(name=name, help=summary)
    @_with_options
    def command(
        spec: Optional[str],
        g: Optional[str],
        ladder: Sequence[int],
        fmt: Optional[str],
        out: str,
        tol: Sequence[str],
        verbose: bool,
        timing: bool,
        **flags: Any,
    ) -> None:
        raw = {
            "command": name,
            "interaction": spec or g,
            "ladder": list(ladder) or None,
            "format": fmt,
            **flags,
        }
        execute(name, raw, tol, out=out, verbose=verbose, timing=timing)

    return command


partition = _subcommand("partition", "Exact ln Z_n and s_n at (m, rho)")
thermo = _subcommand(
    "thermo", "Limiting entropy, fields and duality residual at (m, rho) or (beta, mu)"
)
sample = _subcommand("sample", "Monte Carlo estimate of a builtin observable")
equivalence = _subcommand(
    "equivalence", "Ensemble gaps of random observables against the Pinsker bound"
)
analyze = _subcommand("analyze", "Global maximizers of psi, their types and weights")
rate = _subcommand("rate", "Rate function on a grid of [-1, 1]")
mixture_mass = _subcommand(
    "mixture-mass", "ln kappa_n([a, b]) of the magnetization law"
)
bessel_check = _subcommand(
    "bessel-check", "Angular integral representation against the exact ln Z_n"
)
laplace_check = _subcommand("laplace-check", "Finite-n Laplace weights along a ladder")

COMMANDS = [
    partition,
    thermo,
    sample,
    equivalence,
    analyze,
    rate,
    mixture_mass,
    bessel_check,
    laplace_check,
]
