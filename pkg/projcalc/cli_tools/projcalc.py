"""Generate projection pairs, compute MP inverses and verify statements."""

import json
import logging
import os
import sys
import time
from dataclasses import replace

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from projcalc.exceptions import ConfigError, ProjcalcError
from projcalc.harness import (
    STATEMENT_IDS,
    CampaignConfig,
    RandomPairGenerator,
    exit_code,
    matrix_to_dict,
    pair_fingerprint,
    pair_to_dict,
    read_element,
    read_pair,
    run_campaign,
    run_probe,
    verify,
    write_json,
)
from projcalc.idempotents import orth_decomposition
from projcalc.numeric import ENV_TOL, ToleranceConfig
from projcalc.pairs import join_projection, meet_projection
from projcalc.ring import mp_inverse, penrose_check
from projcalc.subspaces import column_space

__all__ = ["main"]

log = logging.getLogger(__name__)
console = Console()

_BACKEND = click.Choice(["exact", "float"])

tol_option = click.option(
    "--tol",
    type=float,
    default=None,
    help=f"Relative equality tolerance (float backend). Overrides ${ENV_TOL}.",
)


def _tolerance(tol: float | None) -> ToleranceConfig:
    try:
        return ToleranceConfig.from_env(equality_rel_tol=tol)
    except ConfigError as e:
        raise click.BadParameter(str(e), param_hint="--tol") from e


def _fail(error: Exception):
    console.print(f"[bold red]Error:[/bold red] {error}")
    sys.exit(1)


@click.group()
@click.option("-v", "--verbose", count=True, help="Increase log verbosity.")
def main(verbose):
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True))],
    )


@main.command()
@click.option("--backend", type=_BACKEND, default="float", show_default=True)
@click.option("--dim", type=click.IntRange(min=1), required=True)
@click.option("--rank-p", type=click.IntRange(min=0), required=True)
@click.option("--rank-q", type=click.IntRange(min=0), required=True)
@click.option(
    "--overlap",
    type=click.IntRange(min=0),
    default=None,
    help="Prescribe dim(pR ∩ qR) instead of drawing p and q independently.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def gen(backend, dim, rank_p, rank_q, overlap, seed, out):
    """Write a random projection pair to a pair file."""
    generator = RandomPairGenerator(seed, backend)
    try:
        if overlap is None:
            pair = generator.pair(dim, rank_p, rank_q)
        else:
            pair = generator.pair_with_overlap(dim, rank_p, rank_q, overlap)
    except ValueError as e:
        _fail(e)

    write_json(out, pair_to_dict(pair))
    console.print(f"Wrote pair {pair_fingerprint(pair)} to {out}")


@main.command()
@click.option("--in", "in_file", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@tol_option
def mp(in_file, out, tol):
    """Moore-Penrose inverse of a matrix file, with Penrose residuals."""
    try:
        x = read_element(in_file, _tolerance(tol))
        x_dag, info = mp_inverse(x, return_info=True)
        result = penrose_check(x, x_dag)
        if info is None:
            rank, marginal = x.context.rank(x)
        else:
            rank, marginal = info.rank, info.near_cutoff
    except ProjcalcError as e:
        _fail(e)

    if marginal:
        log.warning("Rank %d is within the near-cutoff band.", rank)

    tab = Table(title="*** Penrose equations ***")
    tab.add_column("Equation", justify="right", style="cyan")
    tab.add_column("Residual")
    tab.add_column("Holds")
    labels = ("x x+ x = x", "x+ x x+ = x+", "(x x+)* = x x+", "(x+ x)* = x+ x")
    for i, (label, residual) in enumerate(zip(labels, result.residuals), start=1):
        holds = result.ok or i not in result.failed
        tab.add_row(label, f"{residual:.3e}", "yes" if holds else "[red]no[/red]")
    console.print(tab)
    console.print(f"rank {rank}" + (" (marginal)" if marginal else ""))

    if out:
        write_json(out, matrix_to_dict(x_dag))
    else:
        click.echo(json.dumps(matrix_to_dict(x_dag)))

    sys.exit(0 if result.ok else 1)


def _report_table(reports) -> Table:
    tab = Table(title="*** Verification ***")
    tab.add_column("Statement", justify="right", style="cyan")
    tab.add_column("Claim")
    tab.add_column("Residual")
    tab.add_column("Holds")
    tab.add_column("Verdict")

    colors = {"pass": "green", "fail": "red", "inconclusive": "yellow"}
    for report in reports:
        verdict = report.verdict.value
        styled = f"[{colors[verdict]}]{verdict}[/{colors[verdict]}]"
        if report.skipped:
            tab.add_row(report.statement_id, report.skipped, "", "", styled)
            continue
        for name, holds in report.claims.items():
            residual = report.residuals.get(name)
            tab.add_row(
                report.statement_id,
                name,
                "" if residual is None else f"{residual:.3e}",
                "yes" if holds else "no",
                styled,
            )
    return tab


@main.command(name="verify")
@click.option(
    "--statement",
    "statements",
    multiple=True,
    required=True,
    help=f"Statement id or 'all'. One of: {', '.join(STATEMENT_IDS)}.",
)
@click.option("--in", "in_file", type=click.Path(exists=True), required=True)
@click.option("--snap", is_flag=True, help="Round almost-projections (float only).")
@click.option("--json", "as_json", is_flag=True, help="Print JSON records.")
@tol_option
def verify_cmd(statements, in_file, snap, as_json, tol):
    """Verify statements on a pair file."""
    ids = STATEMENT_IDS if "all" in statements else statements
    try:
        pair = read_pair(in_file, _tolerance(tol), snap=snap)
        reports = [verify(sid, pair) for sid in ids]
    except (ProjcalcError, KeyError) as e:
        _fail(e)

    fingerprint = pair_fingerprint(pair)
    for report in reports:
        report.pair_fingerprint = fingerprint

    if as_json:
        for report in reports:
            click.echo(json.dumps(report.to_dict(), sort_keys=True))
    else:
        console.print(_report_table(reports))

    sys.exit(exit_code(r.verdict.value for r in reports))


@main.command()
@click.option("--config", "config_file", type=click.Path(exists=True), required=True)
@click.option("--report", type=click.Path(dir_okay=False), required=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@tol_option
def campaign(config_file, report, workers, tol):
    """Run a seeded verification campaign and write a JSON lines report."""
    try:
        config = CampaignConfig.load(config_file)
    except (ConfigError, OSError) as e:
        _fail(e)

    tolerance = config.tolerance
    if os.environ.get(ENV_TOL) or tol is not None:
        env_tol = _tolerance(tol).equality_rel_tol
        tolerance = tolerance.with_rel_tol(env_tol)
    config = replace(config, tolerance=tolerance)

    start = time.perf_counter()
    summary = run_campaign(config, report, workers=workers)
    elapsed = time.perf_counter() - start

    tab = Table(title="*** Campaign summary ***")
    tab.add_column("Statement", justify="right", style="cyan")
    tab.add_column("Pass", style="green")
    tab.add_column("Fail", style="red")
    tab.add_column("Inconclusive", style="yellow")
    tab.add_column("Max residual")
    for sid, row in summary.table.iterrows():
        tab.add_row(
            sid,
            str(row["pass"]),
            str(row["fail"]),
            str(row["inconclusive"]),
            f"{row['max_residual']:.3e}",
        )
    console.print(tab)
    console.print(
        f"{len(summary.records)} reports in {elapsed:.1f} s, "
        f"exit code {summary.exit_code}."
    )
    sys.exit(summary.exit_code)


@main.command()
@click.option("--op", type=click.Choice(["join", "meet", "decomp"]), required=True)
@click.option("--in", "in_file", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--snap", is_flag=True, help="Snap drifted float projections.")
@tol_option
def subspace(op, in_file, out, snap, tol):
    """Projection onto pR + qR (join), pR ∩ qR (meet) or both meets (decomp)."""
    try:
        pair = read_pair(in_file, _tolerance(tol))
        if op == "join":
            x = join_projection(pair, snap=snap)
        elif op == "meet":
            x = meet_projection(pair, snap=snap)
        else:
            x = orth_decomposition(pair, snap=snap)
    except ProjcalcError as e:
        _fail(e)

    console.print(f"{op}: projection of rank {column_space(x).rank}")
    if out:
        write_json(out, matrix_to_dict(x))
    else:
        click.echo(json.dumps(matrix_to_dict(x)))


@main.command()
@click.option("--backend", type=_BACKEND, default="float", show_default=True)
@click.option(
    "--dims", type=click.IntRange(min=1), multiple=True, default=(2, 3, 4, 5)
)
@click.option("--trials", type=click.IntRange(min=1), default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@tol_option
def probe(backend, dims, trials, seed, tol):
    """Compare idempotent equalities with subspace conditions on random pairs."""
    results = run_probe(backend, dims, trials, seed, _tolerance(tol))

    tab = Table(title="*** Equality vs. subspace condition ***")
    tab.add_column("n", justify="right", style="cyan")
    tab.add_column("Samples")
    tab.add_column("Disagreements")
    tab.add_column("Marginal")
    for n, result in results.items():
        tab.add_row(
            str(n),
            str(result.samples),
            str(len(result.disagreements)),
            str(result.marginal),
        )
    console.print(tab)

    for n, result in results.items():
        for d in result.disagreements:
            console.print(f"n={n}: {d}")


if __name__ == "__main__":
    main()
