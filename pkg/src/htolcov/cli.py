"""Command-line interface: ``htolcov measure | annotate | bench``."""
from __future__ import annotations

import sys
from pathlib import Path

import click

from .bench import DEFAULT_CRITERIA, DEFAULT_SIZES, bench as run_bench, bundled_programs, parse_sizes
from .criteria import CriterionId, annotate as annotate_program
from .engine import DEFAULT_BUDGET
from .errors import HtolError
from .htol import print_htl, print_hyperlabel
from .minilang import parse_program
from .normalize import DEFAULT_DISJUNCT_CAP, normalize_dnf, to_hyperlabel
from .pipeline import MeasureConfig, measure
from .randgen import random_suite
from .trace import DEFAULT_STEP_LIMIT

EXIT_BELOW_THRESHOLD = 1
EXIT_ERROR = 2


def _fail(err: Exception) -> None:
    stage = getattr(err, "stage", "htolcov")
    click.echo(f"error [{stage}]: {err}", err=True)
    sys.exit(EXIT_ERROR)


def _criteria(ctx, param, value):
    if value is None:
        return []
    try:
        return CriterionId.parse_list(value)
    except HtolError as e:
        raise click.BadParameter(str(e)) from None


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Coverage measurement for MiniImp programs with hyperlabel test objectives."""


@main.command("measure")
@click.option("--program", "program", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--suite", type=click.Path(exists=True, dir_okay=False), help="Test suite file.")
@click.option("--random-tests", type=int, help="Generate N random tests instead of --suite.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for --random-tests.")
@click.option("--criterion", callback=_criteria, help="Comma-separated criteria, e.g. MCC,RACC.")
@click.option("--htl", type=click.Path(exists=True, dir_okay=False), help="Objectives in HTL syntax.")
@click.option("--entry", help="Entry function (default: main, else the first function).")
@click.option("--array-cells", is_flag=True, help="Cell-precise dataflow objectives for arrays.")
@click.option("--dump-htl", type=click.Path(dir_okay=False), help="Write the objectives as HTL.")
@click.option("--dump-dnf", is_flag=True, help="Print the normalized objectives.")
@click.option("--report", type=click.Path(dir_okay=False), help="Write a CSV report.")
@click.option("--threshold", type=float, default=1.0, show_default=True)
@click.option("--step-limit", type=int, default=DEFAULT_STEP_LIMIT, show_default=True)
@click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
              help="Consolidation search nodes per objective.")
@click.option("--dnf-cap", type=int, default=DEFAULT_DISJUNCT_CAP, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True, help="Harvesting processes.")
def measure_cmd(program, suite, random_tests, seed, criterion, htl, entry, array_cells, dump_htl,
                dump_dnf, report, threshold, step_limit, budget, dnf_cap, workers):
    """Measure the coverage of a test suite."""
    if bool(criterion) == bool(htl):
        raise click.UsageError("give exactly one of --criterion and --htl")
    if (suite is None) == (random_tests is None):
        raise click.UsageError("give exactly one of --suite and --random-tests")
    cfg = MeasureConfig(Path(program), Path(suite) if suite else None, criterion,
                        Path(htl) if htl else None, entry, step_limit, budget, dnf_cap,
                        Path(report) if report else None, threshold, array_cells, workers)
    try:
        generated = None
        if random_tests is not None:
            p = parse_program(Path(program).read_text(), entry)
            generated = random_suite(p, random_tests, seed)
        result = measure(cfg, generated)
    except (HtolError, ValueError) as e:
        _fail(e)
    if dump_htl:
        Path(dump_htl).write_text(print_htl(result.objectives))
    if dump_dnf:
        for o in result.objectives:
            d = normalize_dnf(o.h, o.id, dnf_cap)
            click.echo(f"{o.id} = {print_hyperlabel(to_hyperlabel(d))}")
    rep = result.report
    if cfg.report:
        cfg.report.write_text(rep.to_csv())
    click.echo(rep.to_text(), nl=False)
    sys.exit(0 if rep.passes(threshold) else EXIT_BELOW_THRESHOLD)


@main.command("annotate")
@click.option("--program", "program", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--criterion", callback=_criteria, required=True)
@click.option("--entry")
@click.option("--array-cells", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Output file (default: stdout).")
def annotate_cmd(program, criterion, entry, array_cells, out):
    """Print the objectives of the given criteria in HTL syntax."""
    try:
        p = parse_program(Path(program).read_text(), entry)
        text = print_htl(annotate_program(p, criterion, array_cells=array_cells).objectives)
    except HtolError as e:
        _fail(e)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@main.command("bench")
@click.option("--sizes", default=",".join(map(str, DEFAULT_SIZES)), show_default=True,
              help="start:stop:step or a comma-separated list.")
@click.option("--reps", type=int, default=5, show_default=True)
@click.option("--criteria", default=",".join(DEFAULT_CRITERIA), show_default=True)
@click.option("--program", "programs", multiple=True, type=click.Path(exists=True, dir_okay=False),
              help="Benchmark these files instead of the bundled programs.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--step-limit", type=int, default=DEFAULT_STEP_LIMIT, show_default=True)
@click.option("--verbose", is_flag=True, help="Print every measured point.")
def bench_cmd(sizes, reps, criteria, programs, seed, step_limit, verbose):
    """Time measurement against suite size, with linear fits and overheads."""
    try:
        crits = [str(c) for c in CriterionId.parse_list(criteria)]
        progs = ({Path(f).stem: parse_program(Path(f).read_text()) for f in programs}
                 if programs else bundled_programs())
        progress = None
        if verbose:
            def progress(pt):
                click.echo(f"{pt.program:<10} {pt.criterion:<9} n={pt.size:<6} "
                           f"{pt.time:.4f}s  base {pt.baseline:.4f}s  {pt.overhead:.2f}x", err=True)
        result = run_bench(progs, crits, parse_sizes(sizes), reps, seed, step_limit, progress)
    except (HtolError, ValueError) as e:
        _fail(e)
    click.echo(result.to_text(), nl=False)


if __name__ == "__main__":
    main()
