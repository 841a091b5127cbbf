"""Command line front end: run verification groups, count points, extract
traces, run the benchmark tier."""

from __future__ import annotations

import dataclasses
import sys

import click

from . import counting, lefschetz, newforms, pipeline
from .models import maschke_catalog
from .report import write_outputs

_COUNT_MODELS = ("S", "S1", "S2", "S3", "S4", "S4-aux", "S5", "X", "15a", "24a", "120b")
_CURVES = {"15a": "f15C", "24a": "f24B", "120b": "f120E"}


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None, help="INI file with a [pipeline] section.")
@click.option("--prime-bound", type=int, default=None, help="Largest prime in the sweep panels (>= 13).")
@click.option("--cache-dir", type=click.Path(), default=None, help="Point-count cache directory (or MASCHKE_CACHE_DIR).")
@click.option("--output-dir", type=click.Path(), default=None, help="Where reports and figures are written.")
@click.option("--benchmark/--no-benchmark", default=None, help="Enable the slow benchmark tier.")
@click.option("--workers", type=int, default=None, help="Processes for the count sweeps.")
@click.pass_context
def main(ctx, config_path, prime_bound, cache_dir, output_dir, benchmark, workers):
    """Verification toolkit for the octic-surface modularity computations."""
    try:
        ctx.obj = pipeline.PipelineConfig.load(
            config_path,
            prime_bound=prime_bound,
            cache_dir=cache_dir,
            output_dir=output_dir,
            benchmark=benchmark,
            workers=workers,
        )
    except (OSError, ValueError) as exc:
        raise click.UsageError(str(exc))


@main.command()
@click.argument("target", default="all")
@click.option("--figures/--no-figures", default=True, help="Render the summary figures.")
@click.pass_obj
def verify(cfg: pipeline.PipelineConfig, target: str, figures: bool):
    """Run one verification group, or all of them."""
    if target == "all":
        report = pipeline.run_all(cfg)
    elif target in pipeline.GROUPS:
        report = pipeline.run_groups(cfg, [target])
    else:
        raise click.UsageError(
            f"unknown target {target!r}; pick one of: all, " + ", ".join(pipeline.GROUPS)
        )
    click.echo(report.human_table())
    paths = write_outputs(report, cfg.output_dir, figures=figures)
    for path in paths:
        click.echo(f"wrote {path}")
    sys.exit(report.exit_code)


@main.command()
@click.option("--model", required=True, type=click.Choice(_COUNT_MODELS), help="Which variety to count.")
@click.option("--q", required=True, type=int, help="Field size (prime or prime square).")
@click.option("--variant", default="id", type=click.Choice(counting.INVOLUTIONS), help="Composed involution, X only.")
@click.pass_obj
def count(cfg: pipeline.PipelineConfig, model: str, q: int, variant: str):
    """Point count of one model over F_q."""
    cat = maschke_catalog()
    if model == "X":
        n = counting.count_twisted(cat["X"], q, variant)
    elif variant != "id":
        raise click.UsageError("--variant applies to the double cover X only")
    elif model == "S":
        n = counting.count_p3_hypersurface(cat["S"], q)
    elif model == "S1":
        n = counting.count_weighted_hypersurface(cat["S1"], q)
    elif model in _CURVES:
        n = counting.count_elliptic_curve(newforms.WEIGHT2_CURVES[_CURVES[model]], q)
    else:
        n = counting.count_elliptic_surface(cat[model], q)
    click.echo(f"{model} over F_{q} ({variant}): {n}")


@main.command()
@click.option("--p", "p", required=True, type=int, help="Good prime.")
@click.pass_obj
def extract(cfg: pipeline.PipelineConfig, p: int):
    """Frobenius traces of the four X-blocks from live point counts at p."""
    cache = cfg.cache()
    counts = pipeline.composed_counts(p, cache)
    if p % 4 == 1:
        tr = lefschetz.extract_x_traces(counts, p)
        click.echo(
            f"p={p}: a120={tr.a120} a120E={tr.a120E} a24B={tr.a24B} a15C={tr.a15C}"
        )
    else:
        live = {
            label: counting.ap_elliptic(curve, p)
            for label, curve in newforms.WEIGHT2_CURVES.items()
        }
        a120 = lefschetz.a120_from_counts_3mod4(
            counts, p, (live["f120E"], live["f24B"], live["f15C"])
        )
        click.echo(
            f"p={p}: a120={a120} (weight-2 blocks counted directly: "
            f"a120E={live['f120E']} a24B={live['f24B']} a15C={live['f15C']})"
        )


@main.command()
@click.pass_obj
def bench(cfg: pipeline.PipelineConfig):
    """Run the slow benchmark tier (the F_{31^2} enumeration)."""
    cfg = dataclasses.replace(cfg, benchmark=True)
    result = pipeline.run_criterion("B31", cfg, cfg.cache())
    click.echo(f"[{result.cid}] {result.status.upper()} ({result.elapsed:.1f}s)")
    click.echo(f"  expected: {result.expected}")
    click.echo(f"  observed: {result.observed}")
    sys.exit(0 if result.passed else 1)
