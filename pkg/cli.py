#!/usr/bin/env python3
"""
hyperten: spectral reports for general hypergraphs

Usage:
    hyperten report H.txt --format json       Full report (degrees, radius, bounds, odd-bipartite)
    hyperten tensor H.txt --which a           Exact nonzeros of the dense A, L or Q tensor
    hyperten oddbip H.txt                     Odd-bipartite verdict only
    hyperten radius H.txt --target q          Spectral radius enclosure(s) only
    hyperten bounds H.txt                     Degree bounds only

Exit codes: 0 ok, 1 not odd-bipartite (oddbip), 2 bad input, 3 solver did not converge,
4 dense budget exceeded.
"""

import logging
import sys

import click

from config import Settings, configure_logging
from models import TensorKind
from utils.errors import BudgetExceededError, EdgelessHypergraphError, InvalidHypergraphError
from utils.hypergraph import parse_hypergraph
from utils.odd_bipartite import find_odd_bipartition
from utils.report import TARGETS, SpectralAnalyzer, render_json, render_text
from utils.tensor_ops import dense_tensor, dense_tensor_lines

logger = logging.getLogger(__name__)

EXIT_INFEASIBLE = 1
EXIT_BAD_INPUT = 2
EXIT_UNCONVERGED = 3
EXIT_BUDGET = 4

KINDS = {kind.value: kind for kind in TensorKind}


def _load(ctx: click.Context, path: str, allow_singleton_edges: bool):
    try:
        with open(path, encoding='utf-8') as handle:
            hypergraph = parse_hypergraph(handle.read(), allow_singleton_edges=allow_singleton_edges)
        if hypergraph.n == 0:
            raise InvalidHypergraphError("edge list declares no vertices")
        return hypergraph
    except InvalidHypergraphError as e:
        logger.error(f"Could not read {path}: {str(e)}")
        click.echo(f"error: {path}: {str(e)}", err=True)
        ctx.exit(EXIT_BAD_INPUT)
    except OSError as e:
        click.echo(f"error: {str(e)}", err=True)
        ctx.exit(EXIT_BAD_INPUT)


def _solver_settings(ctx: click.Context, tol, max_iters) -> Settings:
    return ctx.obj.override(tol=tol, max_iterations=max_iters)


singleton_option = click.option('--allow-singleton-edges', is_flag=True,
                                help='Admit one-vertex edges (diagonal entries of the tensor).')
tol_option = click.option('--tol', type=click.FloatRange(min=0, min_open=True), default=None,
                          help='Enclosure tolerance (default 1e-10).')
iters_option = click.option('--max-iters', type=click.IntRange(min=1), default=None,
                            help='Iteration cap for the power method (default 100000).')
target_option = click.option('--target', type=click.Choice(sorted(TARGETS)), default='both',
                             show_default=True, help='Which tensor(s) to solve for.')


@click.group()
@click.option('--log-level', default=None, help='Logging level (default from HYPERTEN_LOG_LEVEL).')
@click.pass_context
def cli(ctx: click.Context, log_level):
    """Spectral analysis of general hypergraphs."""
    settings = Settings.from_env().override(log_level=log_level.upper() if log_level else None)
    configure_logging(settings.log_level)
    ctx.obj = settings


@cli.command('report')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text',
              show_default=True)
@tol_option
@iters_option
@target_option
@singleton_option
@click.pass_context
def cmd_report(ctx, path, output_format, tol, max_iters, target, allow_singleton_edges):
    """Full spectral report."""
    hypergraph = _load(ctx, path, allow_singleton_edges)
    report = SpectralAnalyzer(_solver_settings(ctx, tol, max_iters)).build_report(hypergraph, target)
    click.echo(render_json(report.to_dict()) if output_format == 'json' else render_text(report))
    if not report.converged:
        click.echo("warning: spectral radius did not converge; enclosure reported as is", err=True)
        ctx.exit(EXIT_UNCONVERGED)


@cli.command('tensor')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--which', type=click.Choice(sorted(KINDS)), default='a', show_default=True)
@click.option('--budget', type=int, default=None, help='Maximum dense entries n^k (default 10^7).')
@singleton_option
@click.pass_context
def cmd_tensor(ctx, path, which, budget, allow_singleton_edges):
    """Exact nonzero entries of the dense tensor, one 'i1 ... ik p/q' per line."""
    hypergraph = _load(ctx, path, allow_singleton_edges)
    budget = budget if budget is not None else ctx.obj.dense_budget
    try:
        tensor = dense_tensor(hypergraph, KINDS[which], budget)
    except BudgetExceededError as e:
        click.echo(f"error: {str(e)}", err=True)
        ctx.exit(EXIT_BUDGET)
    except EdgelessHypergraphError as e:
        click.echo(f"error: {str(e)}", err=True)
        ctx.exit(EXIT_BAD_INPUT)
    for line in dense_tensor_lines(tensor):
        click.echo(line)


@cli.command('oddbip')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text',
              show_default=True)
@singleton_option
@click.pass_context
def cmd_oddbip(ctx, path, output_format, allow_singleton_edges):
    """Odd-bipartite verdict (no spectral solve)."""
    hypergraph = _load(ctx, path, allow_singleton_edges)
    verdict = find_odd_bipartition(hypergraph)
    if output_format == 'json':
        click.echo(render_json(verdict.to_dict()))
    elif verdict.feasible:
        click.echo(f"odd-bipartite: V1 = {' '.join(str(v) for v in verdict.v1)}")
    else:
        click.echo(f"not odd-bipartite ({verdict.witness.kind})")
        for edge in verdict.witness.edges:
            click.echo("  " + " ".join(str(v) for v in edge))
    ctx.exit(0 if verdict.feasible else EXIT_INFEASIBLE)


@cli.command('radius')
@click.argument('path', type=click.Path(dir_okay=False))
@tol_option
@iters_option
@target_option
@singleton_option
@click.pass_context
def cmd_radius(ctx, path, tol, max_iters, target, allow_singleton_edges):
    """Certified spectral radius enclosure(s) as JSON."""
    hypergraph = _load(ctx, path, allow_singleton_edges)
    analyzer = SpectralAnalyzer(_solver_settings(ctx, tol, max_iters))
    results = analyzer.radius(hypergraph, target)
    click.echo(render_json({name: result.to_dict() for name, result in results.items()}))
    if not all(result.converged for result in results.values()):
        ctx.exit(EXIT_UNCONVERGED)


@cli.command('bounds')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--check', is_flag=True, help='Also solve for rho(A) and verify the bound sandwich.')
@tol_option
@iters_option
@singleton_option
@click.pass_context
def cmd_bounds(ctx, path, check, tol, max_iters, allow_singleton_edges):
    """Degree-based bounds on rho(A) as JSON."""
    hypergraph = _load(ctx, path, allow_singleton_edges)
    analyzer = SpectralAnalyzer(_solver_settings(ctx, tol, max_iters))
    perron = None
    if check and hypergraph.edges:
        perron = analyzer.radius(hypergraph, 'a')[TensorKind.ADJACENCY.value]
    click.echo(render_json(analyzer.bounds(hypergraph, perron).to_dict()))


if __name__ == '__main__':
    sys.exit(cli())
