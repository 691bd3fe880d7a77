"""
Spectral report assembly and rendering, shared by the CLI and the HTTP routes.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
import simplejson

from config import Settings
from models import (
    BoundsReport,
    Hypergraph,
    OddBipartition,
    PerronResult,
    SpectralReport,
    TensorKind,
    fraction_text,
)
from utils.bounds import bounds_report
from utils.errors import BudgetExceededError, UnconvergedSolverError
from utils.hypergraph import (
    component_subhypergraph,
    connected_components,
    degree_profile,
    is_regular,
    is_uniform,
    is_weakly_irreducible,
    rank_corank,
)
from utils.odd_bipartite import (
    find_odd_bipartition,
    laplacian_allones_check,
    signed_perron_certificate,
    signless_kernel_certificate,
    similarity_certificate,
)
from utils.perron import PerronSolver

SCHEMA_VERSION = 1

TARGETS = {
    'a': (TensorKind.ADJACENCY,),
    'q': (TensorKind.SIGNLESS,),
    'both': (TensorKind.ADJACENCY, TensorKind.SIGNLESS),
}


class SpectralAnalyzer:
    """Runs every analysis on one hypergraph and collects a SpectralReport"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.solver = PerronSolver(settings.tol, settings.max_iterations, settings.threads)
        self.logger = logging.getLogger(__name__)

    def summarize(self, hypergraph: Hypergraph) -> Dict[str, Any]:
        components = connected_components(hypergraph)
        rank, corank = rank_corank(hypergraph) if hypergraph.edges else (None, None)
        return {
            'n': hypergraph.n,
            'edge_count': hypergraph.num_edges,
            'rank': rank,
            'corank': corank,
            'uniform': is_uniform(hypergraph),
            'regular': is_regular(hypergraph),
            'connected': len(components) <= 1,
            'weakly_irreducible': is_weakly_irreducible(hypergraph) if hypergraph.n else True,
            'components': [list(component) for component in components],
        }

    def radius(self, hypergraph: Hypergraph, target: str = 'both') -> Dict[str, PerronResult]:
        kinds = TARGETS[target]

        def solve(kind: TensorKind) -> PerronResult:
            return self.solver.spectral_radius_per_component(hypergraph, kind)

        if self.settings.threads > 1 and len(kinds) > 1:
            with ThreadPoolExecutor(max_workers=len(kinds)) as pool:
                results = list(pool.map(solve, kinds))
        else:
            results = [solve(kind) for kind in kinds]
        return {kind.value: result for kind, result in zip(kinds, results)}

    def bounds(self, hypergraph: Hypergraph, perron: Optional[PerronResult] = None) -> BoundsReport:
        return bounds_report(hypergraph, perron)

    def _signed_residual(self, hypergraph: Hypergraph, perron: PerronResult) -> float:
        """Largest signed Perron residual over the components carrying edges"""
        order = max(hypergraph.edge_sizes)
        worst = 0.0
        for component in connected_components(hypergraph):
            sub = component_subhypergraph(hypergraph, component).hypergraph
            if not sub.edges:
                continue
            if len(component) == hypergraph.n:
                block, block_perron = hypergraph, perron
            else:
                block = sub
                block_perron = self.solver.spectral_radius(sub, TensorKind.ADJACENCY, order=order)
            residual = signed_perron_certificate(block, find_odd_bipartition(block), block_perron, order)
            worst = max(worst, residual.value)
        return worst

    def certify(self, hypergraph: Hypergraph, bipartition: OddBipartition,
                perron: Dict[str, PerronResult]) -> Dict[str, Any]:
        allones = laplacian_allones_check(hypergraph)
        certificates: Dict[str, Any] = {
            'laplacian_allones_residual': allones.value,
            'signed_perron_residual': None,
            'signless_kernel_exact': None,
            'similarity_exact': None,
            'spectral_certification': 'skipped',
        }
        if not bipartition.feasible:
            return certificates

        certificates['signless_kernel_exact'] = signless_kernel_certificate(hypergraph, bipartition).is_zero
        try:
            certificates['similarity_exact'] = similarity_certificate(hypergraph, bipartition,
                                                                      self.settings.dense_budget)
        except BudgetExceededError as exc:
            self.logger.warning(f"Similarity certificate skipped: {exc}")

        adjacency = perron.get(TensorKind.ADJACENCY.value)
        if adjacency is None or not adjacency.converged or not hypergraph.edges:
            return certificates
        try:
            certificates['signed_perron_residual'] = self._signed_residual(hypergraph, adjacency)
            certificates['spectral_certification'] = 'ok'
        except UnconvergedSolverError as exc:
            self.logger.warning(f"Signed Perron certificate skipped: {exc}")
        return certificates

    def build_report(self, hypergraph: Hypergraph, target: str = 'both') -> SpectralReport:
        perron = self.radius(hypergraph, target) if hypergraph.edges else {}
        bipartition = find_odd_bipartition(hypergraph)
        report = SpectralReport(
            schema_version=SCHEMA_VERSION,
            summary=self.summarize(hypergraph),
            degrees=degree_profile(hypergraph),
            perron=perron,
            bounds=self.bounds(hypergraph, perron.get(TensorKind.ADJACENCY.value)),
            odd_bipartite=bipartition,
            certificates=self.certify(hypergraph, bipartition, perron),
            settings={
                'tol': self.settings.tol,
                'max_iterations': self.settings.max_iterations,
                'target': target,
                'threads': self.settings.threads,
                'dense_budget': self.settings.dense_budget,
                'allow_singleton_edges': hypergraph.allow_singleton_edges,
            },
        )
        self.logger.info(f"Report built for n={hypergraph.n}, {hypergraph.num_edges} edges")
        return report


def json_ready(value: Any) -> Any:
    """Floats become 17-significant-digit Decimals; containers and enums are unwrapped"""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return Decimal(format(float(value), '.16e'))
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return fraction_text(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(key): json_ready(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_ready(item) for item in value]
    return value


def render_json(payload: Dict[str, Any]) -> str:
    return simplejson.dumps(json_ready(payload), use_decimal=True, indent=2, ensure_ascii=False)


def load_json(text: str) -> Dict[str, Any]:
    return simplejson.loads(text)


def _table(rows: List[Dict[str, Any]]) -> str:
    return pd.DataFrame(rows).to_string(index=False)


def render_text(report: SpectralReport) -> str:
    summary = report.summary
    lines = ["=" * 60, "HYPERGRAPH SPECTRAL REPORT".center(60), "=" * 60]
    lines.append(f"vertices: {summary['n']}   edges: {summary['edge_count']}   "
                 f"rank: {summary['rank']}   co-rank: {summary['corank']}")
    lines.append(f"uniform: {summary['uniform']}   regular: {summary['regular']}   "
                 f"connected: {summary['connected']}   components: {len(summary['components'])}")
    lines.append("")
    lines.append(_table([{'vertex': i + 1, 'degree': d} for i, d in enumerate(report.degrees.degrees)])
                 if report.degrees.degrees else "(no vertices)")
    lines.append(f"average degree: {fraction_text(report.degrees.average_degree)}")
    lines.append("")

    if report.perron:
        lines.append(_table([{
            'tensor': name.upper(),
            'rho_lower': f"{result.rho_lower:.12g}",
            'rho_upper': f"{result.rho_upper:.12g}",
            'iterations': result.iterations,
            'converged': result.converged,
        } for name, result in report.perron.items()]))
        lines.append("")

    bounds = report.bounds
    lines.append(_table([
        {'bound': 'average degree (lower)', 'value': f"{float(bounds.lower_average_degree):.12g}"},
        {'bound': 'max degree', 'value': str(bounds.upper_max_degree)},
        {'bound': 'edge degree product', 'value': _optional(bounds.upper_edge_degree_product)},
        {'bound': 'uniform geometric mean', 'value': _optional(bounds.upper_uniform_geometric_mean)},
        {'bound': 'pairwise (uniform scope)', 'value': _optional(bounds.upper_yuan_pairwise)},
        {'bound': 'best upper', 'value': _optional(bounds.best_upper)},
    ]))
    if bounds.per_component:
        lines.append("note: connected-hypothesis bounds applied per component")
    lines.append("")

    verdict = report.odd_bipartite
    if verdict.feasible:
        lines.append(f"odd-bipartite: yes, V1 = {list(verdict.v1)}")
    else:
        lines.append(f"odd-bipartite: no ({verdict.witness.kind}: "
                     f"{[list(edge) for edge in verdict.witness.edges]})")
    for name, value in report.certificates.items():
        lines.append(f"  {name}: {value}")
    lines.append("=" * 60)
    return "\n".join(lines)


def _optional(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.12g}"
