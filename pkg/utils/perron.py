"""
Certified spectral radius of A_H and Q_H.

Shifted power iteration on T + I (x <- (T x^{k-1} + x^{[k-1]})^{[1/(k-1)]}),
with Collatz-Wielandt quotients giving a two-sided enclosure of rho at every
iterate. The shift keeps the iteration from cycling on periodic patterns such
as bipartite graphs.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from models import Hypergraph, PerronResult, Separation, SubHypergraph, TensorKind
from utils.errors import (
    HypergraphError,
    NonPositiveVectorError,
    NotConnectedError,
    NotProperSubHypergraphError,
    RankMismatchError,
    ZeroVectorError,
)
from utils.hypergraph import component_subhypergraph, connected_components, is_connected
from utils.tensor_ops import HypergraphOperator, as_vector, eigen_residual

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITERATIONS = 100000
PROGRESS_EVERY = 1000


def collatz_wielandt(operator, x) -> Tuple[float, float]:
    """
    Collatz-Wielandt quotients min_i and max_i of (T x^{k-1})_i / x_i^{k-1}

    Args:
        operator: nonnegative tensor operator exposing order, dimension, apply
        x: strictly positive vector

    Returns:
        (lower, upper) enclosing rho(T) when T is weakly irreducible
    """
    x = as_vector(x, operator.dimension).astype(float)
    if np.any(x <= 0):
        raise NonPositiveVectorError("Collatz-Wielandt quotients need a strictly positive vector")
    ratios = operator.apply(x) / x ** (operator.order - 1)
    return float(ratios.min()), float(ratios.max())


def _perron_operator(hypergraph: Hypergraph, target: TensorKind, order: Optional[int],
                     workers: int) -> HypergraphOperator:
    if target is TensorKind.LAPLACIAN:
        raise HypergraphError("the Laplacian tensor is not nonnegative; spectral radius supports A and Q")
    return HypergraphOperator(hypergraph, target, order=order, workers=workers)


def _trivial_result(n: int, target: TensorKind, order: int) -> PerronResult:
    return PerronResult(0.0, 0.0, tuple([1.0] * n), 0, True, target, order, 0.0)


class PerronSolver:
    """Shifted power iteration with Collatz-Wielandt enclosures"""

    def __init__(self, tol: float = DEFAULT_TOL, max_iterations: int = DEFAULT_MAX_ITERATIONS,
                 workers: int = 1):
        if tol <= 0:
            raise ValueError(f"tolerance must be positive, got {tol}")
        self.tol = tol
        self.max_iterations = max_iterations
        self.workers = workers
        self.logger = logging.getLogger(__name__)

    def _converged(self, lower: float, upper: float) -> bool:
        return upper - lower <= self.tol * max(1.0, upper)

    def solve(self, operator, target: TensorKind = TensorKind.ADJACENCY) -> PerronResult:
        """
        Run the shifted iteration from the all-ones vector

        Args:
            operator: weakly irreducible nonnegative operator (implicit or dense)
            target: which tensor the operator represents, recorded in the result

        Returns:
            PerronResult: best enclosure seen; converged=False if max_iterations ran out
        """
        order = operator.order
        x = np.ones(operator.dimension)
        lower, upper = collatz_wielandt(operator, x)
        iterations = 0
        while not self._converged(lower, upper) and iterations < self.max_iterations:
            shifted = operator.apply(x) + x ** (order - 1)
            x = shifted ** (1.0 / (order - 1))
            x /= x.max()
            if np.any(x <= 0):
                self.logger.warning(f"Iterate lost positivity after {iterations} iterations; stopping")
                break
            step_lower, step_upper = collatz_wielandt(operator, x)
            lower, upper = max(lower, step_lower), min(upper, step_upper)
            iterations += 1
            if iterations % PROGRESS_EVERY == 0:
                self.logger.debug(f"iteration {iterations}: enclosure [{lower:.17g}, {upper:.17g}]")

        converged = self._converged(lower, upper)
        if not converged:
            self.logger.warning(f"Spectral radius of {target.name} did not converge in {iterations} "
                                f"iterations; enclosure [{lower:.17g}, {upper:.17g}]")
        residual = eigen_residual(operator, 0.5 * (lower + upper), x).value
        self.logger.info(f"rho({target.name}) in [{lower:.17g}, {upper:.17g}] after {iterations} iterations")
        return PerronResult(lower, upper, tuple(float(v) for v in x), iterations, converged,
                            target, order, residual)

    def spectral_radius(self, hypergraph: Hypergraph, target: TensorKind = TensorKind.ADJACENCY,
                        order: Optional[int] = None) -> PerronResult:
        if not is_connected(hypergraph):
            raise NotConnectedError("spectral_radius needs a connected hypergraph; "
                                    "use spectral_radius_per_component")
        if not hypergraph.edges:
            return _trivial_result(hypergraph.n, target, order or 0)
        return self.solve(_perron_operator(hypergraph, target, order, self.workers), target)

    def spectral_radius_per_component(self, hypergraph: Hypergraph,
                                      target: TensorKind = TensorKind.ADJACENCY) -> PerronResult:
        """
        rho of a possibly disconnected H: the largest rho over its component blocks,
        each solved with the global rank as tensor order
        """
        if not hypergraph.edges:
            return PerronResult(0.0, 0.0, tuple([0.0] * hypergraph.n), 0, True, target, 0, 0.0)
        order = max(hypergraph.edge_sizes)
        blocks: List[Tuple[SubHypergraph, PerronResult]] = []
        for component in connected_components(hypergraph):
            sub = component_subhypergraph(hypergraph, component)
            if sub.hypergraph.edges:
                result = self.solve(_perron_operator(sub.hypergraph, target, order, self.workers), target)
            else:
                result = _trivial_result(sub.hypergraph.n, target, order)
            blocks.append((sub, result))

        lead_sub, lead = max(blocks, key=lambda block: block[1].rho_upper)
        vector = [0.0] * hypergraph.n
        for vertex, value in zip(lead_sub.vertex_map, lead.vector):
            vector[vertex - 1] = value
        return PerronResult(
            rho_lower=max(result.rho_lower for _, result in blocks),
            rho_upper=max(result.rho_upper for _, result in blocks),
            vector=tuple(vector),
            iterations=max(result.iterations for _, result in blocks),
            converged=all(result.converged for _, result in blocks),
            target=target,
            order=order,
            residual=max(result.residual for _, result in blocks),
        )


def operator_spectral_radius(operator, target: TensorKind = TensorKind.ADJACENCY,
                             tol: float = DEFAULT_TOL,
                             max_iterations: int = DEFAULT_MAX_ITERATIONS) -> PerronResult:
    return PerronSolver(tol, max_iterations).solve(operator, target)


def spectral_radius(hypergraph: Hypergraph, target: TensorKind = TensorKind.ADJACENCY,
                    tol: float = DEFAULT_TOL, max_iterations: int = DEFAULT_MAX_ITERATIONS,
                    order: Optional[int] = None, workers: int = 1) -> PerronResult:
    return PerronSolver(tol, max_iterations, workers).spectral_radius(hypergraph, target, order)


def spectral_radius_per_component(hypergraph: Hypergraph, target: TensorKind = TensorKind.ADJACENCY,
                                  tol: float = DEFAULT_TOL,
                                  max_iterations: int = DEFAULT_MAX_ITERATIONS,
                                  workers: int = 1) -> PerronResult:
    return PerronSolver(tol, max_iterations, workers).spectral_radius_per_component(hypergraph, target)


def rayleigh(hypergraph: Hypergraph, target: TensorKind, x, order: Optional[int] = None) -> float:
    """
    x . (T x^{k-1}) after scaling x so that sum_i x_i^k = 1; a lower bound on rho(T)
    for the symmetric nonnegative targets A and Q
    """
    operator = _perron_operator(hypergraph, target, order, 1)
    x = as_vector(x, hypergraph.n).astype(float)
    if np.any(x < 0):
        raise NonPositiveVectorError("Rayleigh quotient needs a nonnegative vector")
    norm = (x ** operator.order).sum()
    if norm == 0:
        raise ZeroVectorError("Rayleigh quotient needs a nonzero vector")
    x = x / norm ** (1.0 / operator.order)
    return float(x @ operator.apply(x))


def check_strict_monotonicity(hypergraph: Hypergraph, sub: SubHypergraph,
                              tol: float = DEFAULT_TOL,
                              target: TensorKind = TensorKind.ADJACENCY,
                              max_iterations: int = DEFAULT_MAX_ITERATIONS) -> Separation:
    """
    Compare rho(G) against rho(H) for a proper sub-hypergraph G of the same rank

    Returns:
        Separation.STRICT when rho(G)'s upper end lies below rho(H)'s lower end,
        INVERTED when the enclosures separate the other way, else INDETERMINATE
    """
    if not sub.is_proper:
        raise NotProperSubHypergraphError("G must be a proper sub-hypergraph of H")
    if not sub.same_rank:
        raise RankMismatchError("G must have the same rank as H")
    solver = PerronSolver(tol, max_iterations)
    outer = solver.spectral_radius(hypergraph, target)
    inner = solver.spectral_radius_per_component(sub.hypergraph, target)
    if inner.rho_upper < outer.rho_lower:
        return Separation.STRICT
    if inner.rho_lower > outer.rho_upper:
        logger.warning(f"rho(G) enclosure [{inner.rho_lower}, {inner.rho_upper}] lies above "
                       f"rho(H) enclosure [{outer.rho_lower}, {outer.rho_upper}]")
        return Separation.INVERTED
    return Separation.INDETERMINATE
