"""
Degree-based bounds on rho(A_H) for general hypergraphs, with equality
predictions and a combined report that can be checked against a solver result.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Tuple

from models import BoundsReport, Edge, Hypergraph, PerronResult, TensorKind
from utils.errors import EdgelessHypergraphError, InvalidHypergraphError
from utils.hypergraph import (
    component_subhypergraph,
    connected_components,
    degree_profile,
    is_connected,
    is_regular,
    is_uniform,
)

logger = logging.getLogger(__name__)

SANDWICH_SLACK = 1e-8


def _kth_root(value: int, k: int) -> float:
    """Float k-th root of a nonnegative integer, exact when value is a perfect k-th power"""
    if value == 0:
        return 0.0
    # log accepts integers beyond float range; the root itself stays a degree-sized number
    root = math.exp(math.log(value) / k)
    estimate = round(root)
    for candidate in (estimate - 1, estimate, estimate + 1):
        if candidate >= 0 and candidate ** k == value:
            return float(candidate)
    return root


def lower_bound_average_degree(hypergraph: Hypergraph) -> Tuple[Fraction, bool]:
    """
    rho(A_H) >= average degree, with equality iff H is regular

    Returns:
        (average degree as an exact rational, equality predicted)
    """
    if hypergraph.n == 0:
        raise InvalidHypergraphError("average degree is undefined without vertices")
    return degree_profile(hypergraph).average_degree, is_regular(hypergraph)


def upper_bound_max_degree(hypergraph: Hypergraph) -> Tuple[int, bool]:
    """rho(A_H) <= maximum degree for connected H, with equality iff H is regular"""
    profile = degree_profile(hypergraph)
    return profile.max_degree, is_regular(hypergraph)


def edge_degree_power(degrees, edge: Edge, order: int) -> int:
    """d_{i1}^{k-s+1} d_{i2} ... d_{is} with the edge's degrees sorted descending"""
    ranked = sorted((degrees[v - 1] for v in edge), reverse=True)
    value = ranked[0] ** (order - len(edge) + 1)
    for degree in ranked[1:]:
        value *= degree
    return value


def upper_bound_edge_degree_product(hypergraph: Hypergraph,
                                    order: Optional[int] = None) -> Tuple[float, Edge]:
    """
    max over edges of (d_{i1}^{k-s+1} d_{i2} ... d_{is})^{1/k}

    Returns:
        (bound, maximizing edge); the maximum is taken on exact integer k-th powers
    """
    if not hypergraph.edges:
        raise EdgelessHypergraphError("edge-degree bound needs at least one edge")
    order = order or max(hypergraph.edge_sizes)
    degrees = degree_profile(hypergraph).degrees
    best_edge = max(hypergraph.edges, key=lambda edge: edge_degree_power(degrees, edge, order))
    return _kth_root(edge_degree_power(degrees, best_edge, order), order), best_edge


def _pair_power(degrees, edge: Edge) -> int:
    ranked = sorted((degrees[v - 1] for v in edge), reverse=True)
    return ranked[0] * ranked[1]


def upper_bound_yuan_pairwise(hypergraph: Hypergraph) -> float:
    """max over edges and vertex pairs {i, j} inside an edge of sqrt(d_i d_j)"""
    degrees = degree_profile(hypergraph).degrees
    paired = [edge for edge in hypergraph.edges if len(edge) >= 2]
    if not paired:
        raise EdgelessHypergraphError("pairwise bound needs an edge with two vertices")
    return _kth_root(max(_pair_power(degrees, edge) for edge in paired), 2)


def uniform_refines_pairwise(hypergraph: Hypergraph) -> bool:
    """
    For uniform H, checks in integers that the geometric-mean bound does not exceed
    the pairwise one: (prod d_i)^2 <= (max pair d_i d_j)^k on the maximizing edges
    """
    if not hypergraph.edges or not is_uniform(hypergraph):
        raise InvalidHypergraphError("refinement check applies to uniform hypergraphs with edges")
    order = max(hypergraph.edge_sizes)
    degrees = degree_profile(hypergraph).degrees
    product = max(edge_degree_power(degrees, edge, order) for edge in hypergraph.edges)
    pair = max(_pair_power(degrees, edge) for edge in hypergraph.edges)
    return product ** 2 <= pair ** order


def _best_component_average(hypergraph: Hypergraph) -> Tuple[Fraction, bool]:
    """Best average degree over components that carry edges, with that component's regularity"""
    best = None
    for component in connected_components(hypergraph):
        block = component_subhypergraph(hypergraph, component).hypergraph
        if not block.edges:
            continue
        average, regular = lower_bound_average_degree(block)
        if best is None or average > best[0]:
            best = (average, regular)
    return best if best is not None else lower_bound_average_degree(hypergraph)


def bounds_report(hypergraph: Hypergraph, perron: Optional[PerronResult] = None,
                  slack: float = SANDWICH_SLACK) -> BoundsReport:
    """
    Assemble every degree bound; when an adjacency PerronResult is supplied, record
    any breach of lower <= rho enclosure <= best upper as a violation
    """
    average, regular = lower_bound_average_degree(hypergraph)
    max_degree, _ = upper_bound_max_degree(hypergraph)
    connected = is_connected(hypergraph)
    component_regular = regular
    if not connected:
        average, component_regular = _best_component_average(hypergraph)
    uniform = is_uniform(hypergraph)

    product_bound, witness, geometric_mean, yuan = None, None, None, None
    if hypergraph.edges:
        product_bound, witness = upper_bound_edge_degree_product(hypergraph)
        if uniform:
            geometric_mean = product_bound
        try:
            yuan = upper_bound_yuan_pairwise(hypergraph)
        except EdgelessHypergraphError:
            yuan = None

    if not connected and hypergraph.edges:
        logger.warning("Hypergraph is disconnected; connected-hypothesis bounds applied per component")

    candidates = [float(max_degree)]
    if product_bound is not None:
        candidates.append(product_bound)
    if yuan is not None and uniform:
        candidates.append(yuan)
    best_upper = min(candidates)

    violations = []
    if perron is not None and perron.target is TensorKind.ADJACENCY:
        if float(average) > perron.rho_upper + slack:
            violations.append(f"average degree {float(average)!r} exceeds rho upper end {perron.rho_upper!r}")
        if perron.rho_lower > best_upper + slack:
            violations.append(f"rho lower end {perron.rho_lower!r} exceeds best upper bound {best_upper!r}")
        for message in violations:
            logger.warning(f"Bound sandwich violated: {message}")

    return BoundsReport(
        lower_average_degree=average,
        upper_max_degree=max_degree,
        upper_edge_degree_product=product_bound,
        witness_edge=witness,
        upper_uniform_geometric_mean=geometric_mean,
        upper_yuan_pairwise=yuan,
        best_upper=best_upper,
        equality_flags={
            'regular': regular,
            'average_degree_tight': component_regular and average == max_degree,
            'max_degree_tight': regular and connected,
        },
        per_component=not connected,
        yuan_in_scope=uniform,
        violations=tuple(violations),
    )
