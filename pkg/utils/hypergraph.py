"""
Hypergraph data model operations: edge-list parsing and serialization,
degree/rank statistics, connectivity and the weak-irreducibility digraph.
"""

import re
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components as _csgraph_components

from models import AdjacencyDigraph, DegreeProfile, DenseTensor, Hypergraph, SubHypergraph
from utils.errors import (
    DuplicateEdgeError,
    EdgelessHypergraphError,
    InvalidEdgeError,
    InvalidHypergraphError,
    ParseError,
)

logger = logging.getLogger(__name__)

_TOKEN_SPLIT = re.compile(r"[\s,]+")


def parse_hypergraph(text: str, n: Optional[int] = None,
                     allow_singleton_edges: bool = False) -> Hypergraph:
    """
    Parse the edge-list format into a validated hypergraph

    Args:
        text: optional "n <count>" header, then one edge per line; '#' starts a comment
        n: vertex count to use when the text has no header
        allow_singleton_edges: admit edges with a single vertex

    Returns:
        Hypergraph: n is the declared count, else the largest vertex id seen
    """
    declared = None
    edges: List[Tuple[int, ...]] = []
    seen: Dict[frozenset, int] = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not raw.strip() or raw.strip().startswith('#'):
            continue
        tokens = [token for token in _TOKEN_SPLIT.split(line) if token]

        if tokens and tokens[0].lower() == 'n':
            if edges or declared is not None:
                raise ParseError("header 'n <count>' must come before the edges", line_number)
            if len(tokens) != 2:
                raise ParseError("header must read 'n <count>'", line_number)
            declared = _parse_int(tokens[1], line_number)
            if declared < 0:
                raise ParseError(f"vertex count must be nonnegative, got {declared}", line_number)
            continue

        if not tokens:
            raise InvalidEdgeError("empty edge line", line_number)

        edge = tuple(_parse_int(token, line_number) for token in tokens)
        if len(set(edge)) != len(edge):
            raise InvalidEdgeError(f"edge {list(edge)} repeats a vertex", line_number)
        min_size = 1 if allow_singleton_edges else 2
        if len(edge) < min_size:
            raise InvalidEdgeError(f"edge {list(edge)} has fewer than {min_size} vertices", line_number)
        if min(edge) < 1:
            raise InvalidEdgeError(f"edge {list(edge)} has a vertex id below 1", line_number)

        key = frozenset(edge)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {sorted(edge)} (first seen on line {seen[key]})",
                                     line_number)
        seen[key] = line_number
        edges.append(edge)

    if declared is not None and n is not None and declared != n:
        raise ParseError(f"header declares n={declared} but n={n} was requested")
    count = declared if declared is not None else n
    if count is None:
        count = max((max(edge) for edge in edges), default=0)

    for edge in edges:
        if max(edge) > count:
            raise InvalidEdgeError(f"edge {sorted(edge)} has a vertex id above n={count}",
                                   seen[frozenset(edge)])

    hypergraph = Hypergraph(count, tuple(edges), allow_singleton_edges)
    logger.info(f"Parsed hypergraph with {hypergraph.n} vertices and {hypergraph.num_edges} edges")
    return hypergraph


def _parse_int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"non-integer token {token!r}", line_number) from None


def serialize_hypergraph(hypergraph: Hypergraph) -> str:
    """Canonical edge-list text: header, vertices ascending, edges lexicographic"""
    lines = [f"n {hypergraph.n}"]
    lines.extend(" ".join(str(v) for v in edge) for edge in hypergraph.edges)
    return "\n".join(lines) + "\n"


def from_edges(n: int, edges: Iterable[Iterable[int]],
               allow_singleton_edges: bool = False) -> Hypergraph:
    """Programmatic constructor with the same validation as the parser"""
    return Hypergraph(n, tuple(tuple(edge) for edge in edges), allow_singleton_edges)


def degree_profile(hypergraph: Hypergraph) -> DegreeProfile:
    degrees = [0] * hypergraph.n
    for edge in hypergraph.edges:
        for vertex in edge:
            degrees[vertex - 1] += 1
    if hypergraph.n == 0:
        return DegreeProfile((), 0, 0, Fraction(0))
    return DegreeProfile(
        degrees=tuple(degrees),
        max_degree=max(degrees),
        min_degree=min(degrees),
        average_degree=Fraction(sum(hypergraph.edge_sizes), hypergraph.n),
    )


def rank_corank(hypergraph: Hypergraph) -> Tuple[int, int]:
    """(r(H), cr(H)): largest and smallest edge cardinality"""
    if not hypergraph.edges:
        raise EdgelessHypergraphError("rank and co-rank are undefined for an edgeless hypergraph")
    sizes = hypergraph.edge_sizes
    return max(sizes), min(sizes)


def is_uniform(hypergraph: Hypergraph) -> bool:
    return len(set(hypergraph.edge_sizes)) <= 1


def is_regular(hypergraph: Hypergraph) -> bool:
    return len(set(degree_profile(hypergraph).degrees)) <= 1


def connected_components(hypergraph: Hypergraph) -> List[Tuple[int, ...]]:
    """
    Components of the shared-edge walk relation, isolated vertices as singletons

    Returns:
        list of vertex tuples, each ascending, ordered by smallest vertex
    """
    n, m = hypergraph.n, hypergraph.num_edges
    if n == 0:
        return []
    rows, cols = [], []
    for index, edge in enumerate(hypergraph.edges):
        for vertex in edge:
            rows.append(vertex - 1)
            cols.append(index)
    incidence = sparse.coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, m))
    # vertex/edge bipartite graph keeps large edges linear in their size
    graph = sparse.bmat([[None, incidence], [incidence.T, None]], format='csr') if m else \
        sparse.csr_matrix((n, n))
    _, labels = _csgraph_components(graph, directed=False)
    groups: Dict[int, List[int]] = {}
    for vertex in range(n):
        groups.setdefault(int(labels[vertex]), []).append(vertex + 1)
    return sorted((tuple(members) for members in groups.values()), key=lambda c: c[0])


def is_connected(hypergraph: Hypergraph) -> bool:
    return len(connected_components(hypergraph)) <= 1


def adjacency_digraph(hypergraph: Hypergraph) -> AdjacencyDigraph:
    arcs = {(i, j) for edge in hypergraph.edges for i in edge for j in edge if i != j}
    return AdjacencyDigraph(hypergraph.n, frozenset(arcs))


def tensor_digraph(tensor: DenseTensor) -> AdjacencyDigraph:
    """
    Digraph of a dense tensor's nonzero pattern: arc (i, j) whenever some
    nonzero a_{i i2..ik} has j among i2..ik and i2..ik are not all equal to i
    """
    arcs = set()
    for index in np.argwhere(tensor.entries != 0):
        head, tail = int(index[0]), [int(j) for j in index[1:]]
        if all(j == head for j in tail):
            continue
        arcs.update((head + 1, j + 1) for j in tail if j != head)
    return AdjacencyDigraph(tensor.dimension, frozenset(arcs))


def is_strongly_connected(digraph: AdjacencyDigraph) -> bool:
    if digraph.n <= 1:
        return True
    if not digraph.arcs:
        return False
    heads, tails = zip(*((i - 1, j - 1) for i, j in digraph.arcs))
    matrix = sparse.coo_matrix((np.ones(len(heads)), (heads, tails)), shape=(digraph.n, digraph.n))
    count, _ = _csgraph_components(matrix.tocsr(), directed=True, connection='strong')
    return count == 1


def is_weakly_irreducible(hypergraph: Hypergraph) -> bool:
    return is_strongly_connected(adjacency_digraph(hypergraph))


def proper_sub_hypergraph(hypergraph: Hypergraph, keep_vertices: Iterable[int],
                          keep_edges: Iterable[Iterable[int]]) -> SubHypergraph:
    """
    Restrict H to a vertex subset and an edge subset, relabeling vertices to 1..m

    Returns:
        SubHypergraph flagged with is_proper and same_rank (r(G) = r(H))
    """
    vertices = sorted(set(keep_vertices))
    if any(v < 1 or v > hypergraph.n for v in vertices):
        raise InvalidHypergraphError(f"kept vertices must lie in 1..{hypergraph.n}")
    existing = set(hypergraph.edges)
    kept = sorted({tuple(sorted(edge)) for edge in keep_edges})
    vertex_set = set(vertices)
    for edge in kept:
        if edge not in existing:
            raise InvalidHypergraphError(f"edge {list(edge)} is not an edge of the hypergraph")
        if not vertex_set.issuperset(edge):
            raise InvalidHypergraphError(f"kept edge {list(edge)} is not within the kept vertices")

    relabel = {v: i + 1 for i, v in enumerate(vertices)}
    sub = Hypergraph(len(vertices), tuple(tuple(relabel[v] for v in edge) for edge in kept),
                     hypergraph.allow_singleton_edges)
    is_proper = len(vertices) < hypergraph.n or len(kept) < hypergraph.num_edges
    same_rank = bool(kept) and bool(hypergraph.edges) and \
        max(sub.edge_sizes) == max(hypergraph.edge_sizes)
    if not is_proper:
        logger.debug("Sub-hypergraph keeps every vertex and edge; it is not proper")
    return SubHypergraph(sub, tuple(vertices), is_proper, same_rank)


def component_subhypergraph(hypergraph: Hypergraph, component: Iterable[int]) -> SubHypergraph:
    members = set(component)
    inside = [edge for edge in hypergraph.edges if members.issuperset(edge)]
    return proper_sub_hypergraph(hypergraph, members, inside)
