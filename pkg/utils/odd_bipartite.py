"""
Odd-bipartite decision and spectral certificates.

A bipartition V1 | V2 is odd when every edge meets both sides in an odd number
of vertices. Writing y_v = 1 on V1 this is the GF(2) system sum_{v in e} y_v = 1
for every edge, solved here on int bitsets with lowest-index pivoting.
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Optional

from models import (
    BipartitionVerdict,
    BipartitionWitness,
    DenseTensor,
    Hypergraph,
    OddBipartition,
    PerronResult,
    Residual,
    SignVector,
    TensorKind,
)
from utils.errors import InfeasibleBipartitionError, NotConnectedError, UnconvergedSolverError
from utils.hypergraph import is_connected
from utils.tensor_ops import (
    DEFAULT_DENSE_BUDGET,
    HypergraphOperator,
    dense_adjacency,
    dense_laplacian,
    dense_signless,
    diag_similarity,
    eigen_residual,
)

logger = logging.getLogger(__name__)


class _ParityRow:
    __slots__ = ('mask', 'rhs', 'origin')

    def __init__(self, mask: int, rhs: int, origin: int):
        self.mask = mask
        self.rhs = rhs
        self.origin = origin

    def absorb(self, other: '_ParityRow') -> None:
        self.mask ^= other.mask
        self.rhs ^= other.rhs
        self.origin ^= other.origin


def _bits(value: int) -> List[int]:
    return [i for i in range(value.bit_length()) if (value >> i) & 1]


def find_odd_bipartition(hypergraph: Hypergraph) -> OddBipartition:
    """
    Decide odd-bipartiteness exactly

    Returns:
        OddBipartition: feasible with the canonical V1 (free variables zeroed after
        reduced row echelon elimination), or infeasible with an odd edge or the
        set of edges whose parity rows add up to 0 = 1
    """
    for edge in hypergraph.edges:
        if len(edge) % 2:
            logger.info(f"Edge {list(edge)} has odd size; hypergraph is not odd-bipartite")
            return OddBipartition(BipartitionVerdict.INFEASIBLE,
                                  witness=BipartitionWitness('odd_edge', (edge,)))

    rows = [_ParityRow(sum(1 << (v - 1) for v in edge), 1, 1 << index)
            for index, edge in enumerate(hypergraph.edges)]
    pivots = []
    top = 0
    for column in range(hypergraph.n):
        pivot = next((r for r in range(top, len(rows)) if (rows[r].mask >> column) & 1), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        for r, row in enumerate(rows):
            if r != top and (row.mask >> column) & 1:
                row.absorb(rows[top])
        pivots.append((column, rows[top]))
        top += 1
        if top == len(rows):
            break

    for row in rows:
        if row.mask == 0 and row.rhs == 1:
            witness_edges = tuple(hypergraph.edges[i] for i in _bits(row.origin))
            logger.info(f"Parity system is inconsistent; witness uses {len(witness_edges)} edges")
            return OddBipartition(BipartitionVerdict.INFEASIBLE,
                                  witness=BipartitionWitness('inconsistent_rows', witness_edges))

    v1 = tuple(sorted(column + 1 for column, row in pivots if row.rhs == 1))
    return OddBipartition(BipartitionVerdict.FEASIBLE, v1=v1)


def satisfies_parity(hypergraph: Hypergraph, v1: Iterable[int]) -> bool:
    """Direct edge-by-edge check that |e & V1| and |e - V1| are both odd"""
    side = set(v1)
    for edge in hypergraph.edges:
        inside = sum(1 for v in edge if v in side)
        if inside % 2 == 0 or (len(edge) - inside) % 2 == 0:
            return False
    return True


def sign_vector(n: int, v1: Iterable[int]) -> SignVector:
    side = set(v1)
    return SignVector(tuple(-1 if v in side else 1 for v in range(1, n + 1)))


def _require_feasible(bipartition: OddBipartition) -> None:
    if not bipartition.feasible:
        raise InfeasibleBipartitionError("certificate needs a feasible odd bipartition")


def signed_perron_certificate(hypergraph: Hypergraph, bipartition: OddBipartition,
                              perron: PerronResult, order: Optional[int] = None) -> Residual:
    """Residual of (-rho, Perron vector with signs flipped on V1) as an H-eigenpair of A"""
    _require_feasible(bipartition)
    if not perron.converged:
        raise UnconvergedSolverError("signed certificate needs a converged Perron solve")
    if not is_connected(hypergraph):
        raise NotConnectedError("signed certificate is defined for connected hypergraphs")
    signs = sign_vector(hypergraph.n, bipartition.v1).entries
    flipped = [sign * value for sign, value in zip(signs, perron.vector)]
    operator = HypergraphOperator(hypergraph, TensorKind.ADJACENCY, order=order or perron.order)
    return eigen_residual(operator, -perron.rho, flipped)


def signless_kernel_certificate(hypergraph: Hypergraph, bipartition: OddBipartition,
                                order: Optional[int] = None) -> Residual:
    """Exact residual of Q x^{k-1} = 0 for x = -1 on V1 and +1 elsewhere"""
    _require_feasible(bipartition)
    if not hypergraph.edges and order is None:
        return Residual(0.0, exact=True)
    signs = sign_vector(hypergraph.n, bipartition.v1).entries
    operator = HypergraphOperator(hypergraph, TensorKind.SIGNLESS, order=order)
    return eigen_residual(operator, Fraction(0), [Fraction(sign) for sign in signs])


def sign_similarity_holds(adjacency: DenseTensor, signs: SignVector) -> bool:
    """A = -P^{-(k-1)} A P exactly, P = diag(signs)"""
    return (-diag_similarity(adjacency, signs.as_diagonal())).equals(adjacency)


def signless_similarity_holds(signless: DenseTensor, laplacian: DenseTensor, signs: SignVector) -> bool:
    """L = P^{-(k-1)} Q P exactly, P = diag(signs)"""
    return diag_similarity(signless, signs.as_diagonal()).equals(laplacian)


def similarity_certificate(hypergraph: Hypergraph, bipartition: OddBipartition,
                           budget: int = DEFAULT_DENSE_BUDGET) -> bool:
    """Both sign similarities checked entrywise in exact rationals on the dense tensors"""
    _require_feasible(bipartition)
    if not hypergraph.edges:
        return True
    signs = sign_vector(hypergraph.n, bipartition.v1)
    adjacency = dense_adjacency(hypergraph, budget)
    holds = sign_similarity_holds(adjacency, signs) and signless_similarity_holds(
        dense_signless(hypergraph, budget), dense_laplacian(hypergraph, budget), signs)
    logger.info(f"Sign similarity certificate for V1={list(bipartition.v1)}: {holds}")
    return holds


def laplacian_allones_check(hypergraph: Hypergraph) -> Residual:
    """Exact residual of L 1^{k-1} = 0; zero for every hypergraph"""
    if not hypergraph.edges:
        return Residual(0.0, exact=True)
    operator = HypergraphOperator(hypergraph, TensorKind.LAPLACIAN)
    return eigen_residual(operator, Fraction(0), [Fraction(1)] * hypergraph.n)
