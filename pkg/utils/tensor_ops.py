"""
Tensor operations for general hypergraphs.

Implicit kernels evaluate A x^{k-1}, L x^{k-1} and Q x^{k-1} edge by edge in
O(sum of edge sizes) without ever forming a tensor. Dense construction builds
the full order-k tensor in exact rationals and serves as the oracle for the
implicit kernels, for two-sided diagonal products and for principal subtensors.
"""

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from models import DenseTensor, DiagonalMatrix, Hypergraph, Residual, TensorKind, fraction_text
from utils.errors import (
    BudgetExceededError,
    DimensionMismatchError,
    EdgelessHypergraphError,
    ZeroVectorError,
)
from utils.hypergraph import degree_profile

logger = logging.getLogger(__name__)

DEFAULT_DENSE_BUDGET = 10 ** 7

Matrix = Union[DiagonalMatrix, np.ndarray, Sequence[Sequence]]


def as_vector(x, dimension: int) -> np.ndarray:
    """Float vector, or object vector when x carries exact rationals"""
    vector = np.asarray(x)
    if vector.dtype != object:
        vector = vector.astype(float)
    if vector.ndim != 1 or vector.shape[0] != dimension:
        raise DimensionMismatchError(f"expected a vector of length {dimension}, got shape {vector.shape}")
    return vector


@lru_cache(maxsize=128)
def _edge_groups(hypergraph: Hypergraph) -> Tuple[Tuple[int, np.ndarray], ...]:
    """Edges bucketed by size as (size, zero-based index matrix) pairs"""
    by_size = defaultdict(list)
    for edge in hypergraph.edges:
        by_size[len(edge)].append([v - 1 for v in edge])
    return tuple((size, np.array(rows, dtype=np.intp)) for size, rows in sorted(by_size.items()))


def _scatter_add(out: np.ndarray, index: np.ndarray, values: np.ndarray) -> None:
    if out.dtype == object:
        for i, value in zip(index.tolist(), values.tolist()):
            out[i] += value
    else:
        out += np.bincount(index, weights=values, minlength=out.shape[0])


def _adjacency_terms(groups, x: np.ndarray, order: int) -> np.ndarray:
    """(1/k) sum over e in E_i of [(k-|e|) x^{e\\i} x_i^{k-|e|} + x^{e\\i} sum_{j in e} x_j^{k-|e|}]"""
    exact = x.dtype == object
    out = np.zeros(x.shape[0], dtype=object if exact else float)
    if exact:
        out[:] = Fraction(0)
    scale = Fraction(1, order) if exact else 1.0 / order
    for size, index in groups:
        if index.shape[0] == 0:
            continue
        values = x[index]
        gap = order - size
        # x ** 0 is 1 even at 0, which the uniform case relies on
        padded = values ** gap
        power_sum = padded.sum(axis=1)
        for column in range(size):
            others = np.prod(np.delete(values, column, axis=1), axis=1)
            terms = scale * others * (gap * padded[:, column] + power_sum)
            _scatter_add(out, index[:, column], terms)
    return out


def _pairwise_sum(parts: List[np.ndarray]) -> np.ndarray:
    while len(parts) > 1:
        merged = [parts[i] + parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            merged.append(parts[-1])
        parts = merged
    return parts[0]


class HypergraphOperator:
    """
    Implicit A_H, L_H or Q_H acting on vectors.

    The order defaults to r(H); passing a larger order evaluates the block that
    H occupies inside a bigger hypergraph's tensor (a component of it, say).
    """

    def __init__(self, hypergraph: Hypergraph, kind: TensorKind = TensorKind.ADJACENCY,
                 order: Optional[int] = None, workers: int = 1):
        if order is None:
            if not hypergraph.edges:
                raise EdgelessHypergraphError("tensor order r(H) is undefined for an edgeless hypergraph")
            order = max(hypergraph.edge_sizes)
        elif hypergraph.edges and order < max(hypergraph.edge_sizes):
            raise DimensionMismatchError(f"order {order} is below the rank {max(hypergraph.edge_sizes)}")
        self.hypergraph = hypergraph
        self.kind = kind
        self.order = order
        self.workers = max(1, workers)
        self.degrees = np.array(degree_profile(hypergraph).degrees, dtype=np.int64)

    @property
    def dimension(self) -> int:
        return self.hypergraph.n

    def _adjacency(self, x: np.ndarray) -> np.ndarray:
        groups = _edge_groups(self.hypergraph)
        if self.workers == 1 or self.hypergraph.num_edges < 2 * self.workers:
            return _adjacency_terms(groups, x, self.order)
        chunks = [tuple((size, np.array_split(index, self.workers)[w]) for size, index in groups)
                  for w in range(self.workers)]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            partials = list(pool.map(lambda chunk: _adjacency_terms(chunk, x, self.order), chunks))
        return _pairwise_sum(partials)

    def apply(self, x) -> np.ndarray:
        x = as_vector(x, self.dimension)
        adjacency = self._adjacency(x)
        if self.kind is TensorKind.ADJACENCY:
            return adjacency
        degrees = self.degrees.astype(object) if x.dtype == object else self.degrees.astype(float)
        diagonal = degrees * x ** (self.order - 1)
        if self.kind is TensorKind.LAPLACIAN:
            return diagonal - adjacency
        return diagonal + adjacency

    def form(self, x) -> Union[float, Fraction]:
        """T x^k = x . (T x^{k-1})"""
        x = as_vector(x, self.dimension)
        return (x * self.apply(x)).sum()


def adjacency_apply(hypergraph: Hypergraph, x, workers: int = 1) -> np.ndarray:
    return HypergraphOperator(hypergraph, TensorKind.ADJACENCY, workers=workers).apply(x)


def laplacian_apply(hypergraph: Hypergraph, x, workers: int = 1) -> np.ndarray:
    return HypergraphOperator(hypergraph, TensorKind.LAPLACIAN, workers=workers).apply(x)


def signless_apply(hypergraph: Hypergraph, x, workers: int = 1) -> np.ndarray:
    return HypergraphOperator(hypergraph, TensorKind.SIGNLESS, workers=workers).apply(x)


def adjacency_form(hypergraph: Hypergraph, x) -> Union[float, Fraction]:
    """A x^k = sum over edges of x^e * sum_{j in e} x_j^{k-|e|}; 0 for an edgeless hypergraph"""
    x = as_vector(x, hypergraph.n)
    if not hypergraph.edges:
        return Fraction(0) if x.dtype == object else 0.0
    order = max(hypergraph.edge_sizes)
    total = Fraction(0) if x.dtype == object else 0.0
    for size, index in _edge_groups(hypergraph):
        values = x[index]
        total += (np.prod(values, axis=1) * (values ** (order - size)).sum(axis=1)).sum()
    return total


def _check_budget(dimension: int, order: int, budget: int) -> None:
    entries = dimension ** order
    if entries > budget:
        raise BudgetExceededError(entries, budget)


def dense_adjacency(hypergraph: Hypergraph, budget: int = DEFAULT_DENSE_BUDGET,
                    order: Optional[int] = None) -> DenseTensor:
    """
    Exact adjacency tensor of a general hypergraph

    A full-size edge puts 1/(k-1)! on every permutation of itself; a smaller
    edge {j1..js} puts (k-s+1)!/k! on every arrangement of each multiset
    {j^(k-s+1), rest of the edge}, one multiset per choice of repeated vertex j.
    """
    if order is None:
        if not hypergraph.edges:
            raise EdgelessHypergraphError("cannot build the adjacency tensor of an edgeless hypergraph")
        order = max(hypergraph.edge_sizes)
    n = hypergraph.n
    _check_budget(n, order, budget)

    entries = np.full((n,) * order, Fraction(0), dtype=object)
    full_weight = Fraction(1, factorial(order - 1))
    for edge in hypergraph.edges:
        vertices = [v - 1 for v in edge]
        size = len(vertices)
        if size == order:
            for index in permutations(vertices):
                entries[index] = full_weight
            continue
        weight = Fraction(factorial(order - size + 1), factorial(order))
        for repeated in vertices:
            multiset = [repeated] * (order - size + 1) + [v for v in vertices if v != repeated]
            for index in set(permutations(multiset)):
                entries[index] = weight
    tensor = DenseTensor(order, n, entries)
    logger.debug(f"Built dense adjacency tensor of order {order}, dimension {n}, "
                 f"{tensor.nonzero_count()} nonzeros")
    return tensor


def _with_degrees(hypergraph: Hypergraph, adjacency: DenseTensor, sign: int) -> DenseTensor:
    entries = sign * adjacency.entries
    for vertex, degree in enumerate(degree_profile(hypergraph).degrees):
        entries[(vertex,) * adjacency.order] += degree
    return DenseTensor(adjacency.order, adjacency.dimension, entries)


def dense_laplacian(hypergraph: Hypergraph, budget: int = DEFAULT_DENSE_BUDGET,
                    order: Optional[int] = None) -> DenseTensor:
    return _with_degrees(hypergraph, dense_adjacency(hypergraph, budget, order), -1)


def dense_signless(hypergraph: Hypergraph, budget: int = DEFAULT_DENSE_BUDGET,
                   order: Optional[int] = None) -> DenseTensor:
    return _with_degrees(hypergraph, dense_adjacency(hypergraph, budget, order), 1)


def dense_tensor(hypergraph: Hypergraph, kind: TensorKind, budget: int = DEFAULT_DENSE_BUDGET,
                 order: Optional[int] = None) -> DenseTensor:
    builders = {
        TensorKind.ADJACENCY: dense_adjacency,
        TensorKind.LAPLACIAN: dense_laplacian,
        TensorKind.SIGNLESS: dense_signless,
    }
    return builders[kind](hypergraph, budget, order)


def dense_apply(tensor: DenseTensor, x) -> np.ndarray:
    """Brute-force contraction (T x^{k-1})_i = sum a_{i i2..ik} x_i2 ... x_ik"""
    x = as_vector(x, tensor.dimension)
    exact = tensor.is_exact and x.dtype == object
    result = tensor.entries if exact else tensor.entries.astype(float)
    if not exact:
        x = x.astype(float)
    for _ in range(tensor.order - 1):
        result = np.tensordot(result, x, axes=([result.ndim - 1], [0]))
    return np.asarray(result)


def zero_tensor(order: int, dimension: int) -> DenseTensor:
    return DenseTensor(order, dimension, np.full((dimension,) * order, Fraction(0), dtype=object))


def identity_tensor(order: int, dimension: int) -> DenseTensor:
    tensor = zero_tensor(order, dimension)
    for i in range(dimension):
        tensor.entries[(i,) * order] = Fraction(1)
    return tensor


def _matrix_array(matrix: Matrix, dimension: int, exact: bool) -> np.ndarray:
    if isinstance(matrix, DiagonalMatrix):
        array = matrix.as_array()
        if dimension != matrix.dimension:
            raise DimensionMismatchError(f"matrix dimension {matrix.dimension} != tensor dimension {dimension}")
    else:
        array = np.array(matrix, dtype=object)
    if array.shape != (dimension, dimension):
        raise DimensionMismatchError(f"matrix shape {array.shape} != ({dimension}, {dimension})")
    if exact:
        return np.vectorize(Fraction, otypes=[object])(array)
    return array.astype(float)


def two_sided_product(left: Matrix, tensor: DenseTensor, right: Matrix,
                      budget: int = DEFAULT_DENSE_BUDGET) -> DenseTensor:
    """
    (P T Q)_{i1..ik} = sum over j of t_{j1..jk} p_{i1 j1} q_{j2 i2} ... q_{jk ik}

    Diagonal P and Q reduce to scaling each entry by p_{i1} q_{i2} ... q_{ik}.
    """
    n, k = tensor.dimension, tensor.order
    _check_budget(n, k, budget)
    exact = tensor.is_exact
    dtype = object if exact else float

    if isinstance(left, DiagonalMatrix) and isinstance(right, DiagonalMatrix):
        if left.dimension != n or right.dimension != n:
            raise DimensionMismatchError("diagonal factors must match the tensor dimension")
        convert = Fraction if exact else float
        p = np.array([convert(v) for v in left.values], dtype=dtype)
        q = np.array([convert(v) for v in right.values], dtype=dtype)
        scale = p.reshape((n,) + (1,) * (k - 1))
        for axis in range(1, k):
            shape = [1] * k
            shape[axis] = n
            scale = scale * q.reshape(shape)
        return DenseTensor(k, n, tensor.entries * scale)

    p = _matrix_array(left, n, exact)
    q = _matrix_array(right, n, exact)
    entries = tensor.entries if exact else tensor.entries.astype(float)
    result = np.tensordot(p, entries, axes=([1], [0]))
    for axis in range(1, k):
        result = np.moveaxis(np.tensordot(result, q, axes=([axis], [0])), -1, axis)
    return DenseTensor(k, n, result)


def diag_similarity(tensor: DenseTensor, diagonal: DiagonalMatrix,
                    budget: int = DEFAULT_DENSE_BUDGET) -> DenseTensor:
    """D^{-(k-1)} T D, which preserves spectrum and H-spectrum"""
    return two_sided_product(diagonal.power(-(tensor.order - 1)), tensor, diagonal, budget)


def principal_subtensor(tensor: DenseTensor, alpha: Iterable[int]) -> DenseTensor:
    """Restriction of every index to the (1-based) vertex subset alpha, reindexed ascending"""
    members = sorted(set(alpha))
    if not members:
        raise DimensionMismatchError("principal subtensor needs a nonempty vertex subset")
    if members[0] < 1 or members[-1] > tensor.dimension:
        raise DimensionMismatchError(f"subset must lie in 1..{tensor.dimension}")
    index = np.array(members, dtype=np.intp) - 1
    entries = tensor.entries[np.ix_(*([index] * tensor.order))]
    return DenseTensor(tensor.order, len(members), entries)


def eigen_residual(operator, eigenvalue, x) -> Residual:
    """
    max_i |(T x^{k-1})_i - lambda x_i^{k-1}| with x scaled to unit max-magnitude

    Args:
        operator: anything exposing order, dimension and apply(x)
        eigenvalue: candidate lambda (exact when x and lambda are rationals)
        x: candidate eigenvector, nonzero
    """
    x = as_vector(x, operator.dimension)
    peak = max(abs(value) for value in x.tolist()) if x.size else 0
    if peak == 0:
        raise ZeroVectorError("eigen residual needs a nonzero vector")
    x = x / peak
    mismatch = operator.apply(x) - eigenvalue * x ** (operator.order - 1)
    value = max(abs(v) for v in np.asarray(mismatch).tolist())
    exact = x.dtype == object and isinstance(eigenvalue, (int, Fraction))
    return Residual(value=float(value), exact=exact)


def dense_tensor_lines(tensor: DenseTensor) -> List[str]:
    """One 'i1 ... ik p/q' line per nonzero entry, lexicographic, 1-based"""
    lines = []
    for index in np.argwhere(tensor.entries != 0):
        position = tuple(int(i) for i in index)
        label = " ".join(str(i + 1) for i in position)
        lines.append(f"{label} {fraction_text(tensor.entries[position])}")
    return lines
