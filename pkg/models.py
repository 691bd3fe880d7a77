"""
Domain models for the hypergraph spectral toolkit.
Every model is an immutable dataclass with a to_dict() serializer.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from utils.errors import InvalidHypergraphError

Edge = Tuple[int, ...]


class TensorKind(Enum):
    ADJACENCY = "a"
    LAPLACIAN = "l"
    SIGNLESS = "q"


class Separation(Enum):
    STRICT = "strict"
    INDETERMINATE = "indeterminate"
    INVERTED = "inverted"


class BipartitionVerdict(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


def fraction_text(value: Fraction) -> str:
    """Lowest-terms rational as 'p/q', or 'p' for integers"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Hypergraph:
    """Vertices 1..n and a set of distinct edges, stored canonically sorted"""
    n: int
    edges: Tuple[Edge, ...] = ()
    allow_singleton_edges: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise InvalidHypergraphError(f"vertex count must be nonnegative, got {self.n}")
        canonical = tuple(sorted(tuple(sorted(edge)) for edge in self.edges))
        object.__setattr__(self, 'edges', canonical)
        min_size = 1 if self.allow_singleton_edges else 2
        for edge in canonical:
            if len(set(edge)) != len(edge):
                raise InvalidHypergraphError(f"edge {list(edge)} repeats a vertex")
            if len(edge) < min_size:
                raise InvalidHypergraphError(f"edge {list(edge)} has fewer than {min_size} vertices")
            if edge[0] < 1 or edge[-1] > self.n:
                raise InvalidHypergraphError(f"edge {list(edge)} leaves the vertex range 1..{self.n}")
        for previous, current in zip(canonical, canonical[1:]):
            if previous == current:
                raise InvalidHypergraphError(f"duplicate edge {list(current)}")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def edge_sizes(self) -> Tuple[int, ...]:
        return tuple(len(edge) for edge in self.edges)

    def incident_edges(self, vertex: int) -> List[Edge]:
        """E_i: the edges containing the given vertex"""
        return [edge for edge in self.edges if vertex in edge]

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.n, 'edges': [list(edge) for edge in self.edges]}


@dataclass(frozen=True)
class DegreeProfile:
    degrees: Tuple[int, ...]
    max_degree: int
    min_degree: int
    average_degree: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            'degrees': list(self.degrees),
            'max_degree': self.max_degree,
            'min_degree': self.min_degree,
            'average_degree': fraction_text(self.average_degree),
        }


@dataclass(frozen=True)
class AdjacencyDigraph:
    n: int
    arcs: frozenset = frozenset()

    def successors(self, vertex: int) -> List[int]:
        return sorted(j for (i, j) in self.arcs if i == vertex)


@dataclass(frozen=True)
class SubHypergraph:
    """A sub-hypergraph relabeled to 1..m; vertex_map[i-1] is the original id of vertex i"""
    hypergraph: Hypergraph
    vertex_map: Tuple[int, ...]
    is_proper: bool
    same_rank: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'vertices': list(self.vertex_map),
            'edges': [[self.vertex_map[v - 1] for v in edge] for edge in self.hypergraph.edges],
            'is_proper': self.is_proper,
            'same_rank': self.same_rank,
        }


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Order-k, dimension-n tensor; entries has shape (n,)*k, object dtype for exact rationals"""
    order: int
    dimension: int
    entries: np.ndarray

    @property
    def is_exact(self) -> bool:
        return self.entries.dtype == object

    def apply(self, x) -> np.ndarray:
        from utils.tensor_ops import dense_apply
        return dense_apply(self, x)

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.entries != 0))

    def equals(self, other: 'DenseTensor') -> bool:
        """Entrywise equality (exact when both tensors hold rationals)"""
        return (self.order == other.order and self.dimension == other.dimension
                and bool(np.all(self.entries == other.entries)))

    def __neg__(self) -> 'DenseTensor':
        return DenseTensor(self.order, self.dimension, -self.entries)


@dataclass(frozen=True)
class DiagonalMatrix:
    values: Tuple[Any, ...]

    def __post_init__(self):
        if any(value == 0 for value in self.values):
            raise InvalidHypergraphError("diagonal matrix must be nonsingular")

    @property
    def dimension(self) -> int:
        return len(self.values)

    def power(self, exponent: int) -> 'DiagonalMatrix':
        """D^exponent; negative exponents stay exact for Fraction entries"""
        if exponent >= 0:
            return DiagonalMatrix(tuple(value ** exponent for value in self.values))
        return DiagonalMatrix(tuple(1 / (Fraction(value) ** -exponent) if isinstance(value, (int, Fraction))
                                    else 1.0 / value ** -exponent for value in self.values))

    def as_array(self) -> np.ndarray:
        return np.diag(np.array(self.values, dtype=object))


@dataclass(frozen=True)
class Residual:
    value: float
    exact: bool = False
    norm: str = "max"

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def to_dict(self) -> Dict[str, Any]:
        return {'value': self.value, 'exact': self.exact, 'norm': self.norm}


@dataclass(frozen=True)
class PerronResult:
    rho_lower: float
    rho_upper: float
    vector: Tuple[float, ...]
    iterations: int
    converged: bool
    target: TensorKind
    order: int
    residual: float = 0.0

    @property
    def rho(self) -> float:
        return 0.5 * (self.rho_lower + self.rho_upper)

    @property
    def width(self) -> float:
        return self.rho_upper - self.rho_lower

    def to_dict(self) -> Dict[str, Any]:
        return {
            'target': self.target.value,
            'rho_lower': self.rho_lower,
            'rho_upper': self.rho_upper,
            'iterations': self.iterations,
            'converged': self.converged,
            'order': self.order,
            'residual': self.residual,
            'vector': list(self.vector),
        }


@dataclass(frozen=True)
class BoundsReport:
    lower_average_degree: Fraction
    upper_max_degree: int
    upper_edge_degree_product: Optional[float]
    witness_edge: Optional[Edge]
    upper_uniform_geometric_mean: Optional[float]
    upper_yuan_pairwise: Optional[float]
    best_upper: Optional[float]
    equality_flags: Dict[str, bool] = field(default_factory=dict)
    per_component: bool = False
    yuan_in_scope: bool = False
    violations: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lower_average_degree': fraction_text(self.lower_average_degree),
            'lower_average_degree_value': float(self.lower_average_degree),
            'upper_max_degree': self.upper_max_degree,
            'upper_edge_degree_product': self.upper_edge_degree_product,
            'witness_edge': list(self.witness_edge) if self.witness_edge else None,
            'upper_uniform_geometric_mean': self.upper_uniform_geometric_mean,
            'upper_yuan_pairwise': self.upper_yuan_pairwise,
            'yuan_in_scope': self.yuan_in_scope,
            'best_upper': self.best_upper,
            'equality_flags': dict(self.equality_flags),
            'per_component': self.per_component,
            'violations': list(self.violations),
        }


@dataclass(frozen=True)
class BipartitionWitness:
    """Infeasibility certificate: one odd edge, or edges whose parity rows sum to 0 = 1"""
    kind: str
    edges: Tuple[Edge, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'edges': [list(edge) for edge in self.edges]}


@dataclass(frozen=True)
class OddBipartition:
    verdict: BipartitionVerdict
    v1: Tuple[int, ...] = ()
    witness: Optional[BipartitionWitness] = None

    @property
    def feasible(self) -> bool:
        return self.verdict is BipartitionVerdict.FEASIBLE

    def to_dict(self) -> Dict[str, Any]:
        return {
            'odd_bipartite': self.feasible,
            'V1': list(self.v1) if self.feasible else None,
            'witness': self.witness.to_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class SignVector:
    entries: Tuple[int, ...]

    def __post_init__(self):
        if any(value not in (1, -1) for value in self.entries):
            raise InvalidHypergraphError("sign vector entries must be +1 or -1")

    @property
    def v1(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i, value in enumerate(self.entries) if value == -1)

    def as_diagonal(self) -> DiagonalMatrix:
        return DiagonalMatrix(tuple(Fraction(value) for value in self.entries))


@dataclass(frozen=True)
class SpectralReport:
    schema_version: int
    summary: Dict[str, Any]
    degrees: DegreeProfile
    perron: Dict[str, PerronResult]
    bounds: BoundsReport
    odd_bipartite: OddBipartition
    certificates: Dict[str, Any]
    settings: Dict[str, Any]

    @property
    def converged(self) -> bool:
        return all(result.converged for result in self.perron.values())

    def to_dict(self) -> Dict[str, Any]:
        verdict = self.odd_bipartite.to_dict()
        verdict['certificates'] = dict(self.certificates)
        return {
            'schema_version': self.schema_version,
            'summary': dict(self.summary),
            'degrees': self.degrees.to_dict(),
            'perron': {name: result.to_dict() for name, result in self.perron.items()},
            'bounds': self.bounds.to_dict(),
            'odd_bipartite': verdict,
            'settings': dict(self.settings),
        }
