"""GF(2) odd-bipartite decision and the sign-similarity certificates."""

from fractions import Fraction
from itertools import product

import pytest

from models import BipartitionVerdict, Hypergraph, OddBipartition, SignVector, TensorKind
from tests.conftest import random_hypergraph
from utils.errors import InfeasibleBipartitionError, NotConnectedError, UnconvergedSolverError
from utils.hypergraph import from_edges
from utils.odd_bipartite import (
    find_odd_bipartition,
    laplacian_allones_check,
    satisfies_parity,
    sign_similarity_holds,
    sign_vector,
    signed_perron_certificate,
    signless_kernel_certificate,
    signless_similarity_holds,
    similarity_certificate,
)
from utils.perron import PerronSolver, spectral_radius
from utils.tensor_ops import HypergraphOperator, dense_adjacency, dense_laplacian, dense_signless


def _exhaustive_feasible(hypergraph):
    for bits in product((0, 1), repeat=hypergraph.n):
        if satisfies_parity(hypergraph, [v + 1 for v, bit in enumerate(bits) if bit]):
            return True
    return False


@pytest.mark.parametrize("name, v1", [
    ("square", (1, 3)),
    ("nested", (1,)),
    ("mixed", (4,)),
    ("k2", (1,)),
    ("star", (1,)),
])
def test_canonical_partitions(request, name, v1):
    verdict = find_odd_bipartition(request.getfixturevalue(name))
    assert verdict.feasible
    assert verdict.v1 == v1
    assert satisfies_parity(request.getfixturevalue(name), verdict.v1)


def test_odd_cycle_witness_is_every_edge(triangle):
    verdict = find_odd_bipartition(triangle)
    assert verdict.verdict is BipartitionVerdict.INFEASIBLE
    assert verdict.witness.kind == 'inconsistent_rows'
    assert sorted(verdict.witness.edges) == [(1, 2), (1, 3), (2, 3)]
    assert not _exhaustive_feasible(triangle)


def test_odd_edge_short_circuits(complete_3_uniform):
    verdict = find_odd_bipartition(complete_3_uniform)
    assert not verdict.feasible
    assert verdict.witness.kind == 'odd_edge'
    assert len(verdict.witness.edges[0]) % 2 == 1


def test_edgeless_is_trivially_odd_bipartite():
    verdict = find_odd_bipartition(Hypergraph(3))
    assert verdict.feasible and verdict.v1 == ()


def test_inconsistent_witness_rows_sum_to_contradiction():
    # even edges whose characteristic vectors add to zero over an odd count of rows
    hypergraph = from_edges(4, [(1, 2), (2, 3), (1, 3, 2, 4), (3, 4), (1, 4)])
    verdict = find_odd_bipartition(hypergraph)
    assert not verdict.feasible
    edges = verdict.witness.edges
    assert len(edges) % 2 == 1
    for vertex in range(1, 5):
        assert sum(1 for edge in edges if vertex in edge) % 2 == 0
    assert not _exhaustive_feasible(hypergraph)


def test_decision_agrees_with_exhaustive_search(rng):
    for _ in range(40):
        edges = [edge for edge in random_hypergraph(rng, 6, 4, 4).edges if len(edge) % 2 == 0]
        hypergraph = from_edges(6, edges)
        verdict = find_odd_bipartition(hypergraph)
        assert verdict.feasible == _exhaustive_feasible(hypergraph)
        if verdict.feasible:
            assert satisfies_parity(hypergraph, verdict.v1)


def test_sign_vector():
    signs = sign_vector(4, [1, 3])
    assert signs.entries == (-1, 1, -1, 1)
    assert signs.v1 == (1, 3)


@pytest.mark.parametrize("name", ["square", "nested", "mixed", "star"])
def test_sign_similarities_hold_for_odd_bipartite(request, name):
    hypergraph = request.getfixturevalue(name)
    verdict = find_odd_bipartition(hypergraph)
    assert similarity_certificate(hypergraph, verdict)
    assert signless_kernel_certificate(hypergraph, verdict).is_zero


def test_sign_similarity_fails_for_a_wrong_split(square):
    signs = sign_vector(4, [1, 2])
    assert not sign_similarity_holds(dense_adjacency(square), signs)
    assert not signless_similarity_holds(dense_signless(square), dense_laplacian(square), signs)


def test_signed_perron_certificate(mixed, nested, square):
    for hypergraph in (mixed, nested, square):
        verdict = find_odd_bipartition(hypergraph)
        residual = signed_perron_certificate(hypergraph, verdict, spectral_radius(hypergraph))
        assert residual.value < 1e-8
        assert not residual.exact
    # the 4-cycle carries the eigenvalue -2
    assert spectral_radius(square).rho == pytest.approx(2.0, abs=1e-9)


def _minimum_signless_form(hypergraph):
    operator = HypergraphOperator(hypergraph, TensorKind.SIGNLESS)
    return min(operator.form([Fraction(sign) for sign in signs])
               for signs in product((1, -1), repeat=hypergraph.n))


def test_signless_form_vanishes_on_signs_only_when_odd_bipartite(triangle, square):
    inconsistent = from_edges(4, [(1, 2), (2, 3), (1, 2, 3, 4), (3, 4), (1, 4)])
    assert _minimum_signless_form(triangle) > 0
    assert _minimum_signless_form(inconsistent) > 0
    assert _minimum_signless_form(square) == 0


def test_signed_certificate_preconditions(mixed, triangle):
    infeasible = find_odd_bipartition(triangle)
    with pytest.raises(InfeasibleBipartitionError):
        signed_perron_certificate(triangle, infeasible, spectral_radius(triangle))
    unconverged = PerronSolver(tol=1e-15, max_iterations=1).spectral_radius(mixed)
    with pytest.raises(UnconvergedSolverError):
        signed_perron_certificate(mixed, find_odd_bipartition(mixed), unconverged)
    disconnected = from_edges(4, [(1, 2), (3, 4)])
    with pytest.raises(NotConnectedError):
        signed_perron_certificate(disconnected, find_odd_bipartition(disconnected),
                                  PerronSolver().spectral_radius(from_edges(2, [(1, 2)])))


def test_signless_kernel_needs_feasible_split(triangle):
    with pytest.raises(InfeasibleBipartitionError):
        signless_kernel_certificate(triangle, OddBipartition(BipartitionVerdict.INFEASIBLE))


def test_laplacian_allones_is_exactly_zero(rng, mixed, triangle):
    for hypergraph in (mixed, triangle, random_hypergraph(rng, 8, 7, 5)):
        residual = laplacian_allones_check(hypergraph)
        assert residual.is_zero and residual.exact


def test_verdict_serialization(square, triangle):
    assert find_odd_bipartition(square).to_dict() == {'odd_bipartite': True, 'V1': [1, 3], 'witness': None}
    payload = find_odd_bipartition(triangle).to_dict()
    assert payload['odd_bipartite'] is False and payload['V1'] is None
    assert payload['witness']['kind'] == 'inconsistent_rows'


def _signs_satisfying_similarity(hypergraph):
    adjacency = dense_adjacency(hypergraph)
    return [signs for signs in product((1, -1), repeat=hypergraph.n)
            if sign_similarity_holds(adjacency, SignVector(signs))]


def test_no_sign_pattern_works_without_odd_bipartition(triangle):
    inconsistent = from_edges(4, [(1, 2), (2, 3), (1, 2, 3, 4), (3, 4), (1, 4)])
    for hypergraph in (triangle, inconsistent):
        assert not find_odd_bipartition(hypergraph).feasible
        assert _signs_satisfying_similarity(hypergraph) == []


def test_similarity_sign_patterns_are_exactly_the_odd_bipartitions(square):
    found = {sign_vector(4, v1).entries for v1 in ((1, 3), (2, 4))}
    assert set(_signs_satisfying_similarity(square)) == found
