"""Degree bounds on rho(A_H) and their sandwich against the solver."""

import math
from fractions import Fraction

import pytest

from models import Hypergraph, PerronResult, TensorKind
from tests.conftest import random_hypergraph
from utils.bounds import (
    _kth_root,
    bounds_report,
    edge_degree_power,
    lower_bound_average_degree,
    upper_bound_edge_degree_product,
    upper_bound_max_degree,
    upper_bound_yuan_pairwise,
    uniform_refines_pairwise,
)
from utils.errors import EdgelessHypergraphError, InvalidHypergraphError
from utils.hypergraph import degree_profile, from_edges, is_connected
from utils.perron import spectral_radius, spectral_radius_per_component


def test_kth_root_is_exact_on_perfect_powers():
    assert _kth_root(27, 3) == 3.0
    assert _kth_root(10 ** 12, 4) == 1000.0
    assert _kth_root(8, 4) == pytest.approx(8 ** 0.25)


def test_complete_uniform_bounds_all_equal_three(complete_3_uniform):
    report = bounds_report(complete_3_uniform)
    assert report.lower_average_degree == 3
    assert report.upper_max_degree == 3
    assert report.upper_edge_degree_product == 3.0
    assert report.upper_uniform_geometric_mean == 3.0
    assert report.upper_yuan_pairwise == 3.0
    assert report.best_upper == 3.0
    assert report.equality_flags == {'regular': True, 'average_degree_tight': True, 'max_degree_tight': True}


def test_mixed_bounds(mixed):
    average, regular = lower_bound_average_degree(mixed)
    assert average == Fraction(6, 5) and not regular
    assert upper_bound_max_degree(mixed) == (2, False)
    bound, witness = upper_bound_edge_degree_product(mixed)
    assert witness == (4, 5)
    assert bound == pytest.approx(8 ** 0.25)
    report = bounds_report(mixed)
    assert report.best_upper == pytest.approx(8 ** 0.25)
    assert report.upper_uniform_geometric_mean is None
    assert not report.yuan_in_scope


def test_edge_degree_power_sorts_degrees():
    assert edge_degree_power((1, 3, 2), (1, 2), 3) == 3 ** 2 * 1
    assert edge_degree_power((1, 3, 2), (1, 2, 3), 3) == 3 * 2 * 1


def test_star_bounds(star):
    # degrees (3, 1, 1, 1): product bound sqrt(3) is tight, max degree is not
    report = bounds_report(star)
    assert report.upper_edge_degree_product == pytest.approx(math.sqrt(3))
    assert report.upper_yuan_pairwise == pytest.approx(math.sqrt(3))
    assert report.best_upper == pytest.approx(math.sqrt(3))
    assert report.lower_average_degree == Fraction(3, 2)


def test_pairwise_bound_on_nonuniform_is_reported_not_used(nested):
    report = bounds_report(nested)
    assert report.upper_yuan_pairwise == pytest.approx(math.sqrt(4))
    assert not report.yuan_in_scope
    assert report.best_upper == min(float(report.upper_max_degree), report.upper_edge_degree_product)


def test_uniform_refines_pairwise(rng):
    for _ in range(10):
        edges = random_hypergraph(rng, 7, 6, 3).edges
        uniform = [edge for edge in edges if len(edge) == 3] or [(1, 2, 3)]
        assert uniform_refines_pairwise(from_edges(7, uniform))
    with pytest.raises(InvalidHypergraphError):
        uniform_refines_pairwise(from_edges(4, [(1, 2), (1, 2, 3)]))


def test_bounds_sandwich_random(rng):
    for _ in range(500):
        hypergraph = random_hypergraph(rng, 7, 6, 4)
        perron = spectral_radius_per_component(hypergraph)
        report = bounds_report(hypergraph, perron)
        assert float(report.lower_average_degree) <= perron.rho_upper + 1e-8
        if is_connected(hypergraph):
            assert report.violations == ()
            assert perron.rho_lower <= report.best_upper + 1e-8
        assert report.per_component == (not is_connected(hypergraph))


def test_large_rank_edge_does_not_overflow():
    # vertex 1 has degree 36, so the product for a pair edge is 36^199 at order 200
    edges = [tuple(range(1, 201))] + [(1, v) for v in range(201, 236)]
    report = bounds_report(from_edges(235, edges))
    assert report.upper_max_degree == 36
    assert report.upper_edge_degree_product == pytest.approx(math.exp(199 / 200 * math.log(36)))
    assert report.best_upper == report.upper_edge_degree_product
    assert report.lower_average_degree == Fraction(270, 235)
    assert _kth_root(36 ** 200, 200) == 36.0


def test_disconnected_lower_bound_uses_best_component():
    report = bounds_report(from_edges(3, [(1, 2)]))
    assert report.per_component
    assert report.lower_average_degree == 1
    assert report.equality_flags['average_degree_tight']
    assert not report.equality_flags['regular']

    # the triangle block averages 2, the pair block 1
    report = bounds_report(from_edges(5, [(1, 2), (2, 3), (1, 3), (4, 5)]))
    assert report.lower_average_degree == 2
    assert report.equality_flags['average_degree_tight']
    assert report.to_dict()['lower_average_degree'] == "2"


def test_edge_degree_bound_is_tight_on_regular(complete_3_uniform):
    rho = spectral_radius(complete_3_uniform).rho
    assert upper_bound_edge_degree_product(complete_3_uniform)[0] == pytest.approx(rho, rel=1e-9)


def test_violation_recorded_for_inconsistent_enclosure(complete_3_uniform):
    bogus = PerronResult(5.0, 5.0, (1.0,) * 4, 1, True, TensorKind.ADJACENCY, 3)
    report = bounds_report(complete_3_uniform, bogus)
    assert len(report.violations) == 1
    assert "best upper" in report.violations[0]


def test_signless_enclosure_is_not_checked(complete_3_uniform):
    signless = PerronResult(6.0, 6.0, (1.0,) * 4, 1, True, TensorKind.SIGNLESS, 3)
    assert bounds_report(complete_3_uniform, signless).violations == ()


def test_edgeless_and_empty_inputs():
    report = bounds_report(Hypergraph(3))
    assert report.best_upper == 0.0
    assert report.upper_edge_degree_product is None
    with pytest.raises(EdgelessHypergraphError):
        upper_bound_edge_degree_product(Hypergraph(3))
    with pytest.raises(EdgelessHypergraphError):
        upper_bound_yuan_pairwise(Hypergraph(2))
    with pytest.raises(InvalidHypergraphError):
        lower_bound_average_degree(Hypergraph(0))


def test_regularity_flags_track_degree_profile(path3):
    report = bounds_report(path3)
    assert not report.equality_flags['regular']
    assert report.to_dict()['lower_average_degree'] == "4/3"
    assert degree_profile(path3).max_degree == report.upper_max_degree
