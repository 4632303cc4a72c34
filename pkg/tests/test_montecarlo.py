import itertools
import math
import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from triflab.bounds import zykov_clique_max
from triflab.montecarlo import (
    DistributionSpec,
    build_ortho_graph,
    count_cliques,
    estimate_mutual_orthogonality,
    orthogonality_bound,
    sample,
)

BASIS3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
SIGNED3 = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]


# --- specs and sampling -------------------------------------------------------


def test_discrete_spec_keeps_exact_integers():
    spec = DistributionSpec.discrete(BASIS3)
    assert spec.exact_support == tuple(BASIS3)
    assert all(abs(sum(c * c for c in v) - 1) < 1e-12 for v in spec.support)


def test_spec_validation():
    with pytest.raises(ValueError):
        DistributionSpec(kind="discrete", d=3, support=((1.0, 1.0, 0.0),))
    with pytest.raises(ValueError):
        DistributionSpec.discrete(BASIS3, weights=(0.5, 0.5, 0.5))
    with pytest.raises(ValueError):
        DistributionSpec.discrete(BASIS3, weights=(-0.5, 1.0, 0.5))
    with pytest.raises(ValueError):
        DistributionSpec(kind="wat", d=3)


def test_json_roundtrip():
    spec = DistributionSpec.mixture(
        [DistributionSpec.discrete(BASIS3, weights=(0.5, 0.3, 0.2)), DistributionSpec.uniform(3)],
        weights=(0.8, 0.2),
    )
    assert DistributionSpec.from_json_dict(spec.to_json_dict()) == spec


def test_sampling_reproducible():
    spec = DistributionSpec.discrete(BASIS3)
    a = sample(spec, 6, seed=42)
    b = sample(spec, 6, seed=42)
    assert np.array_equal(a, b)
    assert a.shape == (6, 3)


def test_zero_weight_point_never_drawn():
    spec = DistributionSpec.discrete(BASIS3, weights=(0.5, 0.5, 0.0))
    pts = sample(spec, 100_000, seed=1)
    assert not np.any(np.all(pts == np.array([0.0, 0.0, 1.0]), axis=1))


def test_uniform_sampling_clt_sanity():
    pts = sample(DistributionSpec.uniform(3), 10_000, seed=7)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-9)
    assert np.linalg.norm(pts.mean(axis=0)) < 0.05


def test_mixture_sampling_dimensions_and_determinism():
    spec = DistributionSpec.mixture(
        [DistributionSpec.discrete(BASIS3), DistributionSpec.uniform(3)], weights=(0.5, 0.5)
    )
    a = sample(spec, 1000, seed=3)
    assert a.shape == (1000, 3)
    assert np.array_equal(a, sample(spec, 1000, seed=3))


# --- bound values ----------------------------------------------------------------


def test_orthogonality_bound_values():
    assert orthogonality_bound(3, 2) == Fraction(2, 3)
    assert orthogonality_bound(3, 3) == Fraction(2, 9)
    assert orthogonality_bound(2, 2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        orthogonality_bound(3, 4)


# --- estimates -------------------------------------------------------------------


def enumerate_exact_probability(support, weights, ell):
    """Exact orthogonality probability of a discrete spec by enumeration."""
    total = 0.0
    size = len(support)
    for combo in itertools.product(range(size), repeat=ell):
        ok = all(
            sum(a * b for a, b in zip(support[i], support[j])) == 0
            for i, j in itertools.combinations(combo, 2)
        )
        if ok:
            p = 1.0
            for i in combo:
                p *= weights[i]
            total += p
    return total


def test_basis_uniform_attains_bound_ell2():
    spec = DistributionSpec.discrete(BASIS3)
    est = estimate_mutual_orthogonality(spec, 2, 200_000, seed=11)
    assert est.exact_gram
    exact = enumerate_exact_probability(BASIS3, [1 / 3] * 3, 2)
    assert exact == pytest.approx(2 / 3)
    assert est.p_hat == pytest.approx(exact, abs=0.01)
    assert est.within_bound


def test_basis_uniform_attains_bound_ell3():
    spec = DistributionSpec.discrete(BASIS3)
    est = estimate_mutual_orthogonality(spec, 3, 200_000, seed=12)
    exact = enumerate_exact_probability(BASIS3, [1 / 3] * 3, 3)
    assert exact == pytest.approx(2 / 9)
    assert est.p_hat == pytest.approx(exact, abs=0.01)
    assert est.within_bound
    assert est.bound == Fraction(2, 9)


def test_skewed_weights_estimate_matches_enumeration():
    weights = (0.5, 0.3, 0.2)
    spec = DistributionSpec.discrete(BASIS3, weights=weights)
    est = estimate_mutual_orthogonality(spec, 2, 200_000, seed=13)
    exact = enumerate_exact_probability(BASIS3, weights, 2)
    assert exact == pytest.approx(0.62)
    assert est.p_hat == pytest.approx(exact, abs=0.01)
    assert est.within_bound


def test_continuous_orthogonality_is_null():
    est = estimate_mutual_orthogonality(DistributionSpec.uniform(3), 2, 50_000, seed=14)
    assert est.p_hat == 0.0
    assert est.within_bound


def test_estimate_determinism():
    spec = DistributionSpec.discrete(SIGNED3)
    a = estimate_mutual_orthogonality(spec, 2, 10_000, seed=5)
    b = estimate_mutual_orthogonality(spec, 2, 10_000, seed=5)
    assert a == b


def test_estimate_rejects_bad_parameters():
    spec = DistributionSpec.discrete(BASIS3)
    with pytest.raises(ValueError):
        estimate_mutual_orthogonality(spec, 4, 10_000, seed=0)
    with pytest.raises(ValueError):
        estimate_mutual_orthogonality(spec, 2, 10, seed=0)


# --- orthogonality graphs -----------------------------------------------------------


def test_graph_on_basis_is_triangle():
    g = build_ortho_graph(np.array(BASIS3, dtype=float))
    assert sorted(g.edges()) == [(0, 1), (0, 2), (1, 2)]
    assert g.kd1_free  # K3 is K4-free
    assert count_cliques(g, 3) == 1


def test_graph_repeated_point_no_self_edge():
    g = build_ortho_graph(np.array([BASIS3[0], BASIS3[0]], dtype=float))
    assert g.edges() == []


def test_random_sphere_points_give_empty_graph():
    pts = sample(DistributionSpec.uniform(3), 100, seed=21)
    g = build_ortho_graph(pts)
    assert g.edges() == []


def test_signed_basis_graph_has_8_triangles():
    g = build_ortho_graph(np.array(SIGNED3, dtype=float))
    assert count_cliques(g, 3) == 8
    assert g.kd1_free
    assert count_cliques(g, 3) <= zykov_clique_max(6, 3, 3).exact


def test_count_cliques_matches_networkx_on_random_graphs():
    rng = random.Random(31)
    for _ in range(40):
        size = rng.randrange(3, 11)
        edges = [
            (i, j)
            for i in range(size)
            for j in range(i + 1, size)
            if rng.random() < 0.4
        ]
        nbrs = [set() for _ in range(size)]
        for i, j in edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        from triflab.montecarlo import OrthoGraph

        graph = OrthoGraph(
            points=tuple((0.0,) * 3 for _ in range(size)),
            d=3,
            tau=1e-9,
            neighbors=tuple(frozenset(s) for s in nbrs),
            kd1_free=False,
        )
        g = nx.Graph(edges)
        g.add_nodes_from(range(size))
        for ell in (1, 2, 3, 4):
            expected = sum(1 for c in nx.enumerate_all_cliques(g) if len(c) == ell)
            assert count_cliques(graph, ell) == expected


def test_battery_within_bound():
    """A reduced version of the acceptance battery: 10 spec shapes, 3-sigma."""
    specs = battery_of_distributions()
    assert len(specs) >= 10
    for name, spec, ell in specs:
        est = estimate_mutual_orthogonality(spec, ell, 50_000, seed=hash(name) % 2 ** 31)
        assert est.within_bound, name


def battery_of_distributions():
    basis2 = [(1, 0), (0, 1)]
    basis4 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    tilted = DistributionSpec.discrete([(3, 4, 0), (-4, 3, 0), (0, 0, 5)])
    return [
        ("basis-uniform-d3-ell2", DistributionSpec.discrete(BASIS3), 2),
        ("basis-uniform-d3-ell3", DistributionSpec.discrete(BASIS3), 3),
        ("signed-basis-d3", DistributionSpec.discrete(SIGNED3), 2),
        ("skewed-d3", DistributionSpec.discrete(BASIS3, weights=(0.5, 0.3, 0.2)), 2),
        ("skewed-signed-d3-ell3", DistributionSpec.discrete(SIGNED3, weights=(0.3, 0.3, 0.1, 0.1, 0.1, 0.1)), 3),
        ("basis-uniform-d2", DistributionSpec.discrete(basis2), 2),
        ("basis-uniform-d4-ell2", DistributionSpec.discrete(basis4), 2),
        ("tilted-frame-d3", tilted, 2),
        ("continuous-d2", DistributionSpec.uniform(2), 2),
        ("continuous-d3", DistributionSpec.uniform(3), 2),
        (
            "mixture-discrete-continuous",
            DistributionSpec.mixture(
                [DistributionSpec.discrete(BASIS3), DistributionSpec.uniform(3)],
                weights=(0.8, 0.2),
            ),
            2,
        ),
        (
            "mixture-half-half",
            DistributionSpec.mixture(
                [DistributionSpec.discrete([(1, 0, 0), (0, 1, 0)]), DistributionSpec.uniform(3)],
                weights=(0.5, 0.5),
            ),
            2,
        ),
    ]
