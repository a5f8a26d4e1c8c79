from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpcoh.isoperimetry import (
    DiscreteHeisenberg,
    Disconnected,
    EmptyInterior,
    Graph,
    Grid,
    InvalidModel,
    RegularTree,
    SolLattice,
    brute_force_cheeger,
    brute_force_dirichlet,
    cheeger_estimate,
    dichotomy_scan,
    dirichlet_constant,
    dirichlet_sandwich,
    fiedler,
    generate_ball,
    parse_model,
    sobolev_p_constant,
    spectral_sandwich,
    sweep_cut,
)


def words_ball(gens: list[np.ndarray], radius: int) -> int:
    """Number of distinct products of at most ``radius`` generators (integer matrices)."""
    seen = {np.eye(gens[0].shape[0], dtype=np.int64).tobytes()}
    for length in range(1, radius + 1):
        for word in product(gens, repeat=length):
            m = np.eye(gens[0].shape[0], dtype=np.int64)
            for g in word:
                m = m @ g
            seen.add(m.tobytes())
    return len(seen)


def heisenberg_generators():
    x = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=np.int64)
    y = np.array([[1, 0, 0], [0, 1, 1], [0, 0, 1]], dtype=np.int64)
    inv = lambda m: np.round(np.linalg.inv(m)).astype(np.int64)  # noqa: E731
    return [x, inv(x), y, inv(y)]


def sol_generators(a):
    a = np.array(a, dtype=np.int64)
    ainv = np.round(np.linalg.inv(a)).astype(np.int64)

    def affine(lin, shift):
        m = np.eye(3, dtype=np.int64)
        m[:2, :2] = lin
        m[:2, 2] = shift
        return m

    eye = np.eye(2, dtype=np.int64)
    return [affine(eye, [1, 0]), affine(eye, [-1, 0]), affine(eye, [0, 1]), affine(eye, [0, -1]),
            affine(a, [0, 0]), affine(ainv, [0, 0])]


def small_balls():
    out = []
    for model, radii in ((Grid(1), (1, 2, 3, 4, 5, 6, 7)), (Grid(2), (1, 2)), (RegularTree(3), (1, 2)),
                         (RegularTree(4), (1,)), (DiscreteHeisenberg(), (1,)), (SolLattice(), (1,))):
        for r in radii:
            g = generate_ball(model, r)
            if g.n <= 16:
                out.append(g)
    return out


@st.composite
def connected_graphs(draw, max_n=10):
    n = draw(st.integers(2, max_n))
    edges = {(i - 1, i) for i in range(1, n)} if draw(st.booleans()) else set()
    if not edges:
        for v in range(1, n):  # random spanning tree
            edges.add((draw(st.integers(0, v - 1)), v))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    return Graph.from_edges(n, edges)


def test_ball_examples():
    p = generate_ball(Grid(1), 3)
    assert p.n == 7
    assert len(p.edges) == 6
    assert len(p.boundary) == 2
    assert generate_ball(RegularTree(3), 2).n == 10
    for r in range(1, 5):
        assert generate_ball(Grid(2), r).n == 2 * r * r + 2 * r + 1


@pytest.mark.parametrize("radius", [1, 2, 3])
def test_heisenberg_ball_matches_word_enumeration(radius):
    assert generate_ball(DiscreteHeisenberg(), radius).n == words_ball(heisenberg_generators(), radius)


@pytest.mark.parametrize("matrix", [((2, 1), (1, 1)), ((3, 1), (2, 1))])
@pytest.mark.parametrize("radius", [1, 2, 3])
def test_sol_ball_matches_word_enumeration(matrix, radius):
    assert generate_ball(SolLattice(matrix), radius).n == words_ball(sol_generators(matrix), radius)


def test_ball_invariants():
    for model in (Grid(2), Grid(3), SolLattice(), DiscreteHeisenberg(), RegularTree(3)):
        g = generate_ball(model, 3)
        assert g.is_connected()
        assert all(a < b for a, b in g.edges)
        assert 0 not in g.boundary
        assert g.radius == 3


def test_invalid_ball_models():
    with pytest.raises(InvalidModel):
        SolLattice(((1, 1), (0, 1)))  # parabolic
    with pytest.raises(InvalidModel):
        SolLattice(((2, 0), (0, 3)))  # not invertible over Z
    with pytest.raises(InvalidModel):
        generate_ball(Grid(2), 0)
    with pytest.raises(InvalidModel):
        parse_model("torus")
    assert parse_model("sol:3,1,2,1") == SolLattice(((3, 1), (2, 1)))
    assert parse_model("grid:3") == Grid(3)


def test_cheeger_examples():
    # K4: the best split is 2 vs 2 with 4 cut edges over 2 vertices
    assert cheeger_estimate(Graph.complete(4)).exact == 2
    assert cheeger_estimate(Graph.cycle(8)).exact == Fraction(1, 2)
    assert cheeger_estimate(Graph.path(7)).exact == Fraction(1, 3)
    assert cheeger_estimate(Graph.path(7)).method == "brute-force"


def test_cheeger_large_graph_uses_sandwich():
    g = generate_ball(Grid(2), 5)
    est = cheeger_estimate(g)
    assert est.method in ("sweep-cut", "spectral-sandwich")
    assert est.lower <= est.upper


def test_disconnected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(Disconnected):
        cheeger_estimate(g)


@pytest.mark.parametrize("g", small_balls() + [Graph.complete(4), Graph.cycle(8), Graph.path(7)],
                         ids=lambda g: f"{g.model}-{g.radius}-{g.n}")
def test_sandwich_contains_brute_force_on_small_graphs(g):
    h = float(brute_force_cheeger(g))
    assert spectral_sandwich(g).contains(h)


@given(connected_graphs())
def test_sandwich_and_sweep_bracket_brute_force(g):
    h = brute_force_cheeger(g)
    assert spectral_sandwich(g).contains(float(h))
    _, vec = fiedler(g)
    assert sweep_cut(g, vec) >= h


@given(connected_graphs(), st.data())
def test_dirichlet_constant_matches_brute_force(g, data):
    boundary = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n - 1))
    gb = g.with_boundary(boundary)
    h, best = dirichlet_constant(gb)
    assert h == brute_force_dirichlet(gb)
    assert Fraction(gb.edge_boundary(best), len(best)) == h
    assert dirichlet_sandwich(gb).contains(float(h))
    assert abs(sobolev_p_constant(gb, 1).value - float(h)) <= 1e-9


def test_sobolev_p2_on_path_matches_eigenvalue():
    est = sobolev_p_constant(Graph.path(7), 2)
    exact = math.sqrt(2 - 2 * math.cos(math.pi / 6))
    assert abs(est.value - exact) < 1e-6
    assert abs(est.crosscheck - exact) < 1e-12


def test_empty_interior():
    g = generate_ball(Grid(2), 1)
    with pytest.raises(EmptyInterior):
        sobolev_p_constant(g.with_boundary(range(g.n)), 2)
    with pytest.raises(EmptyInterior):
        dirichlet_constant(g.with_boundary(range(g.n)))


@pytest.mark.parametrize("p", [1, 2])
def test_sobolev_monotone_under_boundary_growth(p):
    g = generate_ball(Grid(2), 3)
    inner = g.interior
    base = sobolev_p_constant(g, p).value
    grown = sobolev_p_constant(g.with_boundary(set(g.boundary) | {inner[-1], inner[-2]}), p).value
    assert grown >= base - 1e-9


@pytest.mark.parametrize("model", [Grid(2), RegularTree(3), DiscreteHeisenberg()], ids=lambda m: m.name)
def test_holder_consistency(model):
    g = generate_ball(model, 3)
    assert sobolev_p_constant(g, 1).value > 0
    for p in (1.5, 2, 3):
        assert sobolev_p_constant(g, p).value > 1e-12


def test_p2_descent_agrees_with_eigenvalue_on_balls():
    for model in (Grid(2), RegularTree(3)):
        est = sobolev_p_constant(generate_ball(model, 3), 2)
        assert est.value == pytest.approx(est.crosscheck, rel=1e-5)
        assert est.value >= est.crosscheck - 1e-9


def test_scan_examples():
    grid = dichotomy_scan(Grid(2), [2, 3, 4, 5, 6], 1)
    assert grid.monotone_decreasing
    assert grid.values[-1] < grid.values[0] / 2
    tree = dichotomy_scan(RegularTree(3), [2, 3, 4, 5, 6], 1)
    assert min(tree.lower_bounds) >= 0.2
    assert tree.rows[0].dirichlet.exact == brute_force_dirichlet(generate_ball(RegularTree(3), 2))
    sol = dichotomy_scan(SolLattice(), [2, 3, 4, 5], 1)
    assert sol.monotone_decreasing
    with pytest.raises(ValueError):
        dichotomy_scan(Grid(2), [3, 2], 1)


def test_scan_is_reproducible():
    a = dichotomy_scan(DiscreteHeisenberg(), [2, 3], 2)
    b = dichotomy_scan(DiscreteHeisenberg(), [2, 3], 2)
    assert a == b
