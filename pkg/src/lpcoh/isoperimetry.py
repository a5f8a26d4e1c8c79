"""Finite-ball experiments on isoperimetry and L^p Sobolev constants of graphs.

Balls in Cayley graphs of Z^d, Z^2 x|_A Z and the discrete Heisenberg group
stand in for unimodular (closed at infinity) groups; balls in the k-regular
tree stand in for the open case.  No lattice exists in a non-unimodular
group, so the tree is a substitute rather than a lattice.

Two isoperimetric quantities appear:

* the Cheeger constant of a whole finite graph, min |dS|/|S| over |S| <= n/2;
* the Dirichlet constant of a ball, min |dS|/|S| over nonempty S inside the
  interior (boundary shell excluded), where dS counts every edge leaving S.

The second one is the p = 1 case of the Sobolev constant with u forced to 0
on the boundary shell, by the coarea formula.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx
import numpy as np
import scipy.optimize
import scipy.sparse
import scipy.sparse.linalg

DENSE_EIGEN_LIMIT = 2500
BRUTE_FORCE_LIMIT = 16


class InvalidModel(ValueError):
    pass


class Disconnected(ValueError):
    pass


class EmptyInterior(ValueError):
    pass


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]  # a < b, sorted
    boundary: frozenset[int] = frozenset()
    model: str = ""
    radius: int | None = None
    labels: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if not (0 <= a < b < self.n):
                raise ValueError(f"edge {(a, b)} not normalized for {self.n} vertices")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], boundary: Iterable[int] = (),
                   **meta) -> Graph:
        es = sorted({(min(a, b), max(a, b)) for a, b in edges})
        return cls(n, tuple(es), frozenset(boundary), **meta)

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)], boundary=(0, n - 1), model=f"P{n}")

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)], model=f"C{n}")

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, combinations(range(n), 2), model=f"K{n}")

    def with_boundary(self, boundary: Iterable[int]) -> Graph:
        return Graph(self.n, self.edges, frozenset(boundary), self.model, self.radius, self.labels)

    @property
    def interior(self) -> list[int]:
        return [v for v in range(self.n) if v not in self.boundary]

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.neighbors()
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.n

    def laplacian(self) -> scipy.sparse.csr_matrix:
        """Combinatorial Laplacian D - A."""
        if not self.edges:
            return scipy.sparse.csr_matrix(np.diag(np.zeros(self.n)))
        e = np.array(self.edges)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        adj = scipy.sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.n, self.n))
        return (scipy.sparse.diags(self.degrees().astype(float)) - adj).tocsr()

    def edge_boundary(self, s: Iterable[int]) -> int:
        s = set(s)
        return sum(1 for a, b in self.edges if (a in s) != (b in s))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


# ---------------------------------------------------------------- ball models


class BallModel:
    """A finitely generated group with a fixed, ordered symmetric generating set."""

    name = ""

    def identity(self) -> Hashable:
        raise NotImplementedError

    def generators(self) -> list:
        raise NotImplementedError

    def multiply(self, g, s) -> Hashable:
        raise NotImplementedError


@dataclass(frozen=True)
class Grid(BallModel):
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidModel("grid dimension must be >= 1")

    @property
    def name(self) -> str:
        return f"grid{self.d}"

    def identity(self):
        return (0,) * self.d

    def generators(self):
        out = []
        for i in range(self.d):
            for sgn in (1, -1):
                out.append(tuple(sgn if j == i else 0 for j in range(self.d)))
        return out

    def multiply(self, g, s):
        return tuple(a + b for a, b in zip(g, s))


def _mat_mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


@dataclass(frozen=True)
class SolLattice(BallModel):
    """Z^2 x|_A Z with (v, k)(w, l) = (v + A^k w, k + l); generators e1, e2, t and inverses."""

    matrix: tuple[tuple[int, int], tuple[int, int]] = ((2, 1), (1, 1))

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if not all(isinstance(x, int) for x in (a, b, c, d)):
            raise InvalidModel("A must have integer entries")
        if a * d - b * c not in (1, -1):
            raise InvalidModel("A must be invertible over the integers (det = +-1)")
        if abs(a + d) <= 2:
            raise InvalidModel("A must be hyperbolic (|trace| > 2)")

    @property
    def name(self) -> str:
        (a, b), (c, d) = self.matrix
        return f"sol[{a},{b};{c},{d}]"

    def _power(self, k: int):
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        base = self.matrix if k >= 0 else ((d * det, -b * det), (-c * det, a * det))
        out = ((1, 0), (0, 1))
        for _ in range(abs(k)):
            out = _mat_mul(out, base)
        return out

    def identity(self):
        return (0, 0, 0)

    def generators(self):
        return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]

    def multiply(self, g, s):
        x, y, k = g
        wx, wy, l = s
        m = self._power(k)
        return (x + m[0][0] * wx + m[0][1] * wy, y + m[1][0] * wx + m[1][1] * wy, k + l)


@dataclass(frozen=True)
class DiscreteHeisenberg(BallModel):
    """Integer points (a, b, c) with (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')."""

    @property
    def name(self) -> str:
        return "heisenberg"

    def identity(self):
        return (0, 0, 0)

    def generators(self):
        return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]

    def multiply(self, g, s):
        a, b, c = g
        x, y, z = s
        return (a + x, b + y, c + z + a * y)


@dataclass(frozen=True)
class RegularTree(BallModel):
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise InvalidModel("tree valence must be >= 2")

    @property
    def name(self) -> str:
        return f"tree{self.k}"


def _tree_ball(model: RegularTree, radius: int) -> Graph:
    edges = []
    parent_layer = [0]
    n = 1
    for depth in range(radius):
        layer = []
        for v in parent_layer:
            for _ in range(model.k if depth == 0 else model.k - 1):
                edges.append((v, n))
                layer.append(n)
                n += 1
        parent_layer = layer
    boundary = parent_layer if radius > 0 else [0]
    return Graph.from_edges(n, edges, boundary, model=model.name, radius=radius)


def generate_ball(model: BallModel, radius: int) -> Graph:
    """Word-metric ball; vertices in BFS order (generator order breaks ties), boundary = last shell."""
    if not isinstance(radius, int) or radius < 1:
        raise InvalidModel("radius must be an integer >= 1")
    if isinstance(model, RegularTree):
        return _tree_ball(model, radius)
    if not isinstance(model, BallModel):
        raise InvalidModel(f"unknown ball model {model!r}")
    gens = model.generators()
    e = model.identity()
    index = {e: 0}
    labels = [e]
    dist = [0]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        dg = dist[index[g]]
        if dg == radius:
            continue
        for s in gens:
            h = model.multiply(g, s)
            if h not in index:
                index[h] = len(labels)
                labels.append(h)
                dist.append(dg + 1)
                queue.append(h)
    edges = set()
    for i, g in enumerate(labels):
        for s in gens:
            j = index.get(model.multiply(g, s))
            if j is not None and j != i:
                edges.add((min(i, j), max(i, j)))
    boundary = [i for i, d in enumerate(dist) if d == radius]
    return Graph.from_edges(len(labels), edges, boundary, model=model.name, radius=radius,
                            labels=tuple(labels))


def parse_model(text: str) -> BallModel:
    """grid:D, tree:K, heisenberg, sol or sol:a,b,c,d (row-major A)."""
    name, _, arg = text.strip().lower().partition(":")
    try:
        if name == "grid":
            return Grid(int(arg or 2))
        if name == "tree":
            return RegularTree(int(arg or 3))
        if name == "heisenberg":
            return DiscreteHeisenberg()
        if name == "sol":
            if not arg:
                return SolLattice()
            a, b, c, d = (int(x) for x in arg.split(","))
            return SolLattice(((a, b), (c, d)))
    except ValueError as exc:
        if isinstance(exc, InvalidModel):
            raise
        raise InvalidModel(f"bad model argument in {text!r}") from exc
    raise InvalidModel(f"unknown model {text!r}; use grid:D, tree:K, heisenberg or sol[:a,b,c,d]")


# ---------------------------------------------------------------- constants


@dataclass(frozen=True)
class ConstantEstimate:
    lower: float
    upper: float
    method: str  # spectral-sandwich | sweep-cut | brute-force | parametric-min-cut
    exact: Fraction | None = None

    def __post_init__(self):
        if not (0 <= self.lower <= self.upper):
            raise ValueError(f"need 0 <= lower <= upper, got {self.lower}, {self.upper}")

    def contains(self, x: float, slack: float = 1e-9) -> bool:
        return self.lower - slack <= x <= self.upper + slack

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "method": self.method,
                "exact": None if self.exact is None else str(self.exact)}


def _bitmask_adjacency(g: Graph) -> list[int]:
    masks = [0] * g.n
    for a, b in g.edges:
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    return masks


def brute_force_cheeger(g: Graph) -> Fraction:
    """min |dS| / |S| over nonempty S with |S| <= n/2, by enumeration."""
    if g.n < 2:
        raise ValueError("Cheeger constant needs at least two vertices")
    if g.n > 24:
        raise ValueError("brute force is limited to small graphs")
    masks = _bitmask_adjacency(g)
    full = (1 << g.n) - 1
    best: Fraction | None = None
    for s in range(1, full + 1):
        size = s.bit_count()
        if 2 * size > g.n:
            continue
        cut = 0
        rest = full & ~s
        m = s
        while m:
            low = m & -m
            cut += (masks[low.bit_length() - 1] & rest).bit_count()
            m ^= low
        ratio = Fraction(cut, size)
        if best is None or ratio < best:
            best = ratio
    return best


def brute_force_dirichlet(g: Graph) -> Fraction:
    """min |dS| / |S| over nonempty S inside the interior, by enumeration."""
    inner = g.interior
    if not inner:
        raise EmptyInterior("every vertex is on the boundary")
    if len(inner) > 24:
        raise ValueError("brute force is limited to small graphs")
    masks = _bitmask_adjacency(g)
    full = (1 << g.n) - 1
    best: Fraction | None = None
    for r in range(1, len(inner) + 1):
        for subset in combinations(inner, r):
            s = 0
            for v in subset:
                s |= 1 << v
            rest = full & ~s
            cut = sum((masks[v] & rest).bit_count() for v in subset)
            ratio = Fraction(cut, r)
            if best is None or ratio < best:
                best = ratio
    return best


def _smallest_eigenpairs(m: scipy.sparse.spmatrix, k: int) -> tuple[np.ndarray, np.ndarray]:
    n = m.shape[0]
    if n <= DENSE_EIGEN_LIMIT:
        vals, vecs = np.linalg.eigh(m.toarray())
        return vals[:k], vecs[:, :k]
    v0 = np.linspace(1.0, 2.0, n)
    vals, vecs = scipy.sparse.linalg.eigsh(m.tocsc(), k=k, sigma=-1e-3, which="LM", v0=v0)
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def fiedler(g: Graph) -> tuple[float, np.ndarray]:
    vals, vecs = _smallest_eigenpairs(g.laplacian(), 2)
    vec = vecs[:, 1]
    # fix the eigenvector sign for reproducibility
    pivot = int(np.argmax(np.abs(vec)))
    if vec[pivot] < 0:
        vec = -vec
    return max(float(vals[1]), 0.0), vec


def sweep_cut(g: Graph, vec: np.ndarray) -> Fraction:
    """Best ratio |dS|/|S| among prefixes (|S| <= n/2) of the vertices sorted by ``vec``, from either end."""
    adj = g.neighbors()
    best: Fraction | None = None
    for order in (np.argsort(vec, kind="stable"), np.argsort(-vec, kind="stable")):
        inside = np.zeros(g.n, dtype=bool)
        cut = 0
        for size, v in enumerate(order[: g.n // 2], start=1):
            v = int(v)
            inner = sum(1 for w in adj[v] if inside[w])
            cut += len(adj[v]) - 2 * inner
            inside[v] = True
            ratio = Fraction(cut, size)
            if best is None or ratio < best:
                best = ratio
    return best


def spectral_sandwich(g: Graph) -> ConstantEstimate:
    """mu2/2 <= h <= sqrt(2 d_max mu2) from the second Laplacian eigenvalue mu2."""
    if g.n < 2:
        raise ValueError("Cheeger constant needs at least two vertices")
    if not g.is_connected():
        raise Disconnected("graph is disconnected (Cheeger constant 0)")
    mu2, _ = fiedler(g)
    dmax = int(g.degrees().max())
    return ConstantEstimate(mu2 / 2, math.sqrt(2 * dmax * mu2), "spectral-sandwich")


def cheeger_estimate(g: Graph) -> ConstantEstimate:
    """Whole-graph Cheeger constant: exact for at most 16 vertices, else sandwich tightened by a sweep cut."""
    if g.n < 2:
        raise ValueError("Cheeger constant needs at least two vertices")
    if not g.is_connected():
        raise Disconnected("graph is disconnected (Cheeger constant 0)")
    if g.n <= BRUTE_FORCE_LIMIT:
        h = brute_force_cheeger(g)
        return ConstantEstimate(float(h), float(h), "brute-force", h)
    mu2, vec = fiedler(g)
    dmax = int(g.degrees().max())
    upper = math.sqrt(2 * dmax * mu2)
    sweep = sweep_cut(g, vec)
    lower = mu2 / 2
    if float(sweep) < upper:
        return ConstantEstimate(min(lower, float(sweep)), float(sweep), "sweep-cut", None)
    return ConstantEstimate(lower, upper, "spectral-sandwich")


def dirichlet_constant(g: Graph) -> tuple[Fraction, frozenset[int]]:
    """Exact min |dS|/|S| over nonempty S in the interior, with a minimizing set.

    Dinkelbach iteration: for the current ratio lam = a/b, a minimum s-t cut
    with capacity b on graph edges, a on source-to-interior edges and the
    boundary glued to the sink minimizes b|dS| - a|S|.  A negative minimum
    yields a strictly better set; otherwise lam is optimal.  All capacities
    are integers, so each step is exact.
    """
    inner = g.interior
    if not inner:
        raise EmptyInterior("every vertex is on the boundary; no function can be nonzero")
    best_set = frozenset(inner)
    lam = Fraction(g.edge_boundary(best_set), len(best_set))
    sink = ("sink",)
    src = ("source",)
    while True:
        a, b = lam.numerator, lam.denominator
        net = nx.DiGraph()
        node = lambda v: sink if v in g.boundary else v  # noqa: E731
        for u, v in g.edges:
            x, y = node(u), node(v)
            if x == y:
                continue
            for p, q in ((x, y), (y, x)):
                if net.has_edge(p, q):
                    net[p][q]["capacity"] += b
                else:
                    net.add_edge(p, q, capacity=b)
        for v in inner:
            net.add_edge(src, v, capacity=a)
        net.add_node(sink)
        cut_value, (side, _) = nx.minimum_cut(net, src, sink)
        s = frozenset(v for v in side if v != src)
        if not s or cut_value >= a * len(inner):
            return lam, best_set
        new = Fraction(g.edge_boundary(s), len(s))
        if new >= lam:
            return lam, best_set
        lam, best_set = new, s


def dirichlet_eigenvalue(g: Graph) -> float:
    """Smallest eigenvalue of the Laplacian with u = 0 on the boundary."""
    inner = g.interior
    if not inner:
        raise EmptyInterior("every vertex is on the boundary")
    lap = g.laplacian()[inner][:, inner]
    vals, _ = _smallest_eigenpairs(lap, 1)
    return max(float(vals[0]), 0.0)


def dirichlet_estimate(g: Graph) -> ConstantEstimate:
    h, _ = dirichlet_constant(g)
    return ConstantEstimate(float(h), float(h), "parametric-min-cut", h)


def dirichlet_sandwich(g: Graph) -> ConstantEstimate:
    """lam1 <= h_D <= sqrt(2 d_max lam1) for the Dirichlet eigenvalue lam1."""
    lam = dirichlet_eigenvalue(g)
    dmax = int(g.degrees().max())
    return ConstantEstimate(lam, math.sqrt(2 * dmax * lam), "spectral-sandwich")


# ---------------------------------------------------------------- Sobolev constants


@dataclass(frozen=True)
class SobolevEstimate:
    p: float
    value: float  # min ||du||_p / ||u||_p found
    method: str
    iterations: int
    crosscheck: float | None = None  # sqrt of the Dirichlet eigenvalue when p = 2
    exact: Fraction | None = None

    @property
    def is_upper_bound_only(self) -> bool:
        return self.exact is None and self.crosscheck is None


def _incidence(g: Graph, index: dict[int, int]) -> scipy.sparse.csr_matrix:
    """Signed edge-vertex incidence restricted to interior columns."""
    rows, cols, vals = [], [], []
    for e, (a, b) in enumerate(g.edges):
        if a in index:
            rows.append(e)
            cols.append(index[a])
            vals.append(1.0)
        if b in index:
            rows.append(e)
            cols.append(index[b])
            vals.append(-1.0)
    return scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(len(g.edges), len(index)))


def _start_vector(g: Graph, inner: list[int]) -> np.ndarray:
    """Indicator of the first interior vertex, smoothed by one averaging step."""
    index = {v: i for i, v in enumerate(inner)}
    center = inner[0]
    u = np.zeros(len(inner))
    u[index[center]] = 1.0
    for w in g.neighbors()[center]:
        if w in index:
            u[index[w]] = 0.5
    return u


def _p_rayleigh(inc: scipy.sparse.csr_matrix, p: float) -> Callable:
    def f(u: np.ndarray) -> tuple[float, np.ndarray]:
        d = inc @ u
        ad = np.abs(d)
        au = np.abs(u)
        num = float(np.sum(ad ** p))
        den = float(np.sum(au ** p))
        gnum = p * (inc.T @ (ad ** (p - 1) * np.sign(d)))
        gden = p * au ** (p - 1) * np.sign(u)
        r = num / den
        return r, (gnum - r * gden) / den
    return f


def sobolev_p_constant(g: Graph, p, max_iter: int = 200, rtol: float = 1e-10) -> SobolevEstimate:
    """min ||du||_p / ||u||_p over u vanishing on the boundary shell.

    p = 1 is solved exactly as a cut problem (coarea).  Other p run a
    deterministic quasi-Newton descent of the p-Rayleigh quotient, so the
    value is an upper bound; for p = 2 it is compared with the Dirichlet
    eigenvalue.
    """
    p = float(p)
    if p < 1:
        raise ValueError("p must be >= 1")
    inner = g.interior
    if not inner:
        raise EmptyInterior("every vertex is on the boundary; no function can be nonzero")
    if p == 1.0:
        h, _ = dirichlet_constant(g)
        return SobolevEstimate(p, float(h), "parametric-min-cut", 0, exact=h)
    index = {v: i for i, v in enumerate(inner)}
    inc = _incidence(g, index)
    res = scipy.optimize.minimize(
        _p_rayleigh(inc, p), _start_vector(g, inner), jac=True, method="L-BFGS-B",
        options={"maxiter": max_iter, "ftol": rtol, "gtol": 1e-12},
    )
    value = float(res.fun) ** (1 / p)
    cross = math.sqrt(dirichlet_eigenvalue(g)) if p == 2.0 else None
    return SobolevEstimate(p, value, "lbfgs-descent", int(res.nit), crosscheck=cross)


# ---------------------------------------------------------------- dichotomy scan


@dataclass(frozen=True)
class ScanRow:
    radius: int
    vertices: int
    edges: int
    interior: int
    dirichlet: ConstantEstimate
    sobolev: SobolevEstimate


@dataclass(frozen=True)
class DichotomyScan:
    model: str
    p: float
    rows: tuple[ScanRow, ...]

    @property
    def values(self) -> list[float]:
        return [r.sobolev.value for r in self.rows]

    @property
    def lower_bounds(self) -> list[float]:
        return [r.dirichlet.lower for r in self.rows]

    @property
    def monotone_decreasing(self) -> bool:
        v = self.values
        return all(b < a for a, b in zip(v, v[1:]))

    @property
    def decay_factor(self) -> float:
        v = self.values
        return v[0] / v[-1] if v[-1] > 0 else math.inf

    @property
    def trend(self) -> str:
        if self.monotone_decreasing and self.decay_factor >= 2:
            return "decaying"
        return "bounded-below"

    def summary(self) -> dict:
        return {"model": self.model, "p": self.p, "trend": self.trend,
                "monotone_decreasing": self.monotone_decreasing,
                "decay_factor": self.decay_factor, "min_lower_bound": min(self.lower_bounds)}


def dichotomy_scan(model: BallModel, radii: Sequence[int], p=1) -> DichotomyScan:
    radii = list(radii)
    if not radii:
        raise ValueError("no radii given")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    rows = []
    for r in radii:
        g = generate_ball(model, r)
        rows.append(ScanRow(r, g.n, len(g.edges), len(g.interior), dirichlet_estimate(g),
                            sobolev_p_constant(g, p)))
    return DichotomyScan(model.name, float(p), tuple(rows))
