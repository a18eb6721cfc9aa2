"""Brute-force graph algorithms that know nothing about finite fields.

Everything here works on a dense 0/1 adjacency matrix and is used to check the
algebraic predictions made elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Optional

import numpy as np

from .errors import ConvergenceFailure, DirectedInput, OrderCap, SizeCap

EIGEN_ORDER_CAP = 512
ISO_ORDER_CAP = 256


@dataclass(frozen=True, eq=False)
class DenseGraph:
    order: int
    adjacency: np.ndarray  # bool, row u = out-neighbours of u
    directed: bool

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool)
        if a.shape != (self.order, self.order):
            raise ValueError(f"adjacency shape {a.shape} does not match order {self.order}")
        if a.diagonal().any():
            raise ValueError("loops are not allowed")
        if not self.directed and not np.array_equal(a, a.T):
            raise ValueError("undirected graph needs a symmetric adjacency matrix")
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_gp(cls, g) -> "DenseGraph":
        return cls(g.q, np.array(g.adjacency), g.directed)

    @classmethod
    def from_matrix(cls, a) -> "DenseGraph":
        a = np.asarray(a, dtype=bool)
        return cls(a.shape[0], a, not np.array_equal(a, a.T))

    def out_neighbors(self, u: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[u])


def complete_graph(n: int) -> DenseGraph:
    return DenseGraph(n, ~np.eye(n, dtype=bool), False)


def cycle_graph(n: int, directed: bool = False) -> DenseGraph:
    a = np.zeros((n, n), dtype=bool)
    i = np.arange(n)
    a[i, (i + 1) % n] = True
    if not directed:
        a |= a.T
    return DenseGraph(n, a, directed)


# ---------------------------------------------------------------------------
# reachability


def _reach(adj: np.ndarray, start: int) -> np.ndarray:
    """Boolean mask of vertices reachable from ``start`` (frontier BFS)."""
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[start] = True
    frontier = seen.copy()
    while frontier.any():
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(g: DenseGraph, mode: str = "weak") -> list[list[int]]:
    """Vertex partition into weak or strong components, ordered by least vertex."""
    if mode not in ("weak", "strong"):
        raise ValueError(f"mode must be 'weak' or 'strong', got {mode!r}")
    adj = g.adjacency
    und = adj | adj.T
    label = np.full(g.order, -1)
    out = []
    for v in range(g.order):
        if label[v] >= 0:
            continue
        if mode == "weak" or not g.directed:
            comp = _reach(und, v)
        else:
            comp = _reach(adj, v) & _reach(adj.T, v)
        comp &= label < 0
        label[comp] = len(out)
        out.append(np.flatnonzero(comp).tolist())
    return out


def bfs_levels(adj: np.ndarray, source: int) -> np.ndarray:
    """Directed distance from ``source``; -1 where unreachable."""
    dist = np.full(adj.shape[0], -1)
    dist[source] = 0
    frontier = np.zeros(adj.shape[0], dtype=bool)
    frontier[source] = True
    d = 0
    while frontier.any():
        d += 1
        nxt = adj[frontier].any(axis=0) & (dist < 0)
        dist[nxt] = d
        frontier = nxt
    return dist


def diameter(g: DenseGraph) -> Optional[int]:
    """Max directed distance over ordered pairs, None if some pair is unreachable."""
    n = g.order
    if n == 1:
        return 0
    a = g.adjacency.astype(np.float32)
    reach = np.eye(n, dtype=bool)
    steps = 0
    while not reach.all():
        nxt = reach | ((reach.astype(np.float32) @ a) > 0)
        if np.array_equal(nxt, reach):
            return None
        reach = nxt
        steps += 1
    return steps


# ---------------------------------------------------------------------------
# bipartiteness


@dataclass(frozen=True)
class TwoColoring:
    part0: tuple[int, ...]
    part1: tuple[int, ...]


def two_coloring(g: DenseGraph):
    """BFS 2-coloring of the underlying undirected graph.

    Returns ``(TwoColoring, None)`` on success, otherwise ``(None, cycle)``
    where ``cycle`` is an odd cycle u_0, ..., u_{r-1} of the underlying graph
    (consecutive vertices and u_{r-1}, u_0 adjacent).
    """
    und = g.adjacency | g.adjacency.T
    n = g.order
    level = np.full(n, -1)
    parent = np.full(n, -1)
    for root in range(n):
        if level[root] >= 0:
            continue
        level[root] = 0
        frontier = np.array([root])
        d = 0
        while len(frontier):
            d += 1
            sub = und[frontier]
            new = sub.any(axis=0) & (level < 0)
            idx = np.flatnonzero(new)
            if len(idx):
                level[idx] = d
                parent[idx] = frontier[sub[:, idx].argmax(axis=0)]
            frontier = idx
    same = und & (level[:, None] == level[None, :])
    if not same.any():
        part0 = tuple(np.flatnonzero(level % 2 == 0).tolist())
        part1 = tuple(np.flatnonzero(level % 2 == 1).tolist())
        return TwoColoring(part0, part1), None
    u, v = (int(x) for x in np.argwhere(same)[0])
    pu, pv = [u], [v]
    while pu[-1] != pv[-1]:
        pu.append(int(parent[pu[-1]]))
        pv.append(int(parent[pv[-1]]))
    # pu: u .. lca, pv: v .. lca; cycle u .. lca .. v
    return None, pu + pv[-2::-1]


# ---------------------------------------------------------------------------
# spectra


def numeric_eigenvalues(g: DenseGraph, cap: int = EIGEN_ORDER_CAP) -> np.ndarray:
    """Eigenvalues of the 0/1 adjacency matrix, sorted by (-re, -im)."""
    if g.order > cap:
        raise OrderCap(f"order {g.order} exceeds eigenvalue cap {cap}")
    a = g.adjacency.astype(float)
    try:
        if g.directed:
            vals = np.linalg.eigvals(a)
        else:
            vals = np.linalg.eigvalsh(a).astype(complex)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = np.lexsort((-vals.imag, -vals.real))
    return vals[order]


# ---------------------------------------------------------------------------
# products and isomorphism


def cartesian_product(a: DenseGraph, b: DenseGraph) -> DenseGraph:
    """Vertex (i, j) is stored at i * b.order + j."""
    if a.directed or b.directed:
        raise DirectedInput("Cartesian product is only defined here for undirected graphs")
    ia, ib = np.eye(a.order, dtype=bool), np.eye(b.order, dtype=bool)
    adj = np.kron(a.adjacency, ib) | np.kron(ia, b.adjacency)
    return DenseGraph(a.order * b.order, adj, False)


def cartesian_power(g: DenseGraph, b: int) -> DenseGraph:
    return reduce(cartesian_product, [g] * b)


def hamming_graph(b: int, q: int) -> DenseGraph:
    return cartesian_power(complete_graph(q), b)


def tensor_with_k2(g: DenseGraph) -> DenseGraph:
    """Bipartite double: (u, i) -> (v, 1 - i) for every arc u -> v; (u, i) at i * n + u."""
    n = g.order
    z = np.zeros((n, n), dtype=bool)
    adj = np.block([[z, g.adjacency], [g.adjacency, z]])
    return DenseGraph(2 * n, adj, g.directed)


def _refine(out_nb, in_nb, colors: np.ndarray) -> np.ndarray:
    """Colour refinement to a stable partition; colours are canonical ints."""
    ncol = len(np.unique(colors))
    while True:
        keys = []
        for v in range(len(colors)):
            keys.append(
                (
                    int(colors[v]),
                    np.sort(colors[out_nb[v]]).tobytes(),
                    np.sort(colors[in_nb[v]]).tobytes(),
                )
            )
        ranks = {key: i for i, key in enumerate(sorted(set(keys)))}
        new = np.array([ranks[key] for key in keys])
        if len(ranks) == ncol:
            return new
        colors, ncol = new, len(ranks)


def isomorphic(a: DenseGraph, b: DenseGraph, cap: int = ISO_ORDER_CAP) -> Optional[np.ndarray]:
    """A certified vertex bijection ``phi`` with a -> b arcs preserved, or None.

    Individualization-refinement search: both graphs are refined jointly (so
    colours are comparable), a vertex of ``a`` in the smallest non-singleton
    class is individualized against each same-coloured vertex of ``b``, and
    the search recurses. Any complete map is checked arc by arc.
    """
    if max(a.order, b.order) > cap:
        raise SizeCap(f"isomorphism search is capped at {cap} vertices")
    if a.order != b.order or a.directed != b.directed:
        return None
    n = a.order
    if int(a.adjacency.sum()) != int(b.adjacency.sum()):
        return None
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    adj[:n, :n] = a.adjacency
    adj[n:, n:] = b.adjacency
    out_nb = [np.flatnonzero(row) for row in adj]
    in_nb = [np.flatnonzero(col) for col in adj.T]

    def balanced(colors):
        return np.array_equal(np.bincount(colors[:n], minlength=colors.max() + 1),
                              np.bincount(colors[n:], minlength=colors.max() + 1))

    def search(colors):
        if not balanced(colors):
            return None
        counts = np.bincount(colors[:n])
        if counts.max() == 1:
            phi = np.empty(n, dtype=np.int64)
            phi[np.argsort(colors[:n])] = np.argsort(colors[n:])
            if np.array_equal(a.adjacency, b.adjacency[np.ix_(phi, phi)]):
                return phi
            return None
        target = int(np.argmin(np.where(counts > 1, counts, n + 1)))
        v = int(np.flatnonzero(colors[:n] == target)[0])
        fresh = colors.max() + 1
        for w in np.flatnonzero(colors[n:] == target):
            trial = colors.copy()
            trial[v] = fresh
            trial[n + w] = fresh
            found = search(_refine(out_nb, in_nb, trial))
            if found is not None:
                return found
        return None

    phi = search(_refine(out_nb, in_nb, np.zeros(2 * n, dtype=np.int64)))
    if phi is not None and not np.array_equal(a.adjacency, b.adjacency[np.ix_(phi, phi)]):
        raise AssertionError("isomorphism certificate failed")  # pragma: no cover
    return phi
