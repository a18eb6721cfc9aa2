"""Generalized Paley graphs Cay(F_q, {x^k : x != 0}) over an explicit field."""

from __future__ import annotations

import csv
import io
import json
import math
from functools import cached_property

import numpy as np

from .errors import FieldMismatch, PreconditionViolated
from .finite_field import FieldElement, FiniteField

LABEL_MODES = ("poly", "log", "index")


class GPGraph:
    """The graph with vertex set F_q and arcs u -> v whenever v - u is a k-th power.

    ``k`` is normalized to gcd(k, q-1) on construction. Vertices are the field
    indices 0..q-1 (see :mod:`gpgraph.finite_field`), so ``neighbors[u]`` is the
    sorted array of out-neighbors of vertex ``u`` and ``adjacency`` the dense
    boolean matrix used for O(1) arc queries.
    """

    def __init__(self, field: FiniteField, k: int):
        if k < 1:
            raise PreconditionViolated(f"k must be positive, got {k}")
        q = field.q
        self.field = field
        self.k = math.gcd(k, q - 1)
        self.n = (q - 1) // self.k
        self.connection_idx = field.subgroup_idx(self.n)
        self.connection_set = frozenset(field.from_index(int(i)) for i in self.connection_idx)
        # undirected iff q even, or q odd and k | (q-1)/2
        self.directed = q % 2 == 1 and ((q - 1) // 2) % self.k != 0

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def name(self) -> str:
        return f"Γ({self.k},{self.q})"

    def __repr__(self) -> str:
        return f"GPGraph(k={self.k}, q={self.q}, directed={self.directed})"

    @cached_property
    def neighbors(self) -> np.ndarray:
        verts = np.arange(self.q, dtype=np.int64)
        nb = self.field.add_idx(verts[:, None], self.connection_idx[None, :])
        nb.sort(axis=1)
        nb.setflags(write=False)
        return nb

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.q, self.q), dtype=bool)
        rows = np.repeat(np.arange(self.q), self.n)
        a[rows, self.neighbors.ravel()] = True
        a.setflags(write=False)
        return a

    @cached_property
    def _in_connection(self) -> np.ndarray:
        mask = np.zeros(self.q, dtype=bool)
        mask[self.connection_idx] = True
        return mask

    def is_arc(self, u: FieldElement, v: FieldElement) -> bool:
        return self.field.sub(v, u) in self.connection_set

    def is_arc_idx(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def arcs(self):
        """Yield every ordered arc (u, v) as index pairs in vertex order."""
        for u in range(self.q):
            for v in self.neighbors[u]:
                yield u, int(v)

    @property
    def arc_count(self) -> int:
        return self.q * self.n

    @property
    def edge_count(self) -> int:
        """Undirected graphs count each {u, v} once."""
        return self.arc_count if self.directed else self.arc_count // 2

    def out_degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def in_degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=0)

    def vertex_label(self, i: int, mode: str = "poly") -> str:
        if mode == "poly":
            return self.field.from_index(i).label()
        if mode == "log":
            return "0" if i == 0 else f"w^{int(self.field.log_idx[i])}"
        if mode == "index":
            return str(i)
        raise ValueError(f"unknown label mode {mode!r}; expected one of {LABEL_MODES}")


def build_graph(field: FiniteField, k: int) -> GPGraph:
    return GPGraph(field, k)


def orientation_union_check(g: GPGraph) -> bool:
    """Γ(k/2, q) has exactly the arcs of Γ(k, q) together with their reversals."""
    if not g.directed or g.k % 2:
        raise PreconditionViolated(f"{g.name} must be directed with even k")
    half = GPGraph(g.field, g.k // 2)
    union = g.adjacency | g.adjacency.T
    return bool(np.array_equal(half.adjacency, union))


def subgraph_containment(g_big: GPGraph, g_small: GPGraph) -> bool:
    """True iff Γ(k_big, q) is a subgraph of Γ(k_small, q) (same field, k_small | k_big)."""
    if g_big.field != g_small.field:
        raise FieldMismatch("graphs live over different fields")
    if g_big.k % g_small.k:
        raise PreconditionViolated(f"{g_small.k} does not divide {g_big.k}")
    if not g_big.connection_set <= g_small.connection_set:
        return False
    return not bool(np.any(g_big.adjacency & ~g_small.adjacency))


def _edge_pairs(g: GPGraph):
    for u, v in g.arcs():
        if g.directed or u < v:
            yield u, v


def export_graph(g: GPGraph, fmt: str = "dot", labels: str = "poly") -> bytes:
    """Serialize as ``dot``, ``json`` or ``csv`` (edge list); output is deterministic."""
    lab = [g.vertex_label(i, labels) for i in range(g.q)]
    if fmt == "dot":
        kind, op = ("digraph", "->") if g.directed else ("graph", "--")
        lines = [f'{kind} "G({g.k},{g.q})" {{']
        lines += [f'  {i} [label="{lab[i]}"];' for i in range(g.q)]
        lines += [f"  {u} {op} {v};" for u, v in _edge_pairs(g)]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        doc = {
            "field": g.field.descriptor(),
            "k": g.k,
            "n": g.n,
            "directed": g.directed,
            "vertices": lab,
            "arcs": [[lab[u], lab[v]] for u, v in g.arcs()],
        }
        return (json.dumps(doc, ensure_ascii=False) + "\n").encode()
    if fmt in ("csv", "csv-edges"):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v"])
        for u, v in _edge_pairs(g):
            w.writerow([lab[u], lab[v]])
        return buf.getvalue().encode()
    raise ValueError(f"unknown export format {fmt!r}")
