"""Connected-component decomposition of Γ(k, p^m) into copies of Γ(k_a, p^a)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import oracle
from .errors import InternalTheoremViolation, NotADivisor
from .finite_field import (
    SubfieldDescriptor,
    build_field,
    multiplicative_order,
    psi_embedding_idx,
    subfield,
)
from .gp_graph import GPGraph


@dataclass(frozen=True)
class ConnectivityParams:
    n: int
    a: int
    k_a: int
    component_count: int
    connected: bool
    primitive_divisor: bool  # n divides p^m - 1 but no p^t - 1 with t < m


def connectivity_params(p: int, m: int, k: int) -> ConnectivityParams:
    q = p**m
    if k < 1 or (q - 1) % k:
        raise NotADivisor(f"{k} does not divide {q - 1}")
    n = (q - 1) // k
    a = multiplicative_order(p, n)
    primitive = all((p**t - 1) % n for t in range(1, m))
    return ConnectivityParams(
        n=n,
        a=a,
        k_a=(p**a - 1) // n,
        component_count=p ** (m - a),
        connected=a == m,
        primitive_divisor=primitive,
    )


@dataclass(frozen=True, eq=False)
class Decomposition:
    graph: GPGraph
    n: int
    a: int
    k_a: int
    component_count: int
    subfield: SubfieldDescriptor
    coset_reps: tuple[int, ...]  # vertex indices, least member of each coset
    coset_of: np.ndarray  # coset number of every vertex
    component_graph: GPGraph  # Γ(k_a, p^a) over an independently built field
    psi: np.ndarray  # small-field index -> big-field index
    witnesses: np.ndarray  # witnesses[c, x] = psi(x) + coset_reps[c]

    @property
    def connected(self) -> bool:
        return self.component_count == 1

    def coset(self, c: int) -> np.ndarray:
        return self.witnesses[c]

    def summary(self) -> dict:
        g, cg = self.graph, self.component_graph
        return {
            "q": g.q,
            "k": g.k,
            "n": self.n,
            "a": self.a,
            "k_a": self.k_a,
            "components": self.component_count,
            "component_graph": {"q": cg.q, "k": cg.k},
        }


def decompose(g: GPGraph, verify: bool = True) -> Decomposition:
    """Split ``g`` into the induced subgraphs on the cosets F_a + h.

    With ``verify`` every structural claim is checked exhaustively; a failure
    raises :class:`InternalTheoremViolation` naming the claim.
    """
    f = g.field
    params = connectivity_params(f.p, f.m, g.k)
    a, k_a = params.a, params.k_a
    if f.m % a or g.k % k_a:
        raise InternalTheoremViolation("a | m and k_a | k", f"a={a}, m={f.m}, k_a={k_a}, k={g.k}")
    sub = subfield(f, a)
    in_sub = np.zeros(f.q, dtype=bool)
    in_sub[sub.element_idx] = True

    if verify:
        # connection set equals the k_a-th powers of F_a^*
        powers = np.unique(f.pow_idx(sub.element_idx[1:], k_a))
        if not np.array_equal(powers, g.connection_idx):
            raise InternalTheoremViolation(
                "connection set != k_a-th powers of the subfield",
                f"{g.name}: |powers|={len(powers)}, |R_k|={len(g.connection_idx)}",
            )
        # neighbourhoods of subfield vertices stay in the subfield
        escaping = ~in_sub[g.neighbors[sub.element_idx]]
        if escaping.any():
            i, j = np.argwhere(escaping)[0]
            x = int(sub.element_idx[i])
            raise InternalTheoremViolation(
                "neighbourhood of a subfield vertex leaves the subfield",
                f"{f.from_index(x)} -> {f.from_index(int(g.neighbors[x, j]))}",
            )

    coset_of = np.full(f.q, -1, dtype=np.int64)
    reps = []
    for v in range(f.q):
        if coset_of[v] < 0:
            coset_of[f.add_idx(sub.element_idx, v)] = len(reps)
            reps.append(v)
    if len(reps) != params.component_count:
        raise InternalTheoremViolation(
            "coset count", f"{len(reps)} cosets, expected {params.component_count}"
        )

    small = build_field(f.p, a)
    comp = GPGraph(small, k_a)
    psi = psi_embedding_idx(small, f)
    witnesses = f.add_idx(psi[None, :], np.asarray(reps)[:, None])

    if verify:
        if not np.array_equal(np.sort(psi), sub.element_idx):
            raise InternalTheoremViolation("embedding image != subfield", g.name)
        arcs_u, arcs_v = np.nonzero(g.adjacency)
        if np.any(coset_of[arcs_u] != coset_of[arcs_v]):
            raise InternalTheoremViolation("an arc joins two different cosets", g.name)
        small_adj = comp.adjacency
        for c, w in enumerate(witnesses):
            if not np.array_equal(g.adjacency[np.ix_(w, w)], small_adj):
                diff = np.argwhere(g.adjacency[np.ix_(w, w)] != small_adj)[0]
                raise InternalTheoremViolation(
                    "coset witness is not an isomorphism",
                    f"coset {f.from_index(reps[c])}: pair "
                    f"({small.from_index(int(diff[0]))}, {small.from_index(int(diff[1]))})",
                )
        if comp.directed != g.directed:
            raise InternalTheoremViolation("directedness differs between graph and component", g.name)

    return Decomposition(
        graph=g,
        n=params.n,
        a=a,
        k_a=k_a,
        component_count=params.component_count,
        subfield=sub,
        coset_reps=tuple(reps),
        coset_of=coset_of,
        component_graph=comp,
        psi=psi,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class AutDescriptor:
    inner: str
    copies: int
    inner_order: Optional[int] = None

    @property
    def known(self) -> bool:
        return self.inner_order is not None

    @property
    def order(self) -> Optional[int]:
        if self.inner_order is None:
            return None
        return self.inner_order**self.copies * math.factorial(self.copies)

    def __str__(self) -> str:
        inner = self.inner
        if inner.startswith("unknown(") and inner.endswith(")"):
            inner = f"Aut({inner[len('unknown('):-1]})"
        return f"{inner} ≀ S_{self.copies}"


def aut_descriptor(d: Decomposition) -> AutDescriptor:
    """Symbolic wreath-product form of the automorphism group."""
    cg = d.component_graph
    p, a, k_a, size = cg.p, cg.m, cg.k, cg.q
    copies = d.component_count
    if a == 1 and k_a == p - 1:
        # directed p-cycle (K_2 when p = 2)
        return AutDescriptor(f"Z_{p}", copies, p)
    if a == 1 and p > 2 and k_a == (p - 1) // 2:
        return AutDescriptor(f"D_{p}", copies, 2 * p)
    if k_a == 1:
        return AutDescriptor(f"S_{size}", copies, math.factorial(size))
    return AutDescriptor(f"unknown({cg.name})", copies)


def waring_number(g: GPGraph) -> Optional[int]:
    """Least s such that every element is a sum of s k-th powers; None when disconnected."""
    params = connectivity_params(g.p, g.m, g.k)
    if not params.connected:
        return None
    return oracle.diameter(oracle.DenseGraph.from_gp(g))


def decomposition_report(d: Decomposition) -> dict:
    doc = d.summary()
    doc["aut"] = str(aut_descriptor(d))
    doc["waring"] = waring_number(d.graph) if d.connected else None
    return doc


def report_json(d: Decomposition) -> str:
    return json.dumps(decomposition_report(d), ensure_ascii=False)
