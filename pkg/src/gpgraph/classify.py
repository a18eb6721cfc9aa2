"""Named-structure recognition, strong regularity and bipartiteness of GP-graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import oracle
from .decompose import Decomposition, connectivity_params, decompose
from .errors import (
    DirectedGraph,
    DirectedSpectrum,
    InternalTheoremViolation,
    NonIntegralParameter,
    ParameterMismatch,
    PreconditionViolated,
)
from .finite_field import factorize, multiplicative_order, prime_power
from .gp_graph import GPGraph
from .spectra import Spectrum, character_spectrum


class SrgParams(NamedTuple):
    v: int
    k: int
    e: int
    d: int

    def __str__(self) -> str:
        return f"srg({self.v},{self.k},{self.e},{self.d})"


#: strongly regular graphs determined by their parameters
SRG_NAMES = {
    SrgParams(16, 5, 0, 2): "Clebsch",
    SrgParams(81, 20, 1, 6): "Brouwer-Haemers",
}


@dataclass(frozen=True)
class NamedForm:
    kind: str
    params: tuple = ()
    inner: Optional["NamedForm"] = None

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "complete":
            return f"K_{p[0]}"
        if k == "paley":
            return ("→" if p[1] else "") + f"P_{p[0]}"
        if k == "cycles":
            prime, count, directed = p
            body = ("→" if directed else "") + f"C_{prime}"
            return body if count == 1 else f"{count}{body}"
        if k == "cliques":
            size, count = p
            return f"K_{size}" if count == 1 else f"{count}K_{size}"
        if k == "rook":
            return f"L_{{{p[0]},{p[0]}}}"
        if k == "srg":
            params = SrgParams(*p)
            return SRG_NAMES.get(params, str(params))
        if k == "hamming":
            return f"H({p[0]},{p[1]})"
        if k == "union":
            inner = str(self.inner)
            if self.inner.kind in ("complete", "paley", "cycles"):
                return f"{p[0]}{inner}"
            return f"{p[0]}·{inner}"
        return "unknown"


UNKNOWN = NamedForm("unknown")


@dataclass(frozen=True)
class Classification:
    named_form: NamedForm
    aliases: tuple[NamedForm, ...]
    directed: bool
    connected: bool
    component_count: int
    srg_params: Optional[SrgParams]
    inner_srg_params: Optional[SrgParams]
    bipartite: bool
    odd_cycle_witness: Optional[tuple[int, ...]]
    semiprimitive: bool
    ramanujan: Optional[bool]
    forms: tuple[str, ...] = field(default=())

    def to_dict(self, g: GPGraph) -> dict:
        return {
            "named_form": str(self.named_form),
            "aliases": [str(a) for a in self.aliases],
            "directed": self.directed,
            "connected": self.connected,
            "srg": list(self.srg_params) if self.srg_params else None,
            "inner_srg": list(self.inner_srg_params) if self.inner_srg_params else None,
            "bipartite": self.bipartite,
            "odd_cycle_witness": (
                [g.vertex_label(v) for v in self.odd_cycle_witness] if self.odd_cycle_witness else None
            ),
            "semiprimitive": self.semiprimitive,
            "ramanujan": self.ramanujan,
        }


# ---------------------------------------------------------------------------
# strong regularity


def srg_check(g) -> Optional[SrgParams]:
    """Brute-force strongly-regular parameters of an undirected graph, or None.

    ``g`` may be a :class:`GPGraph` or an :class:`oracle.DenseGraph`. Complete
    graphs report d = 0, as do disjoint unions of equal cliques.
    """
    if g.directed:
        raise DirectedGraph("strong regularity is only checked for undirected graphs")
    adj = np.asarray(g.adjacency, dtype=bool)
    v = adj.shape[0]
    deg = adj.sum(axis=1)
    if not np.all(deg == deg[0]):
        return None
    a = adj.astype(np.float64)
    common = a @ a
    on = common[adj]
    off = common[~adj & ~np.eye(v, dtype=bool)]
    if len(on) == 0 or np.any(on != on[0]):
        return None
    if len(off) and np.any(off != off[0]):
        return None
    k, e = int(deg[0]), int(on[0])
    d = int(off[0]) if len(off) else 0
    if (v - k - 1) * d != k * (k - e - 1):
        raise InternalTheoremViolation("srg parameter identity", f"({v},{k},{e},{d})")
    return SrgParams(v, k, e, d)


def srg_family_params(p: int, ell: int, t: int) -> SrgParams:
    """Closed-form parameters of Γ(p^ell + 1, p^(2 ell t)) for t > 1."""
    if t <= 1:
        raise PreconditionViolated("the family needs t > 1")
    m = 2 * ell * t
    v = p**m
    pl = p**ell
    denom = (pl + 1) ** 2
    sign = (-1) ** t
    k_num = v - 1
    e_num = v - sign * p ** (ell * (t + 1)) * (pl - 1) - 3 * pl - 2
    d_num = v + sign * p ** (ell * t) * (pl - 1) - pl
    for num, den, what in ((k_num, pl + 1, "degree"), (e_num, denom, "e"), (d_num, denom, "d")):
        if num % den:
            raise NonIntegralParameter(f"{what} = {num}/{den} is not an integer")
    return SrgParams(v, k_num // (pl + 1), e_num // denom, d_num // denom)


# ---------------------------------------------------------------------------
# bipartiteness


def odd_cycle_witness(g: GPGraph) -> Optional[list[int]]:
    """An odd cycle of vertex indices built from the field structure, or None for Γ(2^m-1, 2^m)."""
    f = g.field
    if f.p != 2:
        # 0, 1, 2, ..., p-1: the prime-field elements have indices 0..p-1
        return list(range(f.p))
    if g.n == 1:
        return None
    r = min(factorize(g.n))
    alpha = int(f.exp_idx[(f.q - 1) // r])
    cycle = [0, 1]
    term = 1
    for _ in range(r - 2):
        term = int(f.mul_idx(term, alpha))
        cycle.append(int(f.add_idx(cycle[-1], term)))
    return cycle


def validate_cycle(g: GPGraph, cycle: list[int]) -> None:
    """Raise unless ``cycle`` is an odd closed walk on distinct vertices along arcs of ``g``."""
    r = len(cycle)
    if r % 2 == 0 or r < 3:
        raise InternalTheoremViolation("witness length is not odd", str(r))
    if len(set(cycle)) != r:
        raise InternalTheoremViolation("witness repeats a vertex", str(cycle))
    for i in range(r):
        u, v = cycle[i], cycle[(i + 1) % r]
        if not g.adjacency[u, v]:
            raise InternalTheoremViolation(
                "witness step is not an arc", f"{g.vertex_label(u)} -> {g.vertex_label(v)}"
            )


def bipartiteness(g: GPGraph, d: Optional[Decomposition] = None) -> tuple[bool, Optional[list[int]]]:
    """Predicted bipartiteness with an odd-cycle witness, cross-checked by 2-coloring."""
    predicted = g.p == 2 and g.k == g.q - 1
    witness = None
    if not predicted:
        witness = odd_cycle_witness(g)
        if witness is None:
            raise InternalTheoremViolation("no odd cycle constructed", g.name)
        validate_cycle(g, witness)
    coloring, _ = oracle.two_coloring(oracle.DenseGraph.from_gp(g))
    if (coloring is not None) != predicted:
        raise InternalTheoremViolation(
            "bipartiteness prediction disagrees with 2-coloring", f"{g.name}: predicted {predicted}"
        )
    if d is not None:
        cg = d.component_graph
        if predicted != (cg.q == 2 and cg.k == 1):
            raise InternalTheoremViolation("bipartite graph whose component is not K_2", g.name)
    return predicted, witness


def bipartite_double(g: GPGraph) -> tuple[oracle.DenseGraph, bool]:
    """Γ(k,q) x K_2 and whether it is connected (checked against connected-and-non-bipartite)."""
    base = oracle.DenseGraph.from_gp(g)
    double = oracle.tensor_with_k2(base)
    connected = len(oracle.components(double, "strong")) == 1
    base_connected = len(oracle.components(base, "strong")) == 1
    coloring, _ = oracle.two_coloring(base)
    if connected != (base_connected and coloring is None):
        raise InternalTheoremViolation("bipartite double connectivity", g.name)
    return double, connected


def semiprimitive_pair(k: int, p: int) -> bool:
    """True iff -1 is a power of p modulo k."""
    if k < 1:
        raise PreconditionViolated("k must be positive")
    if k <= 2:
        return True
    if math.gcd(p, k) != 1:
        return False
    x = 1
    for _ in range(multiplicative_order(p, k)):
        x = x * p % k
        if x == k - 1:
            return True
    return False


def ramanujan_check(s: Spectrum, n: int) -> bool:
    """Every eigenvalue other than +-n has modulus at most 2 sqrt(n - 1)."""
    if any(abs(v.imag) > s.tolerance for v, _ in s.entries):
        raise DirectedSpectrum("Ramanujan bound is only evaluated for real spectra")
    bound = 2 * math.sqrt(n - 1)
    for v, _ in s.entries:
        if abs(v - n) <= s.tolerance or abs(v + n) <= s.tolerance:
            continue
        if abs(v) > bound + s.tolerance:
            return False
    return True


def hamming_identification(g: GPGraph, b: int, q0: int, cap: int = oracle.ISO_ORDER_CAP) -> bool:
    """Whether Γ(k, q0^b) is isomorphic to the Hamming graph H(b, q0)."""
    if prime_power(q0) is None or q0**b != g.q:
        raise ParameterMismatch(f"{g.q} is not {q0}^{b}")
    block = (q0**b - 1) // (q0 - 1)
    if block % b or g.k != block // b:
        raise ParameterMismatch(f"k={g.k} does not match ({q0}^{b}-1)/({b}({q0}-1))")
    if not connectivity_params(g.p, g.m, g.k).connected:
        return False
    h = oracle.hamming_graph(b, q0)
    return oracle.isomorphic(oracle.DenseGraph.from_gp(g), h, cap) is not None


# ---------------------------------------------------------------------------
# named forms


def _verify_cliques(d: Decomposition, size: int, count: int) -> bool:
    g = d.graph
    if d.component_count != count or d.component_graph.q != size:
        return False
    same = d.coset_of[:, None] == d.coset_of[None, :]
    return bool(np.array_equal(g.adjacency, same & ~np.eye(g.q, dtype=bool)))


def _verify_cycles(d: Decomposition, prime: int, count: int, directed: bool) -> bool:
    g = d.graph
    if d.component_count != count or d.component_graph.q != prime or g.directed != directed:
        return False
    deg = 1 if directed else 2
    if not (np.all(g.out_degrees() == deg) and np.all(g.in_degrees() == deg)):
        return False
    comps = oracle.components(oracle.DenseGraph.from_gp(g), "strong")
    return len(comps) == count and all(len(c) == prime for c in comps)


def _hamming_candidate(g: GPGraph) -> Optional[tuple[int, int]]:
    for b in range(3, g.m + 1):
        if g.m % b:
            continue
        q0 = g.p ** (g.m // b)
        block = (g.q - 1) // (q0 - 1)
        if block % b == 0 and g.k == block // b:
            return b, q0
    return None


def _candidates(g: GPGraph, d: Decomposition):
    """Rule-based named forms, in priority order."""
    p, m, q, k = g.p, g.m, g.q, g.k
    if k == 1:
        yield NamedForm("complete", (q,))
    if q % 2 and k == 2:
        yield NamedForm("paley", (q, q % 4 == 3))
    if q % 2 and k == (q - 1) // 2:
        yield NamedForm("cycles", (p, p ** (m - 1), False))
    if q % 2 and k == q - 1:
        yield NamedForm("cycles", (p, p ** (m - 1), True))
    if m % 2 == 0 and k == p ** (m // 2) + 1:
        size = p ** (m // 2)
        yield NamedForm("cliques", (size, size))
    if m % 2 == 0 and p % 2 and k == (p ** (m // 2) + 1) // 2:
        yield NamedForm("rook", (p ** (m // 2),))
    if p == 2 and k == q - 1:
        yield NamedForm("cliques", (2, q // 2))
    for ell in range(1, m):
        if m % (2 * ell) == 0 and m // (2 * ell) > 1 and k == p**ell + 1:
            yield NamedForm("srg", tuple(srg_family_params(p, ell, m // (2 * ell))))
    ham = _hamming_candidate(g)
    if ham is not None and d.connected:
        yield NamedForm("hamming", ham)
    if not d.connected:
        inner = classify(d.component_graph, iso_cap=0).named_form
        yield NamedForm("union", (d.component_count,), inner)


def _verify(form: NamedForm, g: GPGraph, d: Decomposition, srg, iso_cap: int) -> Optional[bool]:
    """True/False for a checked claim, None when the check is out of reach (size cap)."""
    kind, params = form.kind, form.params
    if kind == "complete":
        return bool(np.array_equal(g.adjacency, ~np.eye(g.q, dtype=bool)))
    if kind == "paley":
        f = g.field
        squares = np.unique(f.mul_idx(np.arange(1, f.q), np.arange(1, f.q)))
        return bool(np.array_equal(squares, g.connection_idx)) and g.directed == params[1]
    if kind == "cycles":
        return _verify_cycles(d, *params)
    if kind == "cliques":
        return _verify_cliques(d, *params)
    if kind == "rook":
        side = params[0]
        if g.q <= iso_cap:
            target = oracle.cartesian_power(oracle.complete_graph(side), 2)
            return oracle.isomorphic(oracle.DenseGraph.from_gp(g), target, iso_cap) is not None
        # rook graphs with an odd side are determined by their srg parameters
        return srg == SrgParams(side * side, 2 * (side - 1), side - 2, 2)
    if kind == "srg":
        return srg == SrgParams(*params)
    if kind == "hamming":
        if g.q > iso_cap:
            return None
        return hamming_identification(g, params[0], params[1], iso_cap)
    if kind == "union":
        # components were certified by the decomposition; inner form by its own classification
        return d.component_count == params[0]
    return False


def classify(
    g: GPGraph,
    d: Optional[Decomposition] = None,
    iso_cap: int = oracle.ISO_ORDER_CAP,
    with_bipartite: bool = True,
) -> Classification:
    """Identify ``g`` among the named families and verify every claimed form structurally."""
    if d is None:
        d = decompose(g)
    srg = None if g.directed else srg_check(g)
    verified = []
    for form in _candidates(g, d):
        ok = _verify(form, g, d, srg, iso_cap)
        if ok is None:
            continue
        if not ok:
            raise InternalTheoremViolation("named form failed structural check", f"{g.name} as {form}")
        if str(form) not in {str(v) for v in verified}:
            verified.append(form)
    if not verified:
        verified = [UNKNOWN]
    inner_srg = None
    if not d.connected and not g.directed:
        inner_srg = srg_check(d.component_graph)
    if with_bipartite:
        bip, witness = bipartiteness(g, d)
    else:
        bip, witness = g.p == 2 and g.k == g.q - 1, None
    ram = None
    if not g.directed:
        base = g if d.connected else d.component_graph
        ram = ramanujan_check(character_spectrum(base), base.n)
    return Classification(
        named_form=verified[0],
        aliases=tuple(verified[1:]),
        directed=g.directed,
        connected=d.connected,
        component_count=d.component_count,
        srg_params=srg,
        inner_srg_params=inner_srg,
        bipartite=bip,
        odd_cycle_witness=tuple(witness) if witness else None,
        semiprimitive=semiprimitive_pair(g.k, g.p),
        ramanujan=ram,
        forms=tuple(str(f) for f in verified),
    )


def verdict_line(g: GPGraph, d: Decomposition, c: Classification) -> str:
    parts = ["directed" if g.directed else "undirected"]
    if d.connected:
        parts.append(f"connected, {c.named_form}")
    else:
        inner = classify(d.component_graph, iso_cap=oracle.ISO_ORDER_CAP, with_bipartite=False)
        parts.append(f"{d.component_count} components ≅ {d.component_graph.name}={inner.named_form}")
    parts.append("bipartite" if c.bipartite else "non-bipartite")
    if g.directed:
        parts.append("not srg (directed)")
    elif c.srg_params is not None:
        parts.append(str(c.srg_params))
    else:
        parts.append("not srg(whole)")
    if c.inner_srg_params is not None and c.srg_params is None:
        parts.append(f"inner {c.inner_srg_params}")
    return f"{g.name}: " + ", ".join(parts)
