"""Batch analysis of every Γ(k, p^m) over a parameter range."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from . import oracle
from .classify import bipartiteness, classify, srg_check
from .decompose import decompose
from .errors import BudgetExceeded, InternalTheoremViolation, PreconditionViolated
from .finite_field import build_field, divisors, is_prime
from .gp_graph import GPGraph
from .spectra import character_spectrum, group_eigenvalues, spectra_match

CHECKS = ("decompose", "spectrum", "bipartite", "srg", "classify", "oracle-crosscheck")
DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "GPGRAPH_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class SweepSpec:
    p_list: tuple[int, ...]
    m_max: int
    k_filter: Optional[tuple[int, ...]] = None  # None means every divisor of q - 1
    checks: frozenset[str] = frozenset(("decompose", "bipartite", "srg", "classify"))
    budget: int = field(default_factory=default_budget)
    moduli: dict = field(default_factory=dict)  # (p, m) -> modulus coefficients

    def __post_init__(self):
        if not self.p_list:
            raise PreconditionViolated("p_list must not be empty")
        if self.m_max < 1:
            raise PreconditionViolated("m_max must be at least 1")
        for p in self.p_list:
            if not is_prime(p):
                raise PreconditionViolated(f"{p} is not prime")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise PreconditionViolated(f"unknown checks: {sorted(unknown)}")

    def pairs(self) -> list[tuple[int, int, int]]:
        """(p, m, k) in output order: q ascending, then k ascending."""
        out = []
        for p in self.p_list:
            for m in range(1, self.m_max + 1):
                q = p**m
                for k in divisors(q - 1):
                    if self.k_filter is None or k in self.k_filter:
                        out.append((p, m, k))
        out.sort(key=lambda t: (t[0] ** t[1], t[2]))
        return out


@dataclass(frozen=True)
class SweepRow:
    q: int
    k: int
    n: int
    a: int
    components: int
    directed: bool
    bipartite: Optional[bool]
    srg: Optional[tuple[int, int, int, int]]
    named_form: Optional[str]
    spectrum: Optional[str] = None
    oracle: Optional[str] = None


def analyze_pair(g: GPGraph, checks) -> SweepRow:
    d = decompose(g)
    bip = srg = form = spec = orc = None
    if "bipartite" in checks:
        bip = bipartiteness(g, d)[0]
    if "srg" in checks and not g.directed:
        srg = srg_check(g)
    if "classify" in checks:
        form = str(classify(g, d, with_bipartite=False).named_form)
    if "spectrum" in checks or "oracle-crosscheck" in checks:
        s = character_spectrum(g)
        spec = " ".join(_format_eigen(v, mult) for v, mult in s.entries)
    if "oracle-crosscheck" in checks:
        dg = oracle.DenseGraph.from_gp(g)
        counts = {len(oracle.components(dg, mode)) for mode in ("weak", "strong")}
        if counts != {d.component_count}:
            raise InternalTheoremViolation("component count differs from BFS", f"{g.name}: {counts}")
        coloring, _ = oracle.two_coloring(dg)
        if (coloring is not None) != (g.p == 2 and g.k == g.q - 1):
            raise InternalTheoremViolation("bipartiteness differs from 2-coloring", g.name)
        orc = "components,2-coloring"
        if g.q <= oracle.EIGEN_ORDER_CAP:
            num = group_eigenvalues(oracle.numeric_eigenvalues(dg), "numeric_oracle", 1e-6)
            if not spectra_match(s, num, 1e-6):
                raise InternalTheoremViolation("character spectrum differs from numeric eigenvalues", g.name)
            orc += ",spectrum"
    return SweepRow(
        q=g.q,
        k=g.k,
        n=g.n,
        a=d.a,
        components=d.component_count,
        directed=g.directed,
        bipartite=bip,
        srg=tuple(srg) if srg else None,
        named_form=form,
        spectrum=spec,
        oracle=orc,
    )


def _format_eigen(v: complex, mult: int) -> str:
    re = round(v.real, 6) + 0.0
    im = round(v.imag, 6) + 0.0
    val = f"{re:g}" if im == 0 else f"{re:g}{im:+g}i"
    return f"[{val}]^{mult}"


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    pairs = spec.pairs()
    total = sum(p**m for p, m, _ in pairs)
    if total > spec.budget:
        raise BudgetExceeded(f"sweep touches {total} vertices, budget is {spec.budget}")

    def one(pmk):
        p, m, k = pmk
        f = build_field(p, m, spec.moduli.get((p, m)))
        return analyze_pair(GPGraph(f, k), spec.checks)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, pairs))
    return [one(t) for t in pairs]


COLUMNS = ("q", "k", "n", "a", "components", "directed", "bipartite", "srg", "named_form", "spectrum", "oracle")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, tuple):
        return "srg(" + ",".join(map(str, v)) + ")"
    return str(v)


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_cell(getattr(r, c)) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    return json.dumps([asdict(r) for r in rows], ensure_ascii=False, indent=1) + "\n"


def rows_to_markdown(rows: Sequence[SweepRow]) -> str:
    lines = [
        "| graph | directed | connectivity | decomposition | named form | srg |",
        "|---|---|---|---|---|---|",
    ]
    for r in rows:
        connectivity = "connected" if r.components == 1 else f"{r.components} components"
        if r.components == 1:
            decomposition = "-"
        else:
            small_q = r.q // r.components
            decomposition = f"{r.components} × Γ({(small_q - 1) // r.n},{small_q})"
        lines.append(
            f"| Γ({r.k},{r.q}) | {_cell(r.directed)} | {connectivity} | {decomposition} "
            f"| {_cell(r.named_form)} | {_cell(r.srg)} |"
        )
    return "\n".join(lines) + "\n"
