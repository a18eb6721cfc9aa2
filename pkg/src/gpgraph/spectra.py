"""Exact-angle spectra of GP-graphs from additive character sums."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import InternalTheoremViolation, PreconditionViolated
from .gp_graph import GPGraph

GROUP_TOL = 1e-7


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with multiplicities, sorted by (re desc, im desc)."""

    entries: tuple[tuple[complex, int], ...]
    source: str
    tolerance: float = GROUP_TOL

    @property
    def order(self) -> int:
        return sum(mult for _, mult in self.entries)

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.entries], dtype=complex)

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([mult for _, mult in self.entries])

    def multiplicity(self, value: complex, tol: float | None = None) -> int:
        tol = self.tolerance if tol is None else tol
        return sum(mult for v, mult in self.entries if abs(v - value) <= tol)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "entries": [
                {"re": float(v.real), "im": float(v.imag), "mult": mult} for v, mult in self.entries
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "mult"])
        for v, mult in self.entries:
            w.writerow([repr(float(v.real)), repr(float(v.imag)), mult])
        return buf.getvalue()


def group_eigenvalues(values, source: str, tol: float = GROUP_TOL) -> Spectrum:
    """Cluster values whose distance is within ``tol`` (transitively) and average each cluster."""
    vals = np.asarray(values, dtype=complex)
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    order = np.argsort(vals.real, kind="stable")
    sorted_re = vals.real[order]
    for pos, i in enumerate(order):
        j = pos + 1
        while j < n and sorted_re[j] - sorted_re[pos] <= tol:
            other = order[j]
            if abs(vals[i] - vals[other]) <= tol:
                ri, ro = find(i), find(other)
                if ri != ro:
                    parent[ro] = ri
            j += 1
    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    entries = [(complex(vals[idx].mean()), len(idx)) for idx in clusters.values()]
    entries.sort(key=lambda e: (-e[0].real, -e[0].imag))
    return Spectrum(tuple(entries), source, tol)


def character_eigenvalues(g: GPGraph) -> np.ndarray:
    """lambda_a = sum over s in R_k of exp(2 pi i Tr(a s) / p), for every vertex index a."""
    f = g.field
    p = f.p
    a = np.arange(f.q, dtype=np.int64)
    traces = f.trace_table[f.mul_idx(a[:, None], g.connection_idx[None, :])]
    flat = (a[:, None] * p + traces).ravel()
    counts = np.bincount(flat, minlength=f.q * p).reshape(f.q, p)
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    return counts @ roots


def character_spectrum(g: GPGraph, tol: float = GROUP_TOL) -> Spectrum:
    vals = character_eigenvalues(g)
    if not g.directed:
        if np.any(np.abs(vals.imag) > tol):
            raise InternalTheoremViolation("undirected graph with a non-real eigenvalue", g.name)
        vals = vals.real.astype(complex)
    s = group_eigenvalues(vals, "character_sum", tol)
    if s.multiplicity(g.n) == 0:
        raise InternalTheoremViolation("degree is not an eigenvalue", g.name)
    return s


def spectra_match(s1: Spectrum, s2: Spectrum, tol: float, scale: int = 1) -> bool:
    """Same eigenvalues within ``tol`` and mult1 = scale * mult2 for each of them."""
    if len(s1.entries) != len(s2.entries):
        return False
    used = [False] * len(s2.entries)
    for v1, m1 in s1.entries:
        for j, (v2, m2) in enumerate(s2.entries):
            if not used[j] and abs(v1 - v2) <= tol:
                if m1 != scale * m2:
                    return False
                used[j] = True
                break
        else:
            return False
    return True


def verify_multiplicity_scaling(g: GPGraph, d, tol: float = GROUP_TOL) -> bool:
    """The spectrum of ``g`` is that of its component graph, multiplicities scaled by the copy count."""
    return spectra_match(character_spectrum(g, tol), character_spectrum(d.component_graph, tol), tol, d.component_count)


def spectral_radius(s: Spectrum, degree: int | None = None) -> float:
    rho = max(abs(v) for v, _ in s.entries)
    if degree is not None and abs(rho - degree) > s.tolerance:
        raise InternalTheoremViolation("spectral radius differs from the degree", f"{rho} vs {degree}")
    return float(rho)


def spectrum_symmetry_tests(s: Spectrum, n: int) -> tuple[bool, bool]:
    """(-n is an eigenvalue, spectrum closed under negation with equal multiplicities)."""
    b1 = s.multiplicity(-n) > 0
    b2 = all(s.multiplicity(-v) == mult for v, mult in s.entries)
    return b1, b2


def real_part_relation(g_half: GPGraph, g: GPGraph, tol: float = 1e-9) -> bool:
    """Per character: eigenvalue of Γ(k/2, q) = 2 Re(eigenvalue of Γ(k, q))."""
    if not g.directed or g.k % 2 or g_half.k * 2 != g.k or g_half.field != g.field:
        raise PreconditionViolated("need directed Γ(k,q) with even k and Γ(k/2,q) over the same field")
    lhs = character_eigenvalues(g_half)
    rhs = 2 * character_eigenvalues(g).real
    return bool(np.all(np.abs(lhs - rhs) <= tol))
