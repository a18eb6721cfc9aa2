"""Finite fields GF(p^m) built explicitly as Z_p[x]/(f).

Elements are :class:`FieldElement` coefficient vectors (constant term first).
Every element also has an integer *index* ``sum(c_j * p**j)``; the index order
is the canonical vertex order used by the graph modules, and the vectorized
``*_idx`` helpers of :class:`FiniteField` operate on numpy arrays of indices.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    IncompatibleFields,
    InternalTheoremViolation,
    LogOfZero,
    NotADivisor,
    NotPrime,
    ReducibleModulus,
)

#: discrete logs come from a lookup table up to this field size, BSGS above it
LOG_TABLE_CAP = 1 << 20


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for r, e in factorize(n).items():
        divs = [d * r**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def multiplicative_order(p: int, n: int) -> int:
    """Least t >= 1 with p^t = 1 (mod n); defined as 1 for n = 1."""
    if n == 1:
        return 1
    if math.gcd(p, n) != 1:
        raise ValueError(f"{p} is not a unit modulo {n}")
    t, x = 1, p % n
    while x != 1:
        x = x * p % n
        t += 1
    return t


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q = p^m, or None when q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, m),) = f.items()
    return p, m


# ---------------------------------------------------------------------------
# polynomials over Z_p: lists of ints, constant term first, no trailing zeros


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_powmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` over Z_p."""
    f = _trim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]

    def x_pow_p_iter(times: int) -> list[int]:
        h = x
        for _ in range(times):
            h = _poly_powmod(h, p, f, p)
        return h

    for r in factorize(m):
        h = x_pow_p_iter(m // r)
        g = _poly_gcd(f, _poly_sub(h, x, p), p)
        if len(g) > 1:
            return False
    return _poly_sub(x_pow_p_iter(m), x, p) == []


@lru_cache(maxsize=None)
def minimal_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over Z_p.

    Coefficient vectors are compared low-degree-first.
    """
    for lower in itertools.product(range(p), repeat=m):
        f = list(lower) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {m} over Z_{p}")  # pragma: no cover


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """A field element as its length-m coefficient vector (constant term first)."""

    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def label(self, var: str = "a") -> str:
        """Polynomial label in the ``a^2+2a+1`` style."""
        terms = []
        for deg in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[deg]
            if not c:
                continue
            if deg == 0:
                terms.append(str(c))
            else:
                mono = var if deg == 1 else f"{var}^{deg}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.label()


class FiniteField:
    """GF(p^m) with a verified irreducible modulus and a fixed primitive element.

    Instances are immutable after construction; the numpy tables are cached
    lazily and never modified.
    """

    def __init__(
        self,
        p: int,
        m: int,
        modulus: Sequence[int],
        log_table_cap: int = LOG_TABLE_CAP,
    ):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self.log_table_cap = log_table_cap
        self._log: dict[FieldElement, int] | None = None
        self.omega = self._find_primitive()
        if self.q <= log_table_cap:
            self._log = {self.from_index(int(i)): e for e, i in enumerate(self.exp_idx)}

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus),
            "omega": list(self.omega.coeffs),
        }

    def to_json(self) -> str:
        return json.dumps(self.descriptor())

    # -- elements ---------------------------------------------------------

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.m)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.m - 1))

    def element(self, coeffs: Iterable[int] | int) -> FieldElement:
        """Build an element from a coefficient list or from a prime-field integer."""
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [int(v) % self.p for v in coeffs]
        if len(c) > self.m:
            c = _poly_mod(c, self.modulus, self.p)
        c = c + [0] * (self.m - len(c))
        return FieldElement(tuple(c))

    def from_index(self, i: int) -> FieldElement:
        c = []
        for _ in range(self.m):
            i, r = divmod(i, self.p)
            c.append(r)
        return FieldElement(tuple(c))

    def index(self, x: FieldElement) -> int:
        return sum(c * self.p**j for j, c in enumerate(x.coeffs))

    def elements(self) -> list[FieldElement]:
        return [self.from_index(i) for i in range(self.q)]

    def __contains__(self, x: object) -> bool:
        return (
            isinstance(x, FieldElement)
            and len(x.coeffs) == self.m
            and all(0 <= c < self.p for c in x.coeffs)
        )

    # -- scalar arithmetic ------------------------------------------------

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple((a + b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple((a - b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def neg(self, x: FieldElement) -> FieldElement:
        return FieldElement(tuple(-a % self.p for a in x.coeffs))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        prod = _poly_mod(_poly_mul(_trim(list(x.coeffs)), _trim(list(y.coeffs)), self.p), self.modulus, self.p)
        return FieldElement(tuple(prod + [0] * (self.m - len(prod))))

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        if x.is_zero():
            if e <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return self.zero
        e %= self.q - 1
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: FieldElement) -> FieldElement:
        if x.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(x, self.q - 2)

    def frobenius(self, x: FieldElement, times: int = 1) -> FieldElement:
        for _ in range(times):
            x = self._pow_raw(x, self.p)
        return x

    def _pow_raw(self, x: FieldElement, e: int) -> FieldElement:
        # plain square-and-multiply, no exponent reduction
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def trace(self, x: FieldElement) -> int:
        """Absolute trace x + x^p + ... + x^(p^(m-1)) as an integer in [0, p)."""
        acc, y = self.zero, x
        for _ in range(self.m):
            acc = self.add(acc, y)
            y = self._pow_raw(y, self.p)
        if any(acc.coeffs[1:]):
            raise InternalTheoremViolation("trace outside prime field", str(acc))
        return acc.coeffs[0]

    def multiplicative_order(self, x: FieldElement) -> int:
        if x.is_zero():
            raise LogOfZero("zero has no multiplicative order")
        order = self.q - 1
        for r, e in factorize(self.q - 1).items():
            for _ in range(e):
                if self.pow(x, order // r) == self.one:
                    order //= r
                else:
                    break
        return order

    def _find_primitive(self) -> FieldElement:
        if self.q == 2:
            return self.one
        primes = list(factorize(self.q - 1))
        for i in range(1, self.q):
            x = self.from_index(i)
            if all(self.pow(x, (self.q - 1) // r) != self.one for r in primes):
                return x
        raise ReducibleModulus(f"no generator found; modulus {self.modulus} is not irreducible")

    def discrete_log(self, x: FieldElement) -> int:
        """Exponent e in [0, q-2] with omega^e = x."""
        if x.is_zero():
            raise LogOfZero("discrete log of zero")
        if self._log is not None:
            return self._log[x]
        return self._bsgs(x)

    def _bsgs(self, x: FieldElement) -> int:
        n = self.q - 1
        s = math.isqrt(n) + 1
        baby: dict[FieldElement, int] = {}
        y = self.one
        for j in range(s):
            baby.setdefault(y, j)
            y = self.mul(y, self.omega)
        giant = self.pow(self.omega, n - s)  # omega^(-s)
        y = x
        for i in range(s + 1):
            if y in baby:
                return (i * s + baby[y]) % n
            y = self.mul(y, giant)
        raise InternalTheoremViolation("baby-step giant-step found no logarithm", str(x))

    # -- vectorized index arithmetic ---------------------------------------

    @cached_property
    def exp_idx(self) -> np.ndarray:
        """exp_idx[e] = index of omega^e for e in [0, q-2]."""
        out = np.empty(self.q - 1, dtype=np.int64)
        y = self.one
        for e in range(self.q - 1):
            out[e] = self.index(y)
            y = self.mul(y, self.omega)
        if y != self.one:
            raise InternalTheoremViolation("omega^(q-1) != 1", str(y))
        return out

    @cached_property
    def log_idx(self) -> np.ndarray:
        """log_idx[i] = discrete log of element i; -1 for zero."""
        out = np.full(self.q, -1, dtype=np.int64)
        out[self.exp_idx] = np.arange(self.q - 1)
        return out

    def add_idx(self, u, v) -> np.ndarray:
        u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(u, v)
        out = np.zeros(np.broadcast_shapes(u.shape, v.shape), dtype=np.int64)
        w = 1
        for _ in range(self.m):
            out += ((u // w % self.p + v // w % self.p) % self.p) * w
            w *= self.p
        return out

    def neg_idx(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        if self.p == 2:
            return u.copy()
        out = np.zeros_like(u)
        w = 1
        for _ in range(self.m):
            out += ((-(u // w % self.p)) % self.p) * w
            w *= self.p
        return out

    def sub_idx(self, u, v) -> np.ndarray:
        return self.add_idx(u, self.neg_idx(v))

    def mul_idx(self, u, v) -> np.ndarray:
        u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
        lu, lv = self.log_idx[u], self.log_idx[v]
        out = self.exp_idx[(lu + lv) % (self.q - 1)]
        return np.where((u == 0) | (v == 0), 0, out)

    def pow_idx(self, u, e: int) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        if e <= 0 and np.any(u == 0):
            raise ZeroDivisionError("non-positive power of zero")
        out = self.exp_idx[(self.log_idx[u] * e) % (self.q - 1)]
        return np.where(u == 0, 0, out)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """Trace of every element, by linearity from the traces of 1, a, ..., a^(m-1)."""
        basis = [self.trace(self.element([0] * j + [1])) for j in range(self.m)]
        idx = np.arange(self.q, dtype=np.int64)
        out = np.zeros(self.q, dtype=np.int64)
        w = 1
        for t in basis:
            out += (idx // w % self.p) * t
            w *= self.p
        return out % self.p

    def subgroup_idx(self, order: int) -> np.ndarray:
        """Sorted indices of the unique multiplicative subgroup of the given order."""
        if (self.q - 1) % order:
            raise NotADivisor(f"{order} does not divide {self.q - 1}")
        step = (self.q - 1) // order
        return np.sort(self.exp_idx[np.arange(order) * step])


def build_field(
    p: int,
    m: int,
    modulus_override: Sequence[int] | None = None,
    log_table_cap: int = LOG_TABLE_CAP,
) -> FiniteField:
    """Construct GF(p^m).

    The default modulus is :func:`minimal_irreducible`; an override must be a
    monic irreducible of degree ``m`` (constant term first).
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
    if modulus_override is None:
        return _cached_field(p, m, minimal_irreducible(p, m), log_table_cap)
    f = [int(c) % p for c in modulus_override]
    _trim(f)
    if len(f) - 1 != m:
        raise DegreeMismatch(f"modulus has degree {len(f) - 1}, expected {m}")
    if f[-1] != 1:
        raise DegreeMismatch("modulus must be monic")
    if not is_irreducible(f, p):
        raise ReducibleModulus(f"{f} is reducible over Z_{p}")
    return _cached_field(p, m, tuple(f), log_table_cap)


@lru_cache(maxsize=256)
def _cached_field(p: int, m: int, modulus: tuple[int, ...], log_table_cap: int) -> FiniteField:
    return FiniteField(p, m, modulus, log_table_cap)


def parse_modulus(text: str) -> list[int]:
    """Parse ``"1,1,0,0,1"`` (constant term first) or ``"x^4+x+1"``."""
    text = text.replace(" ", "")
    if "x" not in text:
        return [int(c) for c in text.split(",") if c]
    coeffs: dict[int, int] = {}
    for term in text.replace("-", "+-").split("+"):
        if not term:
            continue
        if "x" in term:
            head, _, tail = term.partition("x")
            c = int(head) if head not in ("", "-") else (-1 if head == "-" else 1)
            deg = int(tail[1:]) if tail.startswith("^") else 1
        else:
            c, deg = int(term), 0
        coeffs[deg] = coeffs.get(deg, 0) + c
    top = max(coeffs)
    return [coeffs.get(d, 0) for d in range(top + 1)]


@dataclass(frozen=True, eq=False)
class SubfieldDescriptor:
    """The subfield F_a of order p^a inside a field of order p^m."""

    a: int
    alpha: FieldElement
    elements: frozenset[FieldElement]
    element_idx: np.ndarray  # sorted indices in the parent field

    def __len__(self) -> int:
        return len(self.elements)


def subfield(f: FiniteField, a: int) -> SubfieldDescriptor:
    """F_a = {x : x^(p^a) = x}, cross-checked against {0} u <omega^((q-1)/(p^a-1))>."""
    return _subfield(f, a)


@lru_cache(maxsize=512)
def _subfield(f: FiniteField, a: int) -> SubfieldDescriptor:
    if a < 1 or f.m % a:
        raise NotADivisor(f"{a} does not divide {f.m}")
    pa = f.p**a
    idx = np.arange(f.q, dtype=np.int64)
    fixed = np.flatnonzero(f.pow_idx(idx[1:], pa) == idx[1:]) + 1
    fixed = np.concatenate(([0], fixed))
    step = (f.q - 1) // (pa - 1)
    alpha_idx = int(f.exp_idx[step % (f.q - 1)])
    span = np.sort(np.concatenate(([0], f.exp_idx[np.arange(pa - 1) * step % (f.q - 1)])))
    if len(fixed) != pa or not np.array_equal(fixed, span):
        raise InternalTheoremViolation(
            "Frobenius fixed points differ from {0} u <alpha>",
            f"a={a}, |fixed|={len(fixed)}, |span|={len(span)}",
        )
    return SubfieldDescriptor(
        a=a,
        alpha=f.from_index(alpha_idx),
        elements=frozenset(f.from_index(int(i)) for i in fixed),
        element_idx=fixed,
    )


#: additivity of an embedding is checked exhaustively up to this many pairs
EMBEDDING_ADDITIVITY_CAP = 1 << 16


def psi_exponent(small: FiniteField, big: FiniteField) -> int:
    """Least j coprime to p^a - 1 such that omega_small -> alpha^j extends to a field map.

    alpha = omega_big^((q-1)/(p^a-1)) generates the copy of F_{p^a} inside ``big``,
    but it need not share a minimal polynomial with omega_small; some power
    alpha^j with gcd(j, p^a - 1) = 1 does. A multiplicative map x -> psi(x) is
    additive iff psi(1 + x) = 1 + psi(x) for all x, which is what is tested.
    """
    if small.p != big.p or big.m % small.m:
        raise IncompatibleFields(f"cannot embed GF({small.p}^{small.m}) into GF({big.p}^{big.m})")
    pa = small.q
    if pa == 2:
        return 1
    step = (big.q - 1) // (pa - 1)
    logs = small.log_idx
    i = np.arange(pa)
    one_plus_small = small.add_idx(1, i)
    for j in range(1, pa - 1):
        if math.gcd(j, pa - 1) != 1:
            continue
        out = _psi_from_exponent(logs, big, step * j)
        if np.array_equal(out[one_plus_small], big.add_idx(1, out)):
            return j
    raise InternalTheoremViolation("no conjugate of alpha gives a field embedding", f"GF({pa}) -> GF({big.q})")


def _psi_from_exponent(logs: np.ndarray, big: FiniteField, e: int) -> np.ndarray:
    return np.where(logs < 0, 0, big.exp_idx[(np.maximum(logs, 0) * e) % (big.q - 1)])


def psi_embedding_idx(small: FiniteField, big: FiniteField) -> np.ndarray:
    """Index form of the embedding: out[i] = index in ``big`` of the image of element i."""
    j = psi_exponent(small, big)
    pa = small.q
    step = (big.q - 1) // (pa - 1) if pa > 1 else 0
    out = _psi_from_exponent(small.log_idx, big, step * j)
    if pa * pa <= EMBEDDING_ADDITIVITY_CAP:
        i = np.arange(pa)
        lhs = out[small.add_idx(i[:, None], i[None, :])]
        rhs = big.add_idx(out[:, None], out[None, :])
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise InternalTheoremViolation(
                "embedding is not additive",
                f"x={small.from_index(int(bad[0]))}, y={small.from_index(int(bad[1]))}",
            )
    return out


def psi_embedding(small: FiniteField, big: FiniteField) -> dict[FieldElement, FieldElement]:
    """Field monomorphism sending omega_small to alpha^j, j = psi_exponent(small, big)."""
    idx = psi_embedding_idx(small, big)
    return {small.from_index(i): big.from_index(int(j)) for i, j in enumerate(idx)}
