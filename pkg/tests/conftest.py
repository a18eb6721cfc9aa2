import pytest

from gpgraph.finite_field import build_field, divisors, prime_power
from gpgraph.gp_graph import GPGraph


def prime_powers(q_max):
    out = []
    for q in range(2, q_max + 1):
        pp = prime_power(q)
        if pp:
            out.append(pp)
    return out


def all_graphs(q_max):
    """Every Γ(k, q) with q <= q_max and k | q - 1, over default fields."""
    for p, m in prime_powers(q_max):
        f = build_field(p, m)
        for k in divisors(f.q - 1):
            yield GPGraph(f, k)


def graph(k, q, modulus=None):
    p, m = prime_power(q)
    return GPGraph(build_field(p, m, modulus), k)


@pytest.fixture
def f9():
    return build_field(3, 2)


@pytest.fixture
def f8():
    return build_field(2, 3, [1, 1, 0, 1])


@pytest.fixture
def f16():
    return build_field(2, 4, [1, 1, 0, 0, 1])
