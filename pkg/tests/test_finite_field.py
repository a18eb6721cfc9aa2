import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph, prime_powers
from gpgraph.errors import DegreeMismatch, IncompatibleFields, LogOfZero, NotADivisor, NotPrime, ReducibleModulus
from gpgraph.finite_field import (
    divisors,
    build_field,
    divisors,
    is_irreducible,
    minimal_irreducible,
    multiplicative_order,
    parse_modulus,
    psi_embedding,
    psi_embedding_idx,
    subfield,
)


def test_f9_default_modulus_is_x2_plus_1(f9):
    assert f9.modulus == (1, 0, 1)


def test_prime_field_two_has_identity_generator():
    f = build_field(2, 1)
    assert f.q == 2
    assert f.omega == f.one
    assert f.elements() == [f.zero, f.one]


def test_override_x4_x_1_accepted(f16):
    assert f16.modulus == (1, 1, 0, 0, 1)
    assert f16.q == 16


def test_default_moduli_are_lexicographically_minimal():
    assert minimal_irreducible(2, 3) == (1, 0, 1, 1)
    assert minimal_irreducible(2, 4) == (1, 0, 0, 1, 1)
    for p, m in [(2, 2), (3, 3), (5, 2), (7, 2)]:
        f = minimal_irreducible(p, m)
        assert is_irreducible(f, p)


@pytest.mark.parametrize(
    "p, m, modulus, exc",
    [
        (4, 1, None, NotPrime),
        (9, 2, None, NotPrime),
        (2, 2, [1, 0, 1], ReducibleModulus),  # (x+1)^2
        (3, 2, [1, 0, 0, 1], DegreeMismatch),
        (3, 2, [1, 0, 2], DegreeMismatch),  # not monic
        (2, 0, None, DegreeMismatch),
    ],
)
def test_build_field_errors(p, m, modulus, exc):
    with pytest.raises(exc):
        build_field(p, m, modulus)


def test_alpha_squared_is_minus_one_in_f9(f9):
    alpha = f9.element([0, 1])
    assert f9.mul(alpha, alpha) == f9.element(2)


def test_alpha_to_the_seventh_in_f8(f8):
    alpha = f8.element([0, 1])
    assert f8.pow(alpha, 7) == f8.one
    assert {f8.pow(x, 7) for x in f8.elements()} == {f8.zero, f8.one}


def test_one_is_multiplicative_identity(f9):
    for x in f9.elements():
        assert f9.mul(x, f9.one) == x


def test_discrete_log_basics(f9):
    assert f9.discrete_log(f9.omega) == 1
    assert f9.discrete_log(f9.one) == 0
    with pytest.raises(LogOfZero):
        f9.discrete_log(f9.zero)


def test_discrete_log_of_two_in_f9(f9):
    # the least generator of F_3[x]/(x^2+1) is alpha + 1, since alpha has order 4
    assert f9.omega == f9.element([1, 1])
    assert f9.multiplicative_order(f9.element([0, 1])) == 4
    assert f9.discrete_log(f9.element(2)) == 4


def test_baby_step_giant_step_matches_table():
    table = build_field(3, 5)
    bsgs = build_field(3, 5, log_table_cap=10)
    assert bsgs._log is None
    for i in range(1, table.q, 7):
        x = table.from_index(i)
        assert bsgs.discrete_log(x) == table.discrete_log(x)


def test_trace_examples():
    f4 = build_field(2, 2)
    assert f4.modulus == (1, 1, 1)
    assert f4.trace(f4.zero) == 0
    assert f4.trace(f4.element([0, 1])) == 1


def test_trace_is_linear_on_f8(f8):
    els = f8.elements()
    for x in els:
        for y in els:
            assert f8.trace(f8.add(x, y)) == (f8.trace(x) + f8.trace(y)) % 2


def test_trace_table_matches_scalar_trace():
    for p, m in [(3, 3), (5, 2), (2, 5)]:
        f = build_field(p, m)
        assert [f.trace(x) for x in f.elements()] == f.trace_table.tolist()


def test_subfield_examples(f8):
    assert subfield(f8, 1).elements == {f8.zero, f8.one}
    f = build_field(3, 2)
    assert subfield(f, 2).elements == set(f.elements())
    with pytest.raises(NotADivisor):
        subfield(f8, 2)


def test_subfield_of_f81_is_closed():
    f = build_field(3, 4)
    sub = subfield(f, 2)
    assert len(sub) == 9
    idx = sub.element_idx
    members = set(idx.tolist())
    assert set(f.mul_idx(idx[:, None], idx[None, :]).ravel().tolist()) <= members
    assert set(f.add_idx(idx[:, None], idx[None, :]).ravel().tolist()) <= members


def test_psi_maps_one_to_one_and_prime_field_onto_prime_subfield():
    small, big = build_field(3, 1), build_field(3, 4)
    psi = psi_embedding(small, big)
    assert psi[small.one] == big.one
    assert set(psi.values()) == subfield(big, 1).elements == {big.element(j) for j in range(3)}


def test_psi_maps_power_subgroup_onto_connection_set():
    # Γ(20,81): a = 2, k_a = 2
    g = graph(20, 81)
    small = build_field(3, 2)
    psi = psi_embedding_idx(small, g.field)
    squares = np.unique(small.pow_idx(np.arange(1, 9), 2))
    assert np.array_equal(np.sort(psi[squares]), g.connection_idx)


def test_psi_rejects_incompatible_fields():
    with pytest.raises(IncompatibleFields):
        psi_embedding(build_field(2, 2), build_field(2, 3))
    with pytest.raises(IncompatibleFields):
        psi_embedding(build_field(3, 1), build_field(2, 2))


def test_fermat_for_every_field_up_to_1024():
    for p, m in prime_powers(1024):
        f = build_field(p, m)
        nonzero = np.arange(1, f.q)
        assert np.all(f.pow_idx(nonzero, f.q - 1) == 1)
        # table route agrees with the polynomial route on a sample
        for i in range(1, f.q, max(1, f.q // 5)):
            assert f.pow(f.from_index(i), f.q - 1) == f.one


def test_psi_additive_exhaustively_small():
    for p, m in prime_powers(256):
        big = build_field(p, m)
        for a in divisors(m):
            if p**a > 16:
                continue
            small = build_field(p, a)
            psi = psi_embedding_idx(small, big)
            i = np.arange(small.q)
            lhs = psi[small.add_idx(i[:, None], i[None, :])]
            rhs = big.add_idx(psi[:, None], psi[None, :])
            assert np.array_equal(lhs, rhs), (p, a, m)
            lhs = psi[small.mul_idx(i[:, None], i[None, :])]
            rhs = big.mul_idx(psi[:, None], psi[None, :])
            assert np.array_equal(lhs, rhs), (p, a, m)


def test_discrete_log_round_trip():
    for p, m in [(2, 6), (3, 4), (5, 3), (31, 1)]:
        f = build_field(p, m)
        for x in f.elements()[1:]:
            assert f.pow(f.omega, f.discrete_log(x)) == x


def test_subfield_views_agree_for_all_divisors():
    for p, m in prime_powers(1024):
        f = build_field(p, m)
        for a in divisors(m):
            sub = subfield(f, a)  # raises if fixed points differ from {0} u <alpha>
            assert len(sub) == p**a
            assert f.pow(sub.alpha, p**a - 1) == f.one


def test_omega_has_full_order():
    for p, m in prime_powers(300):
        f = build_field(p, m)
        assert f.multiplicative_order(f.omega) == f.q - 1
        assert sorted(f.exp_idx.tolist()) == list(range(1, f.q))


def test_descriptor_json(f9):
    assert json.loads(f9.to_json()) == {"p": 3, "m": 2, "modulus": [1, 0, 1], "omega": [1, 1]}
    assert f9.to_json() == build_field(3, 2).to_json()


def test_parse_modulus():
    assert parse_modulus("x^4+x+1") == [1, 1, 0, 0, 1]
    assert parse_modulus("1,1,0,0,1") == [1, 1, 0, 0, 1]
    assert parse_modulus("x^2 + 2x + 2") == [2, 2, 1]


def test_labels(f9):
    assert f9.element([1, 2]).label() == "2a+1"
    assert f9.zero.label() == "0"
    assert str(build_field(2, 3).element([1, 0, 1])) == "a^2+1"


def test_multiplicative_order_helper():
    assert multiplicative_order(3, 4) == 2
    assert multiplicative_order(2, 5) == 4
    assert multiplicative_order(5, 1) == 1


FIELDS = [(2, 4), (3, 3), (5, 2), (7, 2), (2, 7)]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms_random(pm, data):
    f = build_field(*pm)
    x, y, z = (f.from_index(data.draw(st.integers(0, f.q - 1))) for _ in range(3))
    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
    assert f.add(x, f.neg(x)) == f.zero
    if not x.is_zero():
        assert f.mul(x, f.inv(x)) == f.one
    # table arithmetic agrees with polynomial arithmetic
    ix, iy = f.index(x), f.index(y)
    assert int(f.mul_idx(ix, iy)) == f.index(f.mul(x, y))
    assert int(f.add_idx(ix, iy)) == f.index(f.add(x, y))
    assert int(f.sub_idx(ix, iy)) == f.index(f.sub(x, y))
    e = data.draw(st.integers(1, 3 * f.q))
    assert int(f.pow_idx(ix, e)) == f.index(f.pow(x, e))
    assert f.frobenius(f.add(x, y)) == f.add(f.frobenius(x), f.frobenius(y))


def test_frobenius_period_is_m():
    f = build_field(3, 3)
    for x in f.elements():
        assert f.frobenius(x, 3) == x


