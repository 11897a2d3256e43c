import itertools
import re
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from delayfec.code import (ParameterError, build_generator, derive_params, encode, format_symbols,
                           interleaved_support, optimal_sliding_window_rate, parse_symbols)
from delayfec.galois import Field

# reference Cauchy blocks for a_i = i-1, b_j = k+j-1
M_T10_Q11 = [(4, 6), (3, 4), (9, 3), (2, 9), (8, 2), (7, 8), (5, 7), (10, 5)]
M_T16_Q17 = [(7, 13, 6, 9), (3, 7, 13, 6), (5, 3, 7, 13), (15, 5, 3, 7), (2, 15, 5, 3),
             (12, 2, 15, 5), (14, 12, 2, 15), (10, 14, 12, 2), (4, 10, 14, 12),
             (11, 4, 10, 14), (8, 11, 4, 10), (16, 8, 11, 4)]


def _det_mod(rows, p):
    # Laplace expansion: slow but shares nothing with the library's elimination
    if len(rows) == 1:
        return rows[0][0] % p
    total = 0
    for j, v in enumerate(rows[0]):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * v * _det_mod(minor, p)
    return total % p


@pytest.mark.parametrize("N,B,T,n,k,q", [(4, 7, 15, 22, 11, 17), (4, 6, 14, 20, 10, 17),
                                         (2, 4, 10, 14, 8, 11), (1, 2, 4, 6, 3, 5)])
def test_derive_params(N, B, T, n, k, q):
    P = derive_params(N, B, T)
    assert (P.n, P.k, P.q) == (n, k, q)


def test_reference_codes_are_rate_half():
    assert derive_params(4, 7, 15).rate == Fraction(1, 2)
    assert derive_params(4, 6, 14).rate == Fraction(1, 2)


def test_quotient_and_remainder():
    P = derive_params(1, 2, 4)
    assert (P.Q, P.r) == (1, 1)
    P = derive_params(2, 4, 10)
    assert (P.Q, P.r) == (2, 0)


@pytest.mark.parametrize("args,msg", [((9, 9, 15), "B+N > T"), ((0, 0, 5), "N + B"),
                                      ((2, 4, 10, 12), "prime"), ((2, 4, 10, 7), "q=7 < T=10")])
def test_derive_params_errors(args, msg):
    with pytest.raises(ParameterError, match=re.escape(msg)):
        derive_params(*args)


def test_k_must_be_positive():
    with pytest.raises(ParameterError):
        derive_params(3, 0, 3)


def test_toy_generator(toy):
    P, G = toy
    assert G.rows == ((1, 0, 0, 3, 1, 0), (0, 1, 0, 2, 0, 1), (0, 0, 1, 4, 1, 0))
    assert [G.cauchy(i, 0) for i in range(3)] == [3, 2, 4]
    assert G.check_supports == ((0, 2), (1,))


def test_checks_for_even_split(code_2_4_10):
    P, G = code_2_4_10
    assert G.check_supports == ((0, 4), (1, 5), (2, 6), (3, 7))


@pytest.mark.parametrize("N,B,T,q,expected", [(2, 4, 10, 11, M_T10_Q11), (4, 4, 16, 17, M_T16_Q17)])
def test_cauchy_block_reference_values(N, B, T, q, expected):
    G = build_generator(derive_params(N, B, T, q))
    got = [tuple(G.cauchy(i, j) for j in range(N)) for i in range(G.k)]
    assert got == expected


def test_encode_toy(toy):
    P, G = toy
    assert encode([1, 2, 3], G) == [1, 2, 3, 4, 4, 2]


def test_encode_rejects_wrong_length(toy):
    with pytest.raises(ValueError):
        encode([1, 2], toy[1])


def test_encode_accepts_field_elements(toy):
    F = Field(5)
    assert encode([F(1), F(2), F(3)], toy[1]) == [1, 2, 3, 4, 4, 2]


@pytest.mark.parametrize("N,B,T", [(1, 2, 4), (2, 4, 10), (2, 3, 7), (3, 3, 9)])
def test_punctured_code_is_mds(N, B, T):
    # every k x k submatrix of the first k+N columns is nonsingular
    P = derive_params(N, B, T)
    G = build_generator(P)
    cols = G.columns[:P.k + P.N]
    for pick in itertools.combinations(range(P.k + P.N), P.k):
        rows = [list(cols[j]) for j in pick]
        assert _det_mod(rows, P.q) != 0


@pytest.mark.parametrize("N,B,T", [(1, 2, 4), (2, 4, 10), (4, 7, 15), (4, 6, 14), (3, 5, 13)])
def test_checks_partition_message(N, B, T):
    P = derive_params(N, B, T)
    seen = sorted(i for c in range(P.B) for i in interleaved_support(P, c))
    assert seen == list(range(P.k))


@pytest.mark.parametrize("N,B,T", [(1, 2, 4), (2, 4, 10), (4, 7, 15), (4, 6, 14), (2, 3, 8)])
def test_short_message_bursts_hit_distinct_checks(N, B, T):
    P = derive_params(N, B, T)
    G = build_generator(P)
    for b in range(1, P.B + 1):
        for s in range(P.k - b + 1):
            owners = [G.check_of(i) for i in range(s, s + b)]
            assert len(set(owners)) == b


def test_sliding_window_rates():
    assert optimal_sliding_window_rate(4, 7, 15) == Fraction(12, 19)
    assert optimal_sliding_window_rate(4, 6, 14) == Fraction(11, 17)
    assert optimal_sliding_window_rate(0, 0, 5) == 1


def test_symbol_text_round_trip():
    assert parse_symbols(" 1, 2,3 ") == [1, 2, 3]
    assert format_symbols([1, None, 3]) == "1,?,3"
    with pytest.raises(ValueError):
        parse_symbols("1,x")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(1, 2, 4), (2, 4, 10), (4, 6, 14), (2, 3, 7)]), st.data())
def test_encode_is_linear(nbt, data):
    P = derive_params(*nbt)
    G = build_generator(P)
    vec = st.lists(st.integers(0, P.q - 1), min_size=P.k, max_size=P.k)
    u, v = data.draw(vec), data.draw(vec)
    c = data.draw(st.integers(0, P.q - 1))
    w = [(a + c * b) % P.q for a, b in zip(u, v)]
    xu, xv = encode(u, G), encode(v, G)
    assert encode(w, G) == [(a + c * b) % P.q for a, b in zip(xu, xv)]
    assert xu[:P.k] == u
