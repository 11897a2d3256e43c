import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from delayfec.code import build_generator, derive_params, encode
from delayfec.decoder import (CapacityError, IntegrityError, Phase, Status, apply_erasures,
                              cauchy_inverse, deadline, decode, decode_pattern, oracle_recoverable,
                              parse_received, pattern_from_positions, punctured_rs_solve)


def _brute_force_recoverable(pattern, i, P, G):
    """u_i is determined by the unerased prefix iff every message that agrees
    with the all-zero codeword there has u_i = 0 (linearity)."""
    stop = deadline(i, P)
    seen = [j for j in range(stop) if not pattern[j]]
    for u in itertools.product(range(P.q), repeat=P.k):
        if u[i - 1] == 0:
            continue
        x = encode(list(u), G)
        if all(x[j] == 0 for j in seen):
            return False
    return True


def _inverse_by_elimination(mat, p):
    m = len(mat)
    aug = [list(row) + [int(i == j) for j in range(m)] for i, row in enumerate(mat)]
    for c in range(m):
        piv = next(r for r in range(c, m) if aug[r][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        s = pow(aug[c][c], p - 2, p)
        aug[c] = [v * s % p for v in aug[c]]
        for r in range(m):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[c])]
    return [row[m:] for row in aug]


def _summary(res):
    return [(i, s.status, s.delay, s.phase) for i, s in enumerate(res.symbols, start=1)
            if s.status is not Status.RECEIVED]


# --- text forms and helpers -------------------------------------------------

def test_parse_received():
    assert parse_received("1, ?,3") == [1, None, 3]
    with pytest.raises(ValueError):
        parse_received("1,a")


def test_deadlines(code_2_4_10):
    P, _ = code_2_4_10
    assert [deadline(i, P) for i in range(1, 9)] == [11, 12, 13, 14, 14, 14, 14, 14]


def test_pattern_from_positions():
    assert pattern_from_positions([1, 3], 4) == (1, 0, 1, 0)
    with pytest.raises(ValueError):
        pattern_from_positions([5], 4)


def test_apply_erasures():
    assert apply_erasures([1, 2, 3], (0, 1, 0)) == [1, None, 3]


# --- single-lane examples --------------------------------------------------

def test_no_erasures(toy):
    P, G = toy
    res = decode([1, 2, 3, 4, 4, 2], P, G)
    assert res.message == (1, 2, 3)
    assert all(s.status is Status.RECEIVED for s in res.symbols)
    assert res.max_delay == 0


def test_third_and_fourth_erased(toy):
    P, G = toy
    res = decode(parse_received("1,2,?,?,4,2"), P, G)
    assert res.message == (1, 2, 3)
    assert _summary(res) == [(3, Status.RECOVERED, 2, Phase.PHASE1)]


def test_urgent_burst(toy):
    # u2 is caught by the punctured-RS re-test right after u1 is recovered
    P, G = toy
    res = decode(parse_received("?,?,3,4,4,2"), P, G)
    assert res.message == (1, 2, 3)
    assert _summary(res) == [(1, Status.RECOVERED, 4, Phase.URGENT),
                             (2, Status.RECOVERED, 3, Phase.RS_SHORTCUT)]


def test_recovery_needs_completion_sweep(toy):
    P, G = toy
    res = decode(parse_received("?,2,?,4,4,2"), P, G)
    assert res.message == (1, 2, 3)
    assert _summary(res) == [(1, Status.RECOVERED, 4, Phase.SWEEP),
                             (3, Status.RECOVERED, 2, Phase.SWEEP)]
    structured = decode(parse_received("?,2,?,4,4,2"), P, G, sweep=False)
    assert structured.lost_positions() == {1, 3}
    assert structured.message == (None, 2, None)


def test_wrong_length(toy):
    P, G = toy
    with pytest.raises(ValueError, match="expected n=6 symbols, got 5"):
        decode([1, 2, 3, 4, 4], P, G)


def test_integrity_error(toy):
    P, G = toy
    with pytest.raises(IntegrityError):
        decode([1, 2, 3, 4, 0, 2], P, G)
    # nothing to cross-check once the redundancy is used up
    assert decode([1, 2, 3, 4, 0, 2], P, G, check=False).message == (1, 2, 3)


def test_out_of_field_symbol(toy):
    P, G = toy
    with pytest.raises(ValueError):
        decode([1, 2, 3, 4, 9, 2], P, G)


# --- burst plus arbitrary erasures, T=10 and T=16 --------------------------------

def _run(N, B, T, q, erased):
    P = derive_params(N, B, T, q)
    G = build_generator(P)
    rng = random.Random(7)
    u = [rng.randrange(q) for _ in range(P.k)]
    x = encode(u, G)
    res = decode(apply_erasures(x, pattern_from_positions(erased, P.n)), P, G)
    recovered = [i for i in range(1, P.k + 1) if res.symbols[i - 1].status is not Status.LOST]
    assert all(res.message[i - 1] == u[i - 1] for i in recovered)
    return res


def _delays(res):
    return {i: s.delay for i, s in enumerate(res.symbols, start=1) if s.status is Status.RECOVERED}


def test_t10_burst_u2_to_u5_plus_u8():
    res = _run(2, 4, 10, 11, [2, 3, 4, 5, 8])
    assert _delays(res) == {2: 10, 3: 10, 4: 9, 5: 6, 8: 5}
    assert res.phase2_load == 2


def test_t10_burst_u4_to_u8_plus_first_parity():
    # u8 is first determined once position 14 arrives, i.e. delay 6
    res = _run(2, 4, 10, 11, [4, 5, 6, 7, 8, 9])
    assert _delays(res) == {4: 10, 5: 6, 6: 6, 7: 6, 8: 6}


def test_t10_urgent_symbol_lost():
    res = _run(2, 4, 10, 11, [1, 2, 3, 4, 5, 11])
    assert res.lost_positions() == {1}
    assert _delays(res) == {2: 10, 3: 10, 4: 10, 5: 9}


def test_t16_burst_plus_two():
    res = _run(4, 4, 16, 17, [4, 5, 6, 7, 10, 12])
    assert res.lost_count == 0
    assert _delays(res)[5] == 12 and _delays(res)[7] == 12
    assert res.max_delay <= 16


def test_t16_burst_plus_five():
    res = _run(4, 4, 16, 17, [1, 2, 3, 7, 11, 13, 14, 20])
    assert _delays(res) == {1: 16, 2: 16, 3: 16, 7: 12, 11: 8}


# --- punctured RS and the closed-form Cauchy inverse -------------------------

def test_punctured_rs_exhaustive(code_2_4_10):
    P, G = code_2_4_10
    rng = random.Random(3)
    span = P.k + P.N
    count = 0
    for w in (1, 2):
        for pos in itertools.combinations(range(1, span + 1), w):
            u = [rng.randrange(P.q) for _ in range(P.k)]
            x = encode(u, G)
            y = apply_erasures(x, pattern_from_positions(pos, P.n))
            got = punctured_rs_solve(y, P, G, list(pos))
            assert got == {j: x[j - 1] for j in pos}
            count += 1
    assert count == 10 + 45


def test_punctured_rs_capacity(code_2_4_10):
    P, G = code_2_4_10
    y = apply_erasures([0] * P.n, pattern_from_positions([1, 2, 3], P.n))
    with pytest.raises(CapacityError):
        punctured_rs_solve(y, P, G, [1, 2, 3])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([5, 11, 17, 67, 257]), st.data())
def test_cauchy_inverse_matches_elimination(p, data):
    m = data.draw(st.integers(1, min(6, p // 2)))
    pts = data.draw(st.lists(st.integers(0, p - 1), min_size=2 * m, max_size=2 * m, unique=True))
    x, y = pts[:m], pts[m:]
    mat = [[pow((xs - yt) % p, p - 2, p) for yt in y] for xs in x]
    assert cauchy_inverse(x, y, p) == _inverse_by_elimination(mat, p)


# --- completeness against independent oracles --------------------------------

def test_rank_oracle_matches_brute_force(toy):
    P, G = toy
    for pat in itertools.product((0, 1), repeat=P.n):
        for i in range(1, P.k + 1):
            assert oracle_recoverable(pat, i, P, G) == _brute_force_recoverable(pat, i, P, G)


@pytest.mark.parametrize("N,B,T", [(1, 2, 4), (2, 3, 7), (1, 3, 6), (2, 2, 6)])
def test_decoder_is_complete(N, B, T):
    P = derive_params(N, B, T)
    G = build_generator(P)
    for pat in itertools.product((0, 1), repeat=P.n):
        res = decode_pattern(pat, P, G)
        expect = {i for i in range(1, P.k + 1) if oracle_recoverable(pat, i, P, G)}
        assert res.recovered_positions() == expect, pat
        assert all(s.delay <= P.T for s in res.symbols if s.delay is not None)


@pytest.mark.parametrize("N,B,T", [(2, 4, 10), (4, 6, 14)])
def test_decoder_is_complete_sampled(N, B, T):
    P = derive_params(N, B, T)
    G = build_generator(P)
    rng = random.Random(11)
    for _ in range(400):
        w = rng.randint(1, P.n // 2)
        pat = pattern_from_positions(rng.sample(range(1, P.n + 1), w), P.n)
        res = decode_pattern(pat, P, G)
        expect = {i for i in range(1, P.k + 1) if oracle_recoverable(pat, i, P, G)}
        assert res.recovered_positions() == expect, pat


def test_structured_mode_is_a_subset():
    P = derive_params(2, 3, 7)
    G = build_generator(P)
    for pat in itertools.product((0, 1), repeat=P.n):
        full = decode_pattern(pat, P, G).recovered_positions()
        part = decode_pattern(pat, P, G, sweep=False).recovered_positions()
        assert part <= full


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(1, 2, 4), (2, 4, 10), (2, 3, 8), (4, 6, 14)]), st.data())
def test_recovered_values_are_correct(nbt, data):
    P = derive_params(*nbt)
    G = build_generator(P)
    u = data.draw(st.lists(st.integers(0, P.q - 1), min_size=P.k, max_size=P.k))
    pat = data.draw(st.lists(st.integers(0, 1), min_size=P.n, max_size=P.n))
    res = decode(apply_erasures(encode(u, G), pat), P, G)
    for i, s in enumerate(res.symbols):
        if s.status is Status.LOST:
            assert res.message[i] is None
        else:
            assert res.message[i] == u[i]
            assert s.delay <= P.T
            assert (s.delay == 0) == (s.status is Status.RECEIVED)
