"""Pure Python / numpy fallback for the hot kernels.

Must stay bit-identical to ``_ckernels.pyx``; ``tests/test_kernels.py`` runs
both on the same inputs.
"""
from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1
INV_2_53 = 1.0 / (1 << 53)

_CHUNK = 1 << 20


def splitmix64(seed: int, counter: int) -> int:
    """Counter-based SplitMix64: the ``counter``-th output for ``seed``."""
    z = (seed + (counter + 1) * GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def _uniforms(seed: int, start: int, count: int, stride: int, offset: int) -> np.ndarray:
    # uniforms for counters start*stride+offset, (start+1)*stride+offset, ...
    with np.errstate(over="ignore"):
        ctr = np.arange(start, start + count, dtype=np.uint64) * np.uint64(stride)
        ctr += np.uint64(offset + 1)
        z = np.uint64(seed & MASK64) + ctr * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * INV_2_53


def ge_chain(seed: int, length: int, alpha: float, beta: float, eps0: float, eps1: float):
    """Simulate the two-state chain; returns ``(erased, bad)`` uint8 arrays.

    Step ``t`` draws counter ``2t`` for the erasure decision and ``2t+1``
    for the transition.  The chain starts GOOD.
    """
    erased = np.empty(length, dtype=np.uint8)
    bad = np.empty(length, dtype=np.uint8)
    state = 0
    for start in range(0, length, _CHUNK):
        count = min(_CHUNK, length - start)
        trans = _uniforms(seed, start, count, 2, 1)
        to_bad = np.flatnonzero(trans < alpha)
        to_good = np.flatnonzero(trans < beta)
        states = bad[start:start + count]
        t = 0
        # walk state runs: jump to the next step whose draw flips the state
        while t < count:
            flips = to_bad if state == 0 else to_good
            idx = np.searchsorted(flips, t)
            stop = int(flips[idx]) + 1 if idx < len(flips) else count
            states[t:stop] = state
            t = stop
            if idx < len(flips):
                state ^= 1
        u = _uniforms(seed, start, count, 2, 0)
        thresh = np.where(states == 1, eps1, eps0)
        erased[start:start + count] = u < thresh
    return erased, bad


def prefix_recovery(columns, y, erased, deadlines, pending, p: int, scan_all: bool = True):
    """Incremental elimination over received positions in index order.

    ``columns[j]`` is generator column ``j`` (length k); ``y[j]`` its received
    value.  For every pending message index ``i`` find the first position
    ``j <= deadlines[i]`` such that ``u_i`` is determined by the received
    symbols at positions ``0..j``.

    Returns ``(found_at, values, consistent)``; ``found_at[i] == -1`` if not
    determined within the deadline.
    """
    k = len(deadlines)
    found_at = [-1] * k
    values = [0] * k
    waiting = {i for i in range(k) if pending[i]}
    basis: dict[int, list[int]] = {}  # pivot -> row of length k+1 (rhs last)
    consistent = True
    last = len(y) - 1
    if not scan_all:
        last = max((deadlines[i] for i in waiting), default=-1)
    for j in range(last + 1):
        if not waiting and not scan_all:
            break
        if erased[j]:
            continue
        v = [int(c) % p for c in columns[j]]
        v.append(int(y[j]) % p)
        for piv, row in basis.items():
            f = v[piv]
            if f:
                for t in range(k + 1):
                    if row[t]:
                        v[t] = (v[t] - f * row[t]) % p
        piv = next((t for t in range(k) if v[t]), -1)
        if piv < 0:
            if v[k]:
                consistent = False
            continue
        f = pow(v[piv], p - 2, p)
        v = [(c * f) % p for c in v]
        for row in basis.values():
            g = row[piv]
            if g:
                for t in range(k + 1):
                    if v[t]:
                        row[t] = (row[t] - g * v[t]) % p
        basis[piv] = v
        if waiting:
            done = []
            for i in waiting:
                if deadlines[i] < j:
                    done.append(i)
                    continue
                row = basis.get(i)
                if row is not None and not any(row[t] for t in range(k) if t != i):
                    found_at[i] = j
                    values[i] = row[k]
                    done.append(i)
            waiting.difference_update(done)
    return found_at, values, consistent
