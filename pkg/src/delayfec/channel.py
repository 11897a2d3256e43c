"""Packet-erasure sources: Gilbert-Elliot channel and pattern enumerators.

Random numbers come from a counter-based SplitMix64 so sequences are
bit-reproducible in any language::

    GAMMA = 0x9E3779B97F4A7C15
    z  = seed + (c + 1) * GAMMA                  (mod 2^64)
    z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9    (mod 2^64)
    z  = (z ^ (z >> 27)) * 0x94D049BB133111EB    (mod 2^64)
    z ^= z >> 31
    U(c) = (z >> 11) * 2^-53

At step ``t`` (0-based) the channel erases iff ``U(2t) < eps`` for the current
state, then moves GOOD->BAD iff ``U(2t+1) < alpha`` or BAD->GOOD iff
``U(2t+1) < beta``.  The chain starts in GOOD.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class GEParams:
    alpha: float
    beta: float
    eps0: float
    eps1: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "eps0", "eps1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} is not a probability")

    @property
    def bad_fraction(self) -> float:
        """Stationary probability of the BAD state, ``alpha / (alpha + beta)``."""
        if self.alpha + self.beta == 0:
            return 0.0
        return self.alpha / (self.alpha + self.beta)

    def occupancy_stderr(self, length: int) -> float:
        """Asymptotic standard error of the empirical BAD-state fraction.

        Accounts for the chain's lag-one correlation ``1 - alpha - beta``.
        """
        pi = self.bad_fraction
        lam = 1.0 - self.alpha - self.beta
        return float(np.sqrt(pi * (1 - pi) * (1 + lam) / (1 - lam) / length))


def ge_generate_states(p: GEParams, length: int, seed: int):
    """Erasure flags and BAD-state flags (both uint8 arrays of ``length``)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    return _kernels.ge_chain(int(seed) & 0xFFFFFFFFFFFFFFFF, int(length),
                             float(p.alpha), float(p.beta), float(p.eps0), float(p.eps1))


def ge_generate(p: GEParams, length: int, seed: int) -> np.ndarray:
    """0/1 erasure sequence of ``length`` from the Gilbert-Elliot channel."""
    return ge_generate_states(p, length, seed)[0]


def to_rle(seq) -> str:
    """``[0,0,1] -> "0x2,1x1"``."""
    out = []
    for v, run in itertools.groupby(int(b) for b in seq):
        out.append(f"{v}x{sum(1 for _ in run)}")
    return ",".join(out)


_RLE_TOKEN = re.compile(r"^([01])x(\d+)$")


def from_rle(text: str) -> np.ndarray:
    parts = []
    for tok in text.strip().split(","):
        if not tok:
            continue
        m = _RLE_TOKEN.match(tok.strip())
        if not m:
            raise ValueError(f"bad run-length token {tok!r}")
        parts.append(np.full(int(m.group(2)), int(m.group(1)), dtype=np.uint8))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)


# ----------------------------------------------------------------------------
# Deterministic pattern families
# ----------------------------------------------------------------------------

def enumerate_bursts(burst: int, n: int) -> list[tuple[int, ...]]:
    """All length-``n`` masks with exactly one run of ``burst`` erasures."""
    if not 1 <= burst <= n:
        raise ValueError(f"need 1 <= burst <= n, got burst={burst}, n={n}")
    out = []
    for s in range(n - burst + 1):
        m = [0] * n
        m[s:s + burst] = [1] * burst
        out.append(tuple(m))
    return out


def enumerate_burst_plus_arbitrary(burst: int, extra: int, n: int) -> list[tuple[int, ...]]:
    """Masks made of one maximal run of exactly ``burst`` plus ``extra`` further erasures.

    The further erasures never touch the run (it stays maximal).  Masks
    reachable from several burst placements are listed once.
    """
    if burst < 1 or extra < 0 or burst + extra > n:
        raise ValueError(f"invalid (burst, extra, n) = ({burst}, {extra}, {n})")
    seen = set()
    out = []
    for s in range(n - burst + 1):
        free = [j for j in range(n) if j < s - 1 or j > s + burst]
        for extra_pos in itertools.combinations(free, extra):
            m = [0] * n
            m[s:s + burst] = [1] * burst
            for j in extra_pos:
                m[j] = 1
            t = tuple(m)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


@dataclass(frozen=True)
class SlidingWindowSpec:
    N: int
    B: int
    W: int

    def __post_init__(self):
        if not 0 <= self.N <= self.B <= self.W or self.W < 1:
            raise ValueError(f"need 0 <= N <= B <= W, W >= 1; got {self}")

    @classmethod
    def for_delay(cls, N: int, B: int, T: int) -> "SlidingWindowSpec":
        """Window ``W = T + 1``."""
        return cls(N, B, T + 1)


def window_admissible(window, N: int, B: int) -> bool:
    """One run of at most ``B`` erasures, or at most ``N`` erasures in total."""
    ones = [j for j, v in enumerate(window) if v]
    if len(ones) <= N:
        return True
    return len(ones) <= B and ones[-1] - ones[0] + 1 == len(ones)


def enumerate_sliding_window(spec: SlidingWindowSpec, n: int) -> list[tuple[int, ...]]:
    """Every length-``n`` mask the channel C(N, B, W) can produce.

    Depth-first over positions; a prefix is dropped as soon as its trailing
    window is inadmissible (admissibility is inherited by sub-windows).
    """
    w = min(spec.W, n)
    out: list[tuple[int, ...]] = []
    mask = [0] * n

    def rec(t: int) -> None:
        if t == n:
            out.append(tuple(mask))
            return
        for v in (0, 1):
            mask[t] = v
            if window_admissible(mask[max(0, t + 1 - w):t + 1], spec.N, spec.B):
                rec(t + 1)
        mask[t] = 0

    rec(0)
    return out
