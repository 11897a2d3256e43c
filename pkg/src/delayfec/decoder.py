"""Delay-constrained erasure decoding.

:func:`decode` runs the structured fast path (RS shortcut, urgent pass,
interleaved-check phase, RS phase) and then a completion sweep that recovers
every message symbol determined by the received prefix up to its deadline.
:func:`oracle_recoverable` answers the same question by a plain rank test and
shares no code with the decoder.

Delay bookkeeping: every known message symbol carries ``avail``, the
right-most codeword position its value was computed from (transitively).  A
symbol counts as recovered only if ``avail <= deadline``; its delay is
``avail - i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .code import CodeParams, GeneratorMatrix


class IntegrityError(ValueError):
    """Received symbols are not the restriction of any codeword."""


class CapacityError(ValueError):
    """More unknowns than RS parities can resolve."""


class Status(str, Enum):
    RECEIVED = "RECEIVED"
    RECOVERED = "RECOVERED"
    LOST = "LOST"


class Phase(str, Enum):
    RS_SHORTCUT = "RS_SHORTCUT"
    URGENT = "URGENT"
    PHASE1 = "PHASE1"
    PHASE2 = "PHASE2"
    SWEEP = "SWEEP"


@dataclass(frozen=True)
class SymbolOutcome:
    status: Status
    delay: int | None = None
    phase: Phase | None = None


@dataclass(frozen=True)
class DecodeOutcome:
    """Per message position (index 0 is ``u_1``) status and recovered value."""

    symbols: tuple[SymbolOutcome, ...]
    message: tuple[int | None, ...]
    phase2_load: int
    field_ops: int

    def recovered_positions(self) -> set[int]:
        """1-based message positions known by their deadline (received or recovered)."""
        return {i + 1 for i, s in enumerate(self.symbols) if s.status is not Status.LOST}

    def lost_positions(self) -> set[int]:
        return {i + 1 for i, s in enumerate(self.symbols) if s.status is Status.LOST}

    @property
    def lost_count(self) -> int:
        return sum(s.status is Status.LOST for s in self.symbols)

    @property
    def max_delay(self) -> int:
        return max((s.delay for s in self.symbols if s.delay is not None), default=0)


def deadline(i: int, params: CodeParams) -> int:
    """Last 1-based position that may be used to recover position ``i``."""
    if not 1 <= i <= params.n:
        raise ValueError(f"position {i} outside 1..{params.n}")
    return min(i + params.T, params.n)


def parse_received(text: str) -> list[int | None]:
    """Parse ``"1,2,?,?,4,2"``; ``?`` marks an erasure."""
    out: list[int | None] = []
    for tok in text.strip().split(","):
        tok = tok.strip()
        if tok == "?":
            out.append(None)
        else:
            try:
                out.append(int(tok))
            except ValueError as exc:
                raise ValueError(f"bad received symbol {tok!r}") from exc
    return out


def apply_erasures(codeword, pattern) -> list[int | None]:
    """Replace positions with ``pattern[j] == 1`` by ``None``."""
    if len(codeword) != len(pattern):
        raise ValueError("pattern length does not match codeword length")
    return [None if e else int(x) for x, e in zip(codeword, pattern)]


def pattern_from_positions(positions, n: int) -> tuple[int, ...]:
    """0/1 mask of length ``n`` from 1-based erased positions."""
    mask = [0] * n
    for j in positions:
        if not 1 <= j <= n:
            raise ValueError(f"position {j} outside 1..{n}")
        mask[j - 1] = 1
    return tuple(mask)


# ----------------------------------------------------------------------------
# Rank-test oracle (independent of the decoder)
# ----------------------------------------------------------------------------

def _rank_mod(vectors: list[list[int]], p: int) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def oracle_recoverable(pattern, i: int, params: CodeParams, G: GeneratorMatrix) -> bool:
    """True iff ``e_i`` lies in the span of the unerased columns of ``G`` up to ``deadline(i)``.

    ``pattern`` is the 0/1 erasure mask of length n; ``i`` is 1-based.
    """
    if not 1 <= i <= params.k:
        raise ValueError(f"message position {i} outside 1..{params.k}")
    if len(pattern) != params.n:
        raise ValueError(f"pattern length {len(pattern)} != n={params.n}")
    last = deadline(i, params)
    cols = [list(G.columns[j]) for j in range(last) if not pattern[j]]
    if not cols:
        return False
    unit = [1 if t == i - 1 else 0 for t in range(params.k)]
    p = params.q
    return _rank_mod(cols, p) == _rank_mod(cols + [unit], p)


# ----------------------------------------------------------------------------
# Punctured RS (Cauchy) solving
# ----------------------------------------------------------------------------

def cauchy_inverse(x, y, p: int) -> list[list[int]]:
    """Inverse of the square Cauchy matrix ``C[s][t] = 1/(x_s - y_t)`` over GF(p).

    Closed form in O(m^2) multiplications plus m^2 inversions.
    """
    m = len(x)
    Ay = []  # prod_l (y_s - x_l)
    By = []  # prod_{l != s} (y_s - y_l)
    for s in range(m):
        a = b = 1
        for l in range(m):
            a = a * (y[s] - x[l]) % p
            if l != s:
                b = b * (y[s] - y[l]) % p
        Ay.append(a)
        By.append(b)
    Bx = []  # prod_l (x_t - y_l)
    Ax = []  # prod_{l != t} (x_t - x_l)
    for t in range(m):
        a = b = 1
        for l in range(m):
            b = b * (x[t] - y[l]) % p
            if l != t:
                a = a * (x[t] - x[l]) % p
        Bx.append(b)
        Ax.append(a)
    inv = [[0] * m for _ in range(m)]
    for s in range(m):
        for t in range(m):
            den = (y[s] - x[t]) * Ax[t] * By[s] % p
            inv[s][t] = Ay[s] * Bx[t] * pow(den, p - 2, p) % p
    return inv


class _OpCounter:
    __slots__ = ("ops",)

    def __init__(self):
        self.ops = 0


def _rs_solve(G: GeneratorMatrix, unknown, known_val, parity_vals, parity_idx, ctr: _OpCounter):
    """Solve message indices ``unknown`` from RS parities ``parity_idx`` (0-based j).

    ``known_val[i]`` holds every other message value.  Uses exactly
    ``len(unknown)`` parities.
    """
    params = G.params
    k, p = params.k, params.q
    m = len(unknown)
    used = parity_idx[:m]
    unknown_set = set(unknown)
    rhs = []
    for j in used:
        acc = parity_vals[j]
        for i in range(k):
            if i not in unknown_set:
                acc -= G.rows[i][k + j] * known_val[i]
        rhs.append(acc % p)
        ctr.ops += 2 * (k - m)
    # sum_s u_s / (a_s - b_t) = rhs_t  <=>  C u = -rhs with C[t][s] = 1/(b_t - a_s)
    xs = [G.b_points[j] for j in used]
    ys = [G.a_points[i] for i in unknown]
    cinv = cauchy_inverse(xs, ys, p)
    ctr.ops += 6 * m * m
    sol = []
    for s in range(m):
        acc = 0
        for t in range(m):
            acc += cinv[s][t] * rhs[t]
        sol.append((-acc) % p)
        ctr.ops += 2 * m
    return sol, used


def punctured_rs_solve(y, params: CodeParams, G: GeneratorMatrix, unknowns) -> dict[int, int]:
    """Solve up to N unknown positions among ``1..k+N`` of the punctured RS code.

    ``unknowns`` are 1-based positions; all other positions in ``1..k+N``
    must be present in ``y``.  Returns ``{position: value}``.
    """
    k, N, p = params.k, params.N, params.q
    unknowns = sorted(set(unknowns))
    if len(unknowns) > N:
        raise CapacityError(f"{len(unknowns)} unknowns exceed the N={N} RS parities")
    if not unknowns:
        return {}
    if any(not 1 <= j <= k + N for j in unknowns):
        raise ValueError(f"unknowns must lie in 1..{k + N}")
    unk = {j - 1 for j in unknowns}
    for j in range(k + N):
        if j not in unk and y[j] is None:
            raise ValueError(f"position {j + 1} is erased but not listed as unknown")
    info = [i for i in range(k) if i in unk]
    known_val = [0 if i in unk else int(y[i]) for i in range(k)]
    parity_vals = [None if k + j in unk else int(y[k + j]) for j in range(N)]
    parity_idx = [j for j in range(N) if parity_vals[j] is not None]
    out: dict[int, int] = {}
    if info:
        sol, _ = _rs_solve(G, info, known_val, parity_vals, parity_idx, _OpCounter())
        for i, v in zip(info, sol):
            known_val[i] = v
            out[i + 1] = v
    for j in range(N):
        if k + j in unk:
            out[k + j + 1] = sum(G.rows[i][k + j] * known_val[i] for i in range(k)) % p
    return out


# ----------------------------------------------------------------------------
# Decoder
# ----------------------------------------------------------------------------

def decode(y, params: CodeParams, G: GeneratorMatrix, *, sweep: bool = True,
           check: bool = True) -> DecodeOutcome:
    """Decode one received word (``None`` marks an erasure).

    ``sweep=False`` gives the structured decoder alone.  ``check=False``
    skips the codeword-consistency test (the harness decodes the all-zero
    word and does not need it).
    """
    k, N, B, T, n, p = params.k, params.N, params.B, params.T, params.n, params.q
    if len(y) != n:
        raise ValueError(f"expected n={n} symbols, got {len(y)}")
    erased = [v is None for v in y]
    for v in y:
        if v is not None and not 0 <= int(v) < p:
            raise ValueError(f"symbol {v} outside GF({p})")

    known = [not erased[i] for i in range(k)]
    val = [0 if erased[i] else int(y[i]) for i in range(k)]
    avail = [i if known[i] else -1 for i in range(k)]
    phase: list[Phase | None] = [None] * k
    dl = [min(i + T, n - 1) for i in range(k)]
    ctr = _OpCounter()
    parity_vals = [None if erased[k + j] else int(y[k + j]) for j in range(N)]
    parity_idx = [j for j in range(N) if parity_vals[j] is not None]

    def unknowns_in_punctured() -> int:
        return known.count(False) + (N - len(parity_idx))

    def rs_pass(tag: Phase) -> None:
        unk = [i for i in range(k) if not known[i]]
        if not unk:
            return
        sol, used = _rs_solve(G, unk, val, parity_vals, parity_idx, ctr)
        a = max(max(k + j for j in used), max((avail[i] for i in range(k) if known[i]), default=-1))
        for i, v in zip(unk, sol):
            known[i], val[i], avail[i], phase[i] = True, v, a, tag

    def check_pass(c: int, tag: Phase) -> bool:
        pos = k + N + c
        if erased[pos]:
            return False
        sup = G.check_supports[c]
        missing = [i for i in sup if not known[i]]
        if len(missing) != 1:
            return False
        i = missing[0]
        acc = int(y[pos])
        a = pos
        for l in sup:
            if l != i:
                acc -= val[l]
                a = max(a, avail[l])
        ctr.ops += len(sup)
        known[i], val[i], avail[i], phase[i] = True, acc % p, a, tag
        return True

    n2 = 0
    if known.count(False):
        if unknowns_in_punctured() <= N:
            rs_pass(Phase.RS_SHORTCUT)
        else:
            done = False
            for i in range(B - 1):
                if not known[i] and check_pass(G.check_of(i), Phase.URGENT):
                    if unknowns_in_punctured() <= N:
                        rs_pass(Phase.RS_SHORTCUT)
                        done = True
                        break
            if not done:
                for c in range(B):
                    check_pass(c, Phase.PHASE1)
                n2 = known.count(False)
                if n2 and unknowns_in_punctured() <= N:
                    rs_pass(Phase.PHASE2)

    symbols: list[SymbolOutcome | None] = [None] * k
    message: list[int | None] = [None] * k
    pending = [0] * k
    for i in range(k):
        if not erased[i]:
            symbols[i] = SymbolOutcome(Status.RECEIVED, 0)
            message[i] = val[i]
        elif known[i] and avail[i] <= dl[i]:
            symbols[i] = SymbolOutcome(Status.RECOVERED, avail[i] - i, phase[i])
            message[i] = val[i]
        else:
            pending[i] = 1

    want_sweep = sweep and any(pending)
    if want_sweep or check:
        yv = np.fromiter((0 if v is None else int(v) for v in y), dtype=np.int64, count=n)
        found, values, consistent = _kernels.prefix_recovery(
            G.columns_array, yv, np.asarray(erased, dtype=np.uint8),
            np.asarray(dl, dtype=np.int64),
            np.asarray(pending if want_sweep else [0] * k, dtype=np.uint8),
            p, check,
        )
        if check and not consistent:
            raise IntegrityError("received symbols are inconsistent with every codeword")
        if want_sweep:
            for i in range(k):
                if pending[i] and found[i] >= 0:
                    symbols[i] = SymbolOutcome(Status.RECOVERED, found[i] - i, Phase.SWEEP)
                    message[i] = values[i]
                    pending[i] = 0
    for i in range(k):
        if symbols[i] is None:
            symbols[i] = SymbolOutcome(Status.LOST)
    return DecodeOutcome(tuple(symbols), tuple(message), n2, ctr.ops)


def decode_pattern(pattern, params: CodeParams, G: GeneratorMatrix, *, sweep: bool = True) -> DecodeOutcome:
    """Outcome statuses for an erasure mask, decoding the all-zero codeword.

    Recoverability and delays depend only on the mask, not on the values.
    """
    y = [None if e else 0 for e in pattern]
    return decode(y, params, G, sweep=sweep, check=False)
