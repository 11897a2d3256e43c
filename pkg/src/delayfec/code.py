"""Code parameters, systematic generator matrix and encoder.

A codeword of the ``(n, k)`` block code with ``k = T - N`` and ``n = T + B``
is laid out as::

    u_1 .. u_k | p_1 .. p_N | p_{N+1} .. p_{N+B}
      message    Cauchy RS     interleaved checks

Positions are 1-based in docs and text formats; everything below is 0-based
internally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .galois import Field, get_field, is_prime, smallest_prime_at_least


class ParameterError(ValueError):
    """Invalid ``(N, B, T, q)`` combination."""


@dataclass(frozen=True)
class CodeParams:
    N: int
    B: int
    T: int
    q: int

    @property
    def k(self) -> int:
        return self.T - self.N

    @property
    def n(self) -> int:
        return self.T + self.B

    @property
    def Q(self) -> int:
        return self.k // self.B if self.B else 0

    @property
    def r(self) -> int:
        return self.k % self.B if self.B else 0

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def field(self) -> Field:
        return get_field(self.q)

    def __str__(self) -> str:
        return (
            f"N={self.N} B={self.B} T={self.T} q={self.q} "
            f"n={self.n} k={self.k} Q={self.Q} r={self.r} rate={self.rate}"
        )


def derive_params(N: int, B: int, T: int, q: int | None = None) -> CodeParams:
    """Validate ``(N, B, T)`` and fill in the derived quantities.

    ``q`` defaults to the smallest prime ``>= T``.
    """
    for name, v in (("N", N), ("B", B), ("T", T)):
        if not isinstance(v, int) or v < 0:
            raise ParameterError(f"{name} must be a non-negative integer, got {v!r}")
    if N + B < 1:
        raise ParameterError("N + B must be at least 1")
    if B + N > T:
        raise ParameterError(f"B+N > T ({B}+{N} > {T})")
    if T - N < 1:
        raise ParameterError("k = T - N must be at least 1")
    if q is None:
        q = smallest_prime_at_least(max(T, 2))
    if not is_prime(q):
        raise ParameterError(f"q={q} is not prime")
    if q < T:
        raise ParameterError(f"q={q} < T={T}")
    return CodeParams(N, B, T, q)


def optimal_sliding_window_rate(N: int, B: int, T: int) -> Fraction:
    """Best achievable rate over the sliding-window channel C(N, B, T+1).

    Reporting only; the construction here has rate ``(T-N)/(T+B)``.
    """
    if min(N, B, T) < 0 or N > T:
        raise ParameterError(f"invalid (N, B, T) = ({N}, {B}, {T})")
    return Fraction(T + 1 - N, T + 1 - N + B)


def interleaved_support(params: CodeParams, c: int) -> list[int]:
    """0-based message indices summed by interleaved check ``c`` (0-based)."""
    k, B, Q, r = params.k, params.B, params.Q, params.r
    rows = [c + m * B for m in range(Q)]
    if c < r:
        rows.append(k - r + c)
    return rows


@dataclass(frozen=True)
class GeneratorMatrix:
    params: CodeParams
    rows: tuple[tuple[int, ...], ...]
    a_points: tuple[int, ...]
    b_points: tuple[int, ...]
    check_supports: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def n(self) -> int:
        return self.params.n

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.rows))

    @cached_property
    def columns_array(self) -> np.ndarray:
        """``(n, k)`` int64 array; row ``j`` is generator column ``j``."""
        return np.asarray(self.columns, dtype=np.int64)

    def cauchy(self, i: int, j: int) -> int:
        """Entry ``m_{i,j}`` of the Cauchy block (0-based)."""
        return self.rows[i][self.params.k + j]

    def check_of(self, i: int) -> int:
        """Interleaved check (0-based) whose support contains message index ``i``."""
        return self._check_of[i]

    @cached_property
    def _check_of(self) -> tuple[int, ...]:
        owner = [-1] * self.params.k
        for c, sup in enumerate(self.check_supports):
            for i in sup:
                owner[i] = c
        return tuple(owner)


def build_generator(params: CodeParams) -> GeneratorMatrix:
    """``[I | Cauchy | interleaved]`` with points ``a_i = i-1`` and ``b_j = k+j-1``."""
    k, N, B, q = params.k, params.N, params.B, params.q
    if q < k + N:
        raise ParameterError(f"GF({q}) has fewer than k+N={k + N} distinct points")
    F = params.field
    a = tuple(range(k))
    b = tuple(range(k, k + N))
    supports = tuple(tuple(interleaved_support(params, c)) for c in range(B))
    rows = []
    for i in range(k):
        row = [0] * params.n
        row[i] = 1
        for j in range(N):
            row[k + j] = F.inv((a[i] - b[j]) % q)
        rows.append(row)
    for c, sup in enumerate(supports):
        for i in sup:
            rows[i][k + N + c] = 1
    return GeneratorMatrix(params, tuple(tuple(r) for r in rows), a, b, supports)


def encode(u, G: GeneratorMatrix) -> list[int]:
    """Systematic encoding ``x = u G``.

    ``u`` may hold ints or :class:`~delayfec.galois.FieldElement`; the result
    is a list of int residues.
    """
    params = G.params
    if len(u) != params.k:
        raise ValueError(f"expected k={params.k} message symbols, got {len(u)}")
    q = params.q
    u = [int(v) for v in u]
    for v in u:
        if not 0 <= v < q:
            raise ValueError(f"symbol {v} outside GF({q})")
    k, N = params.k, params.N
    x = list(u)
    for j in range(N):
        x.append(sum(G.rows[i][k + j] * u[i] for i in range(k)) % q)
    for sup in G.check_supports:
        x.append(sum(u[i] for i in sup) % q)
    return x


def parse_symbols(text: str) -> list[int]:
    """Parse ``"1,2,3"``."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"cannot parse symbol list {text!r}") from exc


def format_symbols(values) -> str:
    return ",".join("?" if v is None else str(int(v)) for v in values)
