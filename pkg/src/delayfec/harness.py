"""Packet-loss-probability experiments and capability verification.

PLP runs use the horizontal schedule: the channel sequence is cut into
cycles of ``n`` packets (``k`` information then ``n - k`` parity); a trailing
partial cycle is not transmitted.  All lanes of a cycle share the packet
erasure mask, so each distinct mask is decoded once and cached.
"""
from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import _kernels
from .channel import GEParams, SlidingWindowSpec, enumerate_sliding_window, ge_generate
from .code import CodeParams, ParameterError, build_generator, derive_params
from .decoder import decode_pattern
from .galois import smallest_prime_at_least

CSV_HEADER = ("scheme", "N", "B", "T", "q", "alpha", "beta", "eps0", "eps1",
              "channel_len", "seed", "info_packets", "lost_packets", "plp", "ci95")

Z95 = 1.959963984540054


@dataclass(frozen=True)
class Scheme:
    """A code under test.

    ``kind == "new"``: the burst/arbitrary code with ``params``.
    ``kind == "mds"``: systematic ``(n, k)`` MDS block code; an information
    packet is lost iff its block has more than ``n - k`` erasures (worst-case
    delay ``n - 1 <= T``).
    """

    name: str
    kind: str
    n: int
    k: int
    T: int
    params: CodeParams | None = None
    sweep: bool = True

    @property
    def N(self) -> int:
        return self.params.N if self.params else self.n - self.k

    @property
    def B(self) -> int:
        return self.params.B if self.params else self.n - self.k

    @property
    def q(self) -> int:
        return self.params.q if self.params else smallest_prime_at_least(self.n)

    @property
    def description(self) -> str:
        if self.kind == "mds":
            return f"MDS({self.n},{self.k}) block decoding, T={self.T}"
        mode = "maximal (completion sweep)" if self.sweep else "structured only"
        return f"new code N={self.N} B={self.B} T={self.T}, {mode}"


def new_code(N: int, B: int, T: int, q: int | None = None, sweep: bool = True) -> Scheme:
    params = derive_params(N, B, T, q)
    name = f"new:{N},{B},{T}" + ("" if sweep else "/structured")
    return Scheme(name, "new", params.n, params.k, T, params, sweep)


def mds_code(n: int, k: int, T: int) -> Scheme:
    if not 1 <= k < n:
        raise ParameterError(f"MDS needs 1 <= k < n, got ({n}, {k})")
    if n - 1 > T:
        raise ParameterError(f"MDS({n},{k}) worst-case delay {n - 1} exceeds T={T}")
    return Scheme(f"mds:{n},{k},{T}", "mds", n, k, T)


def parse_scheme(text: str) -> Scheme:
    """``new:N,B,T`` or ``mds:n,k,T`` (an optional ``/structured`` suffix disables the sweep)."""
    text = text.strip()
    sweep = True
    if text.endswith("/structured"):
        text, sweep = text[: -len("/structured")], False
    kind, _, rest = text.partition(":")
    try:
        a, b, c = (int(v) for v in rest.split(","))
    except ValueError as exc:
        raise ParameterError(f"bad scheme descriptor {text!r}") from exc
    if kind == "new":
        return new_code(a, b, c, sweep=sweep)
    if kind == "mds":
        return mds_code(a, b, c)
    raise ParameterError(f"unknown scheme kind {kind!r}")


@dataclass(frozen=True)
class PLPReport:
    scheme: str
    N: int
    B: int
    T: int
    q: int
    ge: GEParams
    channel_len: int
    seed: int
    info_packets: int
    lost_packets: int
    plp: float
    ci95: float

    def row(self) -> list[str]:
        return [self.scheme, str(self.N), str(self.B), str(self.T), str(self.q),
                repr(self.ge.alpha), repr(self.ge.beta), repr(self.ge.eps0), repr(self.ge.eps1),
                str(self.channel_len), str(self.seed), str(self.info_packets),
                str(self.lost_packets), repr(self.plp), repr(self.ci95)]


@lru_cache(maxsize=None)
def _generator(params: CodeParams):
    return build_generator(params)


@lru_cache(maxsize=1 << 20)
def _lost_for_mask(params: CodeParams, sweep: bool, mask: int) -> int:
    pattern = [(mask >> j) & 1 for j in range(params.n)]
    return decode_pattern(pattern, params, _generator(params), sweep=sweep).lost_count


def cycle_losses(scheme: Scheme, erasures: np.ndarray) -> np.ndarray:
    """Lost information packets per complete cycle of ``erasures``."""
    n, k = scheme.n, scheme.k
    cycles = len(erasures) // n
    bits = np.asarray(erasures[: cycles * n], dtype=np.uint8).reshape(cycles, n)
    if scheme.kind == "mds":
        # erased info packets are lost iff the block has more than n-k erasures
        erased_info = bits[:, :k].sum(axis=1, dtype=np.int64)
        return np.where(bits.sum(axis=1) > n - k, erased_info, 0)
    if n <= 62:
        weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
        keys = bits.astype(np.int64) @ weights
        uniq, inverse = np.unique(keys, return_inverse=True)
        lost = np.array([_lost_for_mask(scheme.params, scheme.sweep, int(m)) for m in uniq],
                        dtype=np.int64)
    else:
        uniq, inverse = np.unique(bits, axis=0, return_inverse=True)
        G = _generator(scheme.params)
        lost = np.array([decode_pattern(row, scheme.params, G, sweep=scheme.sweep).lost_count
                         for row in uniq], dtype=np.int64)
    return lost[inverse.reshape(-1)]


def run_plp(scheme: Scheme, ge: GEParams, channel_len: int, seed: int) -> PLPReport:
    """One channel realisation through one scheme.

    The confidence half-width uses the per-cycle loss fractions, so losses
    correlated within a block are not double counted.
    """
    if channel_len < scheme.n:
        raise ValueError(f"channel_len={channel_len} shorter than one block (n={scheme.n})")
    erasures = ge_generate(ge, channel_len, seed)
    per_cycle = cycle_losses(scheme, erasures)
    cycles = len(per_cycle)
    info = cycles * scheme.k
    lost = int(per_cycle.sum())
    plp = lost / info
    if cycles > 1:
        frac = per_cycle / scheme.k
        ci = Z95 * float(np.std(frac, ddof=1)) / math.sqrt(cycles)
    else:
        ci = 0.0
    return PLPReport(scheme.name, scheme.N, scheme.B, scheme.T, scheme.q, ge, channel_len,
                     int(seed), info, lost, plp, ci)


def cell_seed(master_seed: int, scheme_index: int, eps_index: int) -> int:
    """Per-cell seed: SplitMix64 output number ``(scheme_index << 32) | eps_index`` of ``master_seed``."""
    return _kernels.splitmix64(master_seed & 0xFFFFFFFFFFFFFFFF, (scheme_index << 32) | eps_index)


def _run_cell(args):
    scheme, ge, channel_len, seed = args
    return run_plp(scheme, ge, channel_len, seed)


def sweep(schemes, ge_base: GEParams, eps_list, channel_len: int, master_seed: int,
          workers: int = 1) -> list[PLPReport]:
    """Run every (scheme, eps0) cell; rows ordered by (scheme, eps) input order."""
    schemes = list(schemes)
    eps_list = list(eps_list)
    if not schemes or not eps_list:
        raise ValueError("need at least one scheme and one eps0 value")
    jobs = []
    for si, sch in enumerate(schemes):
        for ei, eps in enumerate(eps_list):
            ge = replace(ge_base, eps0=float(eps))
            jobs.append(((si, ei), (sch, ge, channel_len, cell_seed(master_seed, si, ei))))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, [j[1] for j in jobs]))
    else:
        results = [_run_cell(j[1]) for j in jobs]
    keyed = sorted(zip((j[0] for j in jobs), results), key=lambda kv: kv[0])
    return [r for _, r in keyed]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


# ----------------------------------------------------------------------------
# Capability verification
# ----------------------------------------------------------------------------

@dataclass
class FamilyReport:
    """``violations`` counts patterns inside the family's guaranteed scope
    that were not fully recovered; ``delay_violations`` counts recovered
    symbols with delay above T (always expected to be zero)."""

    name: str
    patterns: int = 0
    full: int = 0
    partial: int = 0
    violations: int = 0
    delay_violations: int = 0
    strict_delay_violations: int = 0
    n2_violations: int = 0
    notice: str = ""

    def line(self) -> str:
        s = (f"{self.name}: patterns={self.patterns} full={self.full} partial={self.partial} "
             f"violations={self.violations} delay_violations={self.delay_violations}")
        if self.name == "case1":
            s += f" delay_ge_T={self.strict_delay_violations}"
        if self.name == "case3":
            s += f" n2_gt_2N'={self.n2_violations}"
        if self.notice:
            s += f" [{self.notice}]"
        return s


@dataclass
class CapabilityReport:
    params: CodeParams
    families: list[FamilyReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(f.violations == 0 and f.delay_violations == 0 and f.n2_violations == 0
                   and f.strict_delay_violations == 0 for f in self.families)

    def lines(self) -> list[str]:
        return [f"capability {self.params}"] + [f.line() for f in self.families]


def _mask(n, positions):
    m = [0] * n
    for j in positions:
        m[j] = 1
    return tuple(m)


def case1_patterns(params: CodeParams):
    """Up to N erasures anywhere in the first k+N positions; yields ``(mask, None)``."""
    from itertools import combinations
    n, span = params.n, params.k + params.N
    for w in range(params.N + 1):
        for pos in combinations(range(span), w):
            yield _mask(n, pos), None


def case2_patterns(params: CodeParams):
    """Single bursts of length 1..B anywhere; yields ``(mask, guaranteed)``."""
    n, B = params.n, params.B
    limit = B if params.r == 0 else min(B, params.N + params.r)
    for b in range(1, B + 1):
        for s in range(n - b + 1):
            yield _mask(n, range(s, s + b)), b <= limit


def case3_patterns(params: CodeParams):
    """Burst of length <= B inside the non-urgent message symbols plus
    ``N' <= N/2`` erasures outside the urgent symbols; yields ``(mask, N')``."""
    from itertools import combinations
    n, k, B, N = params.n, params.k, params.B, params.N
    for b in range(1, B + 1):
        for s in range(B - 1, k - b + 1):
            others = [j for j in range(B - 1, n) if not s <= j < s + b]
            for extra in range(1, N // 2 + 1):
                for pos in combinations(others, extra):
                    yield _mask(n, list(range(s, s + b)) + list(pos)), extra


def _budgeted(items, budget, rng):
    items = list(items)
    if len(items) <= budget:
        return items, ""
    return rng.sample(items, budget), f"sampled {budget} of {len(items)} patterns"


def capability_report(params: CodeParams, *, max_patterns: int = 200_000,
                      exhaustive_n: int = 14, sliding_window: bool = False,
                      seed: int = 0) -> CapabilityReport:
    """Check the guaranteed-correction families against the decoder.

    Families are enumerated exhaustively unless one exceeds ``max_patterns``,
    in which case a seeded sample is taken and a truncation notice is set.
    The sliding-window family is only enumerated when ``n <= exhaustive_n``.
    """
    G = _generator(params)
    T, k = params.T, params.k
    rng = random.Random(seed)
    rep = CapabilityReport(params)

    def run(name, items, guarantee):
        fam = FamilyReport(name)
        items, fam.notice = _budgeted(items, max_patterns, rng)
        for mask, extra in items:
            out = decode_pattern(mask, params, G)
            fam.patterns += 1
            erased_info = any(mask[:k])
            if out.lost_count == 0:
                fam.full += 1
            else:
                fam.partial += 1
                if guarantee(mask, extra):
                    fam.violations += 1
            delays = [s.delay for s in out.symbols if s.delay is not None]
            fam.delay_violations += sum(d > T for d in delays)
            if name == "case1" and erased_info:
                fam.strict_delay_violations += sum(d >= T for d in delays)
            if name == "case3" and out.phase2_load > 2 * extra:
                fam.n2_violations += 1
        rep.families.append(fam)

    run("case1", case1_patterns(params), lambda m, e: True)
    run("case2", case2_patterns(params), lambda m, g: g)
    if params.B and params.N >= 2:
        run("case3", case3_patterns(params), lambda m, e: True)
    if sliding_window:
        if params.n <= exhaustive_n:
            spec = SlidingWindowSpec.for_delay(min(params.N, params.B), params.B, params.T)
            patterns = ((m, None) for m in enumerate_sliding_window(spec, params.n))
            run("sliding_window", patterns, lambda m, e: False)
        else:
            rep.families.append(FamilyReport("sliding_window", notice=f"skipped: n={params.n} > {exhaustive_n}"))
    return rep
