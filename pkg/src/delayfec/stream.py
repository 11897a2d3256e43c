"""Block code -> packet stream via horizontal or diagonal interleaving.

Horizontal: every ``k`` information packets (length ``k`` each) are followed
by ``n - k`` parity packets; lane ``j`` of the ``n`` packets of a cycle is a
codeword.  Diagonal: packet ``x[t]`` has length ``n`` and
``(x_1[t], x_2[t+1], ..., x_n[t+n-1])`` is a codeword; times before the
stream start carry zeros.

Times are 1-based.  Packet erasures are all-or-nothing; a received packet is
given as its payload and an erased one as ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .code import CodeParams, GeneratorMatrix, build_generator, encode
from .decoder import DecodeOutcome, Status, decode


class Mode(str, Enum):
    DIAGONAL = "DIAGONAL"
    HORIZONTAL = "HORIZONTAL"


class Kind(str, Enum):
    INFO = "INFO"
    PARITY = "PARITY"
    MIXED = "MIXED"


@dataclass(frozen=True)
class StreamPacket:
    time: int
    payload: tuple[int, ...]
    kind: Kind


@dataclass(frozen=True)
class StreamConfig:
    mode: Mode
    params: CodeParams


@dataclass(frozen=True)
class PacketOutcome:
    """Outcome for one information packet; ``delay`` is in packets."""

    time: int
    status: Status
    delay: int | None
    payload: tuple[int, ...] | None


def _check_payloads(info_packets, k):
    for t, pkt in enumerate(info_packets, start=1):
        if len(pkt) != k:
            raise ValueError(f"info packet {t} has length {len(pkt)}, expected k={k}")


def horizontal_encode(info_packets, cfg: StreamConfig, G: GeneratorMatrix | None = None) -> list[StreamPacket]:
    params = cfg.params
    k, n = params.k, params.n
    G = G or build_generator(params)
    _check_payloads(info_packets, k)
    packets = [tuple(int(v) for v in pkt) for pkt in info_packets]
    if len(packets) % k:
        packets += [(0,) * k] * (k - len(packets) % k)
    out: list[StreamPacket] = []
    for g in range(len(packets) // k):
        group = packets[g * k:(g + 1) * k]
        lanes = [encode([group[a][j] for a in range(k)], G) for j in range(k)]
        base = g * n
        for a in range(n):
            kind = Kind.INFO if a < k else Kind.PARITY
            out.append(StreamPacket(base + a + 1, tuple(lane[a] for lane in lanes), kind))
    return out


def diagonal_encode(info_packets, cfg: StreamConfig, G: GeneratorMatrix | None = None,
                    flush: bool = True) -> list[StreamPacket]:
    """Packets ``x[1..L]`` (plus ``n-1`` zero-info flush packets if ``flush``)."""
    params = cfg.params
    k, n = params.k, params.n
    G = G or build_generator(params)
    _check_payloads(info_packets, k)
    L = len(info_packets)
    total = L + (n - 1 if flush else 0)

    def info(t: int, j: int) -> int:
        # symbol j (0-based) of info packet at time t; zero outside 1..L
        return int(info_packets[t - 1][j]) if 1 <= t <= L else 0

    # parity column j of the codeword that starts at time s lands at time s + j
    out = []
    for t in range(1, total + 1):
        payload = [info(t, j) for j in range(k)]
        for j in range(k, n):
            s = t - j
            word = encode([info(s + a, a) for a in range(k)], G)
            payload.append(word[j])
        out.append(StreamPacket(t, tuple(payload), Kind.MIXED))
    return out


def stream_decode(received, cfg: StreamConfig, info_count: int | None = None,
                  G: GeneratorMatrix | None = None, *, sweep: bool = True) -> list[PacketOutcome]:
    """Per-information-packet outcomes for a received packet stream.

    ``received[t-1]`` is the payload of packet ``t`` or ``None`` if erased.
    ``info_count`` excludes padding from the result (defaults to all
    information slots present in the schedule).
    """
    G = G or build_generator(cfg.params)
    if cfg.mode is Mode.HORIZONTAL:
        return _horizontal_decode(received, cfg.params, G, info_count, sweep)
    return _diagonal_decode(received, cfg.params, G, info_count, sweep)


def _horizontal_decode(received, params, G, info_count, sweep):
    k, n = params.k, params.n
    if len(received) % n:
        raise ValueError(f"horizontal schedule needs a multiple of n={n} packets, got {len(received)}")
    cycles = len(received) // n
    if info_count is None:
        info_count = cycles * k
    out: list[PacketOutcome] = []
    for g in range(cycles):
        cyc = received[g * n:(g + 1) * n]
        for pkt in cyc:
            if pkt is not None and len(pkt) != k:
                raise ValueError(f"horizontal packets have length k={k}")
        # every lane sees the same erasures; statuses come from lane 0
        lanes = [decode([None if pkt is None else pkt[j] for pkt in cyc], params, G, sweep=sweep)
                 for j in range(k)]
        ref = lanes[0]
        for a in range(k):
            t = g * n + a + 1
            idx = g * k + a
            if idx >= info_count:
                break
            sym = ref.symbols[a]
            payload = None
            if sym.status is not Status.LOST:
                payload = tuple(lane.message[a] for lane in lanes)
            out.append(PacketOutcome(t, sym.status, sym.delay, payload))
    return out


def _diagonal_decode(received, params, G, info_count, sweep):
    k, n = params.k, params.n
    total = len(received)
    for pkt in received:
        if pkt is not None and len(pkt) != n:
            raise ValueError(f"diagonal packets have length n={n}")
    L = info_count if info_count is not None else max(total - (n - 1), 0)
    cache: dict[int, DecodeOutcome] = {}

    def codeword(s: int) -> DecodeOutcome:
        # codeword starting at time s; virtual times < 1 are known zeros
        if s not in cache:
            y = []
            for a in range(n):
                t = s + a
                if t < 1:
                    y.append(0)
                elif t > total or received[t - 1] is None:
                    y.append(None)
                else:
                    y.append(int(received[t - 1][a]))
            cache[s] = decode(y, params, G, sweep=sweep)
        return cache[s]

    out: list[PacketOutcome] = []
    for t in range(1, L + 1):
        if received[t - 1] is not None:
            out.append(PacketOutcome(t, Status.RECEIVED, 0, tuple(received[t - 1][:k])))
            continue
        payload, delay, lost = [], 0, False
        for j in range(k):
            sym = codeword(t - j).symbols[j]
            if sym.status is Status.LOST:
                lost = True
                break
            payload.append(codeword(t - j).message[j])
            delay = max(delay, sym.delay or 0)
        if lost:
            out.append(PacketOutcome(t, Status.LOST, None, None))
        else:
            out.append(PacketOutcome(t, Status.RECOVERED, delay, tuple(payload)))
    return out
