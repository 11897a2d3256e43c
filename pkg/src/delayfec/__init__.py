"""Low-delay erasure codes correcting burst and arbitrary erasures.

Quick start::

    from delayfec import derive_params, build_generator, encode, decode
    P = derive_params(N=1, B=2, T=4, q=5)
    G = build_generator(P)
    x = encode([1, 2, 3], G)
    decode([None, 2, None, 4, 4, 2], P, G).message   # (1, 2, 3)
"""
from .channel import GEParams, ge_generate
from .code import CodeParams, GeneratorMatrix, ParameterError, build_generator, derive_params, encode
from .decoder import (DecodeOutcome, IntegrityError, Phase, Status, decode, deadline,
                      oracle_recoverable, punctured_rs_solve)
from .galois import Field, FieldElement, smallest_prime_at_least
from .harness import PLPReport, Scheme, capability_report, mds_code, new_code, run_plp, sweep

__all__ = [
    "CodeParams", "DecodeOutcome", "Field", "FieldElement", "GEParams", "GeneratorMatrix",
    "IntegrityError", "PLPReport", "ParameterError", "Phase", "Scheme", "Status",
    "build_generator", "capability_report", "deadline", "decode", "derive_params", "encode",
    "ge_generate", "mds_code", "new_code", "oracle_recoverable", "punctured_rs_solve",
    "run_plp", "smallest_prime_at_least", "sweep",
]
