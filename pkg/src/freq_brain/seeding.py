"""Deterministic seed splitting: one top-level seed drives every component."""

import zlib

import numpy as np


def derive_seed(seed: int, purpose: str) -> int:
    """Expand a top-level seed into a per-component seed.

    Args:
        seed: Top-level unsigned seed.
        purpose: Tag naming the consumer (e.g. "init", "shuffle", "fold-3").

    Returns:
        A 31-bit seed, stable across platforms and Python versions.
    """
    sequence = np.random.SeedSequence([int(seed), zlib.crc32(purpose.encode("utf-8"))])
    return int(sequence.generate_state(1, dtype=np.uint32)[0] >> 1)
