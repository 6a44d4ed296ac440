"""
Author       : wangzhen0518 wangzhen0518@126.com
Date         : 2026-09-14 10:02 +0800
LastEditors  : wangzhen0518 wangzhen0518@126.com
LastEditTime : 2026-10-11 17:45 +0800
FilePath     : rng.py
Description  : Seeded randomness for every build stage.

All randomness flows from one integer seed. Stages and retry rounds get their own generator through
`make_rng(seed, stage, round)`, so rerunning a stage never disturbs the draws of another one and a
build is reproducible from `(graph, config)` alone.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Sequence

import numpy as np

_MASK64 = (1 << 64) - 1


def _tag_entropy(tag: int | str) -> int:
    if isinstance(tag, str):
        return int.from_bytes(hashlib.blake2b(tag.encode("utf8"), digest_size=8).digest(), "little")
    return tag & _MASK64


def derive_seed(seed: int, *tags: int | str) -> int:
    """Derive a child seed from a parent seed and a path of tags.

    Args:
        seed (int): Parent seed. Any integer, negative values are folded into 64 bits.
        *tags (int | str): Stage names and round numbers identifying the child stream.

    Returns:
        int: A 64-bit seed, stable across platforms and numpy versions that keep `SeedSequence`.

    Examples:
        >>> derive_seed(7, "levels", 0) == derive_seed(7, "levels", 0)
        True
        >>> derive_seed(7, "levels", 0) == derive_seed(7, "levels", 1)
        False
    """
    entropy = [seed & _MASK64, *(_tag_entropy(t) for t in tags)]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int, *tags: int | str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, *tags))


def sampling_probability(n: int, exponent: Fraction) -> float:
    """Evaluate p = n^(-exponent) in extended precision.

    The exponent stays an exact rational up to this point; the power is the only floating point step
    and its result is used solely as a Bernoulli parameter.
    """
    if n <= 1:
        return 1.0
    p = np.power(np.longdouble(n), -np.longdouble(exponent.numerator) / np.longdouble(exponent.denominator))
    return float(min(p, np.longdouble(1.0)))


def bernoulli_subset(rng: np.random.Generator, candidates: Sequence[int], p: float) -> list[int]:
    """Keep each candidate independently with probability p; output preserves candidate order."""
    if not candidates:
        return []
    draws = rng.random(len(candidates))
    return [c for c, x in zip(candidates, draws) if x < p]
