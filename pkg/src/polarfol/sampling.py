"""Seeded random exact values used by the property checks and the survey."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .exact_linalg import Subspace
from .su1n import AlgebraContext, AlgebraElement


def make_rng(seed: int | None, *stream) -> random.Random:
    """Independent deterministic stream for ``(seed, *stream)``."""
    return random.Random(repr((seed,) + tuple(stream)))


def rand_fraction(rng: random.Random, bound: int = 4,
                  denominators: Sequence[int] = (1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(denominators))


def rand_nonzero_fraction(rng: random.Random, bound: int = 4) -> Fraction:
    while True:
        f = rand_fraction(rng, bound)
        if f:
            return f


def rand_combination(rng: random.Random, vectors: Sequence[AlgebraElement],
                     bound: int = 4, sparsity: float = 0.0) -> AlgebraElement:
    """Random rational combination; ``sparsity`` is the chance of a zero."""
    if not vectors:
        raise ValueError("empty generating set")
    out = vectors[0] * 0
    for v in vectors:
        if sparsity and rng.random() < sparsity:
            continue
        out = out + v * rand_fraction(rng, bound)
    return out


def rand_nonzero_combination(rng, vectors, bound: int = 4,
                             sparsity: float = 0.0) -> AlgebraElement:
    for _ in range(100):
        x = rand_combination(rng, vectors, bound, sparsity)
        if not x.is_zero():
            return x
    raise RuntimeError("could not draw a nonzero combination")


def rand_element(rng: random.Random, ctx: AlgebraContext,
                 bound: int = 4) -> AlgebraElement:
    return rand_combination(rng, ctx.basis, bound)


def elements_of(ctx: AlgebraContext, s: Subspace) -> list[AlgebraElement]:
    return [ctx.element(v) for v in s.vectors]
