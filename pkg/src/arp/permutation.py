"""Permutation algebra: Kendall distance, representations, max-min designs.

Permutations are tuples of the integers 0..n-1. ``p[i] = j`` reads "position
i holds item j"; for visiting sequences, "the i-th body visited is asteroid
j". The rank representation is the inverse: ``rank[j] = i`` means asteroid j
is visited i-th.
"""

from __future__ import annotations

import enum
from typing import Iterable, Optional, Sequence

import numpy as np

Permutation = tuple  # tuple of ints 0..n-1

_POOL_PER_ITEM = 100  # max-min candidate pool size is 100*n per step


def _validate(p: Sequence[int]) -> tuple:
    out = tuple(int(x) for x in p)
    if sorted(out) != list(range(len(out))):
        raise ValueError(f"not a permutation of 0..{len(out) - 1}: {out!r}")
    return out


def identity(n: int) -> Permutation:
    return tuple(range(n))


def inverse(p: Sequence[int]) -> Permutation:
    """Inverse permutation: inverse(p)[p[i]] = i."""
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """Composition (p after q): compose(p, q)[i] = p[q[i]]."""
    return tuple(p[j] for j in q)


def _count_inversions(seq: list) -> int:
    # iterative bottom-up merge sort, counting crossings at each merge
    n = len(seq)
    src = list(seq)
    dst = [0] * n
    count = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[i] <= src[j]:
                    dst[k] = src[i]
                    i += 1
                else:
                    dst[k] = src[j]
                    j += 1
                    count += mid - i
                k += 1
            dst[k:hi] = src[i:mid] if i < mid else src[j:hi]
        src, dst = dst, src
        width *= 2
    return count


def kendall_distance(p: Sequence[int], q: Sequence[int]) -> int:
    """Number of discordant pairs between p and q.

    Equals the inversion count of p composed with q's inverse, which makes it
    right-invariant: relabeling positions of both arguments by a common
    permutation leaves the distance unchanged.
    """
    if len(p) != len(q):
        raise ValueError("permutations have different lengths")
    q_inv = inverse(q)
    return _count_inversions([p[j] for j in q_inv])


def sample_uniform(n: int, rng: np.random.Generator) -> Permutation:
    """Uniform random permutation from the supplied generator."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return tuple(int(x) for x in rng.permutation(n))


def maxmin_design(n: int, k: int, rng: np.random.Generator,
                  seeds: Optional[Iterable[Sequence[int]]] = None) -> list:
    """Space-filling design of k permutations under Kendall distance.

    Seeds (if any) become the leading members verbatim. Each subsequent
    member is the best of 100*n uniform candidates by max-min distance to
    the members chosen so far, ties broken by first occurrence. Uses no
    objective evaluations.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    design = [_validate(s) for s in seeds] if seeds is not None else []
    del design[k:]
    if not design:
        design.append(sample_uniform(n, rng))
    while len(design) < k:
        best = None
        best_min = -1
        for _ in range(_POOL_PER_ITEM * n):
            cand = sample_uniform(n, rng)
            d = min(kendall_distance(cand, m) for m in design)
            if d > best_min:
                best, best_min = cand, d
        design.append(best)
    return design


class Representation(enum.Enum):
    """How an optimizer's internal permutations map to visiting sequences.

    ORDER passes permutations through unchanged; RANK treats them as the
    inverse of the visiting sequence. ``convert`` maps between the optimizer
    space and visit-order space and is its own inverse either way.
    """

    ORDER = "order"
    RANK = "rank"

    def convert(self, p: Sequence[int]) -> Permutation:
        if self is Representation.RANK:
            return inverse(p)
        return tuple(p)
