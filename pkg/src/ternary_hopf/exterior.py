"""Roby's n-exterior algebra: T(V) modulo every n-fold symmetrised product.

Words are tuples of letters (any totally ordered values, normally ints in
1..d).  A word has a *rise of length n* when n consecutive letters are
non-decreasing; the rise-free ("Roby") words form a basis.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .coeff import ZERO, CycQ

Word = Tuple[int, ...]

__all__ = [
    "has_rise",
    "find_rise",
    "rises",
    "is_roby",
    "roby_basis",
    "iter_roby_words",
    "roby_dim",
    "distinct_permutations",
    "multiplicity",
    "reduce_pure",
]


def rises(s: Sequence, n: int) -> Iterator[int]:
    """Start positions of all windows of n consecutive non-decreasing letters."""
    run = 1
    for i in range(1, len(s)):
        run = run + 1 if s[i - 1] <= s[i] else 1
        if run >= n:
            yield i - n + 1


def find_rise(s: Sequence, n: int) -> Optional[int]:
    """Start of the leftmost rise of length n, or None."""
    return next(rises(s, n), None)


def has_rise(s: Sequence, n: int) -> bool:
    if n < 2:
        raise ValueError("rise length must be at least 2")
    return find_rise(s, n) is not None


def is_roby(s: Sequence, n: int = 3) -> bool:
    return not has_rise(s, n)


def iter_roby_words(d: int, n: int, k: int, alphabet: Optional[Sequence[int]] = None) -> Iterator[Word]:
    """Rise-free words of length k in lexicographic order (depth-first, pruned)."""
    letters = list(alphabet) if alphabet is not None else list(range(1, d + 1))
    word: List[int] = []

    def rec(run: int):
        if len(word) == k:
            yield tuple(word)
            return
        for x in letters:
            r = run + 1 if word and word[-1] <= x else 1
            if r >= n:
                continue
            word.append(x)
            yield from rec(r)
            word.pop()

    yield from rec(0)


def roby_basis(d: int, n: int, k: int) -> List[Word]:
    if d < 1 or n < 2 or k < 0:
        raise ValueError("need d >= 1, n >= 2, k >= 0")
    return list(iter_roby_words(d, n, k))


@lru_cache(maxsize=None)
def roby_dim(d: int, n: int, k: int) -> int:
    """Number of rise-free words, by dynamic programming over (last letter, run length)."""
    if d < 1 or n < 2 or k < 0:
        raise ValueError("need d >= 1, n >= 2, k >= 0")
    if k == 0:
        return 1
    # state[(x, r)]: words ending in letter x with a non-decreasing tail of length r < n
    state = {(x, 1): 1 for x in range(d)}
    for _ in range(k - 1):
        nxt: Dict[Tuple[int, int], int] = {}
        for (x, r), cnt in state.items():
            for y in range(d):
                r2 = r + 1 if x <= y else 1
                if r2 < n:
                    nxt[(y, r2)] = nxt.get((y, r2), 0) + cnt
        state = nxt
    return sum(state.values())


def distinct_permutations(word: Sequence) -> List[Tuple]:
    """Distinct rearrangements of a multiset, in lexicographic order."""
    return sorted(set(itertools.permutations(word)))


def multiplicity(word: Sequence) -> int:
    """How often each distinct rearrangement occurs in the full S_n sum."""
    return math.prod(math.factorial(c) for c in Counter(word).values())


def _rewrite_window(s: Word, pos: int, n: int) -> List[Tuple[Word, int]]:
    """Solve the symmetriser relation for the sorted window at pos.

    All distinct rearrangements carry the same multiplicity, so the sorted
    word equals minus the sum of the others.  The sorted word is the
    lexicographically smallest rearrangement, so every replacement word is
    strictly larger: on a finite set of equal-length words this terminates.
    """
    window = s[pos:pos + n]
    head, tail = s[:pos], s[pos + n:]
    return [(head + perm + tail, -1) for perm in distinct_permutations(window) if perm != window]


def reduce_pure(s: Sequence, n: int, rng: Optional[random.Random] = None) -> Dict[Word, CycQ]:
    """Express a word of T(V) in the Roby basis of Lambda(V, n).

    The leftmost rise is rewritten first; pass ``rng`` to pick among all
    rises at random instead (used to test strategy independence).
    """
    if n < 2:
        raise ValueError("rise length must be at least 2")
    if rng is None:
        return dict(_reduce_leftmost(tuple(s), n))
    return _reduce_random(tuple(s), n, rng)


@lru_cache(maxsize=None)
def _reduce_leftmost(s: Word, n: int) -> Tuple[Tuple[Word, CycQ], ...]:
    pos = find_rise(s, n)
    if pos is None:
        return ((s, CycQ(1)),)
    acc: Dict[Word, CycQ] = {}
    for w, c in _rewrite_window(s, pos, n):
        for w2, c2 in _reduce_leftmost(w, n):
            acc[w2] = acc.get(w2, ZERO) + c * c2
    return tuple((w, c) for w, c in sorted(acc.items()) if c)


def _reduce_random(s: Word, n: int, rng: random.Random) -> Dict[Word, CycQ]:
    spots = list(rises(s, n))
    if not spots:
        return {s: CycQ(1)}
    pos = rng.choice(spots)
    acc: Dict[Word, CycQ] = {}
    for w, c in _rewrite_window(s, pos, n):
        for w2, c2 in _reduce_random(w, n, rng).items():
            acc[w2] = acc.get(w2, ZERO) + c * c2
    return {w: c for w, c in acc.items() if c}
