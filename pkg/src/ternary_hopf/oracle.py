"""Independent check of the rewriting engine by plain linear algebra.

Up to a degree cap, every product u * r * v of a defining relation r with
words u, v is written out in the free algebra.  Gaussian elimination over
Q(q) then expresses any word modulo their span in terms of PBW words.
Nothing here uses the rewriting rules, only the relations themselves.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, List, Tuple

from .coeff import ONE, CycQ
from .enveloping import Element, PBWMonomial, engine
from .structure import AlgebraSpec

Word = Tuple[int, ...]

__all__ = ["PBWViolation", "IdealTruncation", "oracle_reduce", "truncation"]


class PBWViolation(RuntimeError):
    """The relations make PBW words linearly dependent (or fail to span)."""


def _relations(spec: AlgebraSpec) -> List[Dict[Word, CycQ]]:
    p, n = spec.p, spec.n
    rels = []
    for i in range(p):
        for j in range(i + 1, p):
            r: Dict[Word, CycQ] = {(i, j): ONE, (j, i): -ONE}
            for m, c in spec.bracket(i, j).items():
                r[(m,)] = r.get((m,), 0) - c
            rels.append(r)
    for i in range(p):
        for j in range(n):
            r = {(i, p + j): ONE, (p + j, i): -ONE}
            for m, c in spec.action(i, j).items():
                r[(p + m,)] = -c
            rels.append(r)
    for a, b, c in itertools.combinations_with_replacement(range(n), 3):
        r = {}
        for perm in itertools.permutations((p + a, p + b, p + c)):
            r[perm] = r.get(perm, 0) + ONE
        for m, v in spec.triple(a, b, c).items():
            r[(m,)] = r.get((m,), 0) - v
        rels.append(r)
    return [{w: CycQ.coerce(c) for w, c in r.items() if c} for r in rels]


def _words(letters: int, length: int):
    return itertools.product(range(letters), repeat=length)


class IdealTruncation:
    """Row-reduced span of all u*r*v up to a fixed degree."""

    def __init__(self, spec: AlgebraSpec, cap: int):
        self.spec = spec
        self.cap = cap
        self.eng = engine(spec)
        self._keys: Dict[Word, tuple] = {}
        self.pivots: Dict[Word, Dict[Word, CycQ]] = {}
        self._build()

    def _key(self, w: Word) -> tuple:
        # a total order in which every relation has its rewritable word on top
        k = self._keys.get(w)
        if k is None:
            p = self.spec.p
            yx = xx = 0
            ys_seen = 0
            xs: List[int] = []
            for l in w:
                if l >= p:
                    ys_seen += 1
                else:
                    yx += ys_seen
                    xx += sum(1 for x in xs if x > l)
                    xs.append(l)
            k = (len(w), yx, xx, tuple(-l for l in w))
            self._keys[w] = k
        return k

    def _insert(self, row: Dict[Word, CycQ]) -> None:
        row = dict(row)
        while row:
            top = max(row, key=self._key)
            piv = self.pivots.get(top)
            if piv is None:
                lead = row[top]
                if lead != 1:
                    inv = lead.inv()
                    row = {w: c * inv for w, c in row.items()}
                self.pivots[top] = row
                return
            c = row[top]
            for w, v in piv.items():
                nv = row.get(w, 0) - c * v
                if nv:
                    row[w] = nv
                else:
                    row.pop(w, None)

    def _build(self) -> None:
        letters = self.spec.p + self.spec.n
        for rel in _relations(self.spec):
            d = max(len(w) for w in rel)
            for room in range(self.cap - d + 1):
                for left in range(room + 1):
                    for u in _words(letters, left):
                        for v in _words(letters, room - left):
                            self._insert({u + w + v: c for w, c in rel.items()})
        total_bad = 0
        for length in range(self.cap + 1):
            for w in _words(letters, length):
                if not self.eng.is_pbw_word(w):
                    total_bad += 1
                    if w not in self.pivots:
                        raise PBWViolation(f"non-PBW word {w} is not reducible up to degree {self.cap}")
        if total_bad != len(self.pivots):
            raise PBWViolation(
                f"{len(self.pivots)} independent relations but {total_bad} non-PBW words up to degree {self.cap}"
            )

    def reduce_word(self, w: Word) -> Dict[Word, CycQ]:
        """Representative of w supported on PBW words."""
        row: Dict[Word, CycQ] = {tuple(w): ONE}
        while True:
            hits = [x for x in row if x in self.pivots]
            if not hits:
                return row
            top = max(hits, key=self._key)
            c = row[top]
            for x, v in self.pivots[top].items():
                nv = row.get(x, 0) - c * v
                if nv:
                    row[x] = nv
                else:
                    row.pop(x, None)

    def reduce(self, w: Word) -> Element:
        p = self.spec.p
        out: Dict[PBWMonomial, CycQ] = {}
        for word, c in self.reduce_word(w).items():
            exps = [0] * p
            k = 0
            while k < len(word) and word[k] < p:
                exps[word[k]] += 1
                k += 1
            # sorted X word = (prod a!) * divided-power monomial
            fact = math.prod(math.factorial(a) for a in exps)
            out[PBWMonomial(tuple(exps), tuple(l - p for l in word[k:]))] = c * fact
        return Element(out)


def truncation(spec: AlgebraSpec, degree_cap: int) -> IdealTruncation:
    key = ("oracle", degree_cap)
    tr = spec._cache.get(key)
    if tr is None:
        tr = spec._cache[key] = IdealTruncation(spec, degree_cap)
    return tr


def oracle_reduce(word, spec: AlgebraSpec, degree_cap: int) -> Element:
    """PBW coordinates of a word computed without the rewriting engine."""
    w = tuple(word)
    if len(w) > degree_cap:
        raise ValueError(f"word of degree {len(w)} exceeds the cap {degree_cap}")
    return truncation(spec, degree_cap).reduce(w)
