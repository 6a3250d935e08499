"""Universal enveloping algebra U(g) of an elementary Lie algebra of order three.

Free words are tuples of letter codes: ``i`` for X_i (0 <= i < p) and
``p + j`` for Y_j.  Normal forms live in the PBW basis

    X_{a} Y_{w},   X_{a} = X_1^{a_1}/a_1! ... X_p^{a_p}/a_p!,

with w a rise-free (Roby) word over the g1 basis.  Words are rewritten with

    1. Y X   -> X Y - [X, Y]
    2. X_b X_a -> X_a X_b - [X_a, X_b]        (a < b)
    3. sorted Y-window -> minus its other rearrangements + {..}/multiplicity

Deterministic order: the leftmost X standing after a Y is moved first, then
the X-prefix is sorted, then the leftmost rise of the Y-suffix is rewritten.
Every step lowers (length, #YX inversions, #X inversions) or keeps those
and strictly raises the Y-subword lexicographically, so rewriting stops.
"""

from __future__ import annotations

import math
import random
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, CycQ
from .exterior import distinct_permutations, find_rise, iter_roby_words, multiplicity, rises
from .structure import AlgebraSpec

Word = Tuple[int, ...]

__all__ = [
    "PBWMonomial",
    "Element",
    "Sparse",
    "EnvelopingAlgebra",
    "engine",
    "normalize",
    "mul",
    "pbw_basis",
    "monomial_key",
]


class PBWMonomial(NamedTuple):
    x_exp: Tuple[int, ...]
    y_word: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.x_exp) + len(self.y_word)

    @property
    def grade(self) -> int:
        return len(self.y_word) % 3

    def is_unit(self) -> bool:
        return not self.y_word and not any(self.x_exp)


def monomial_key(m: PBWMonomial):
    """Canonical display/iteration order: degree first, pure X before Y."""
    return (m.degree, len(m.y_word), tuple(-a for a in m.x_exp), m.y_word)


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _axpy(acc: dict, coeff, terms: dict) -> None:
    for k, c in terms.items():
        _add_into(acc, k, coeff * c)


class Sparse:
    """Finite linear combination with CycQ coefficients and no zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in dict(terms).items():
                c = CycQ.coerce(c)
                if c:
                    clean[k] = c
        self.terms: dict = clean

    @classmethod
    def _wrap(cls, terms: dict):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return self._wrap(out)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, -c)
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({k: -c for k, c in self.terms.items()})

    def scale(self, s):
        s = CycQ.coerce(s)
        if not s:
            return self._wrap({})
        return self._wrap({k: s * c for k, c in self.terms.items()})

    def __rmul__(self, s):
        if isinstance(s, (int, CycQ)) or hasattr(s, "denominator"):
            return self.scale(s)
        return NotImplemented

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __contains__(self, key):
        return key in self.terms

    def items(self):
        return self.terms.items()

    def coefficient(self, key) -> CycQ:
        return self.terms.get(key, ZERO)

    def __repr__(self):
        inner = ", ".join(f"{k}: {c}" for k, c in self.terms.items())
        return f"{type(self).__name__}({{{inner}}})"


class Element(Sparse):
    """Element of U(g) in PBW coordinates: ``{PBWMonomial: CycQ}``."""

    __slots__ = ()

    def sorted_items(self) -> List[Tuple[PBWMonomial, CycQ]]:
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors of length ``parts`` summing to ``total``, in descending lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class EnvelopingAlgebra:
    """Rewriting engine and PBW arithmetic for one algebra.

    Normal forms of words and products of monomials are memoised on the
    instance; obtain shared instances through :func:`engine`.
    """

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.unit = PBWMonomial((0,) * self.p, ())
        self._nf_memo: Dict[Word, dict] = {}
        self._mono_mul_memo: Dict[Tuple[PBWMonomial, PBWMonomial], dict] = {}

    # letters and words

    def letter(self, name: str) -> int:
        spec = self.spec
        if name in spec.g0_names:
            return spec.g0_names.index(name)
        if name in spec.g1_names:
            return self.p + spec.g1_names.index(name)
        raise KeyError(f"unknown generator {name!r}")

    def word(self, *names: str) -> Word:
        return tuple(self.letter(nm) for nm in names)

    def is_y(self, letter: int) -> bool:
        return letter >= self.p

    def grade_of_word(self, w: Sequence[int]) -> int:
        return sum(1 for l in w if l >= self.p) % 3

    def monomial_word(self, m: PBWMonomial) -> Tuple[Word, CycQ]:
        """Word spelling a basis monomial and the scalar it must be multiplied by."""
        xs = tuple(i for i, a in enumerate(m.x_exp) for _ in range(a))
        fact = math.prod(math.factorial(a) for a in m.x_exp)
        return xs + tuple(self.p + j for j in m.y_word), CycQ(1) / fact

    def monomial(self, x_exp=None, y_word=()) -> PBWMonomial:
        x = tuple(x_exp) if x_exp is not None else (0,) * self.p
        return PBWMonomial(x, tuple(y_word))

    def generator(self, name: str) -> Element:
        l = self.letter(name)
        return self.element_of_letter(l)

    def element_of_letter(self, l: int) -> Element:
        if l < self.p:
            x = [0] * self.p
            x[l] = 1
            return Element._wrap({PBWMonomial(tuple(x), ()): ONE})
        return Element._wrap({PBWMonomial(self.unit.x_exp, (l - self.p,)): ONE})

    def one(self) -> Element:
        return Element._wrap({self.unit: ONE})

    def zero(self) -> Element:
        return Element._wrap({})

    def from_monomial(self, m: PBWMonomial, c=ONE) -> Element:
        return Element({m: c})

    # normal form

    def normalize(self, w, rng: Optional[random.Random] = None) -> Element:
        """PBW normal form of a word (tuple of letter codes) or ``{word: coeff}``."""
        if isinstance(w, dict):
            out: dict = {}
            for word, c in w.items():
                _axpy(out, CycQ.coerce(c), self._normal(tuple(word), rng))
            return Element._wrap(out)
        return Element._wrap(dict(self._normal(tuple(w), rng)))

    def _normal(self, w: Word, rng: Optional[random.Random]) -> dict:
        for l in w:
            if not 0 <= l < self.p + self.n:
                raise ValueError(f"letter code {l} out of range")
        if rng is None:
            return self._nf(w)
        return self._nf_random(w, rng, {})

    def _terminal(self, w: Word) -> dict:
        exps = [0] * self.p
        k = 0
        while k < len(w) and w[k] < self.p:
            exps[w[k]] += 1
            k += 1
        fact = math.prod(math.factorial(a) for a in exps)
        return {PBWMonomial(tuple(exps), tuple(l - self.p for l in w[k:])): CycQ(fact)}

    def _nf(self, w: Word) -> dict:
        hit = self._nf_memo.get(w)
        if hit is not None:
            return hit
        res = self._step(w, self._nf, self._leftmost_redex(w))
        self._nf_memo[w] = res
        return res

    def _leftmost_redex(self, w: Word):
        p = self.p
        seen_y = False
        for k, l in enumerate(w):
            if l >= p:
                seen_y = True
            elif seen_y:
                # the letter before the leftmost misplaced X is necessarily a Y
                return (1, k - 1)
        nx = 0
        while nx < len(w) and w[nx] < p:
            nx += 1
        for k in range(nx - 1):
            if w[k] > w[k + 1]:
                return (2, k)
        pos = find_rise(w[nx:], 3)
        if pos is not None:
            return (3, nx + pos)
        return None

    def _all_redexes(self, w: Word) -> List[Tuple[int, int]]:
        p = self.p
        out = []
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            if a >= p and b < p:
                out.append((1, k))
            elif a < p and b < p and a > b:
                out.append((2, k))
        # rises are runs of Y letters only
        start = 0
        while start < len(w):
            if w[start] < p:
                start += 1
                continue
            end = start
            while end < len(w) and w[end] >= p:
                end += 1
            out.extend((3, start + r) for r in rises(w[start:end], 3))
            start = end
        return out

    def _step(self, w: Word, recurse, redex) -> dict:
        if redex is None:
            return self._terminal(w)
        spec, p = self.spec, self.p
        rule, k = redex
        res: dict = {}
        if rule == 1:
            # Y_j X_i = X_i Y_j - [X_i, Y_j]
            yj, xi = w[k], w[k + 1]
            _axpy(res, ONE, recurse(w[:k] + (xi, yj) + w[k + 2:]))
            for m, c in spec.action(xi, yj - p).items():
                _axpy(res, -c, recurse(w[:k] + (p + m,) + w[k + 2:]))
        elif rule == 2:
            # X_b X_a = X_a X_b - [X_a, X_b]
            b, a = w[k], w[k + 1]
            _axpy(res, ONE, recurse(w[:k] + (a, b) + w[k + 2:]))
            for m, c in spec.bracket(a, b).items():
                _axpy(res, -c, recurse(w[:k] + (m,) + w[k + 2:]))
        else:
            window = w[k:k + 3]
            head, tail = w[:k], w[k + 3:]
            for perm in distinct_permutations(window):
                if perm != window:
                    _axpy(res, -ONE, recurse(head + perm + tail))
            mult = multiplicity(window)
            for m, c in spec.triple(*(l - p for l in window)).items():
                _axpy(res, c / mult, recurse(head + (m,) + tail))
        return res

    def _nf_random(self, w: Word, rng: random.Random, memo: dict) -> dict:
        hit = memo.get(w)
        if hit is not None:
            return hit
        redexes = self._all_redexes(w)
        redex = rng.choice(redexes) if redexes else None
        res = self._step(w, lambda u: self._nf_random(u, rng, memo), redex)
        memo[w] = res
        return res

    # products

    def mul_monomials(self, m1: PBWMonomial, m2: PBWMonomial) -> dict:
        key = (m1, m2)
        hit = self._mono_mul_memo.get(key)
        if hit is not None:
            return hit
        if not m1.y_word and not any(m2.x_exp):
            res = {PBWMonomial(m1.x_exp, m2.y_word): ONE}
        elif m2.is_unit():
            res = {m1: ONE}
        elif m1.is_unit():
            res = {m2: ONE}
        else:
            w1, f1 = self.monomial_word(m1)
            w2, f2 = self.monomial_word(m2)
            s = f1 * f2
            res = {k: s * c for k, c in self._nf(w1 + w2).items()}
        self._mono_mul_memo[key] = res
        return res

    def mul(self, u: Element, v: Element) -> Element:
        out: dict = {}
        for m1, c1 in u.terms.items():
            for m2, c2 in v.terms.items():
                _axpy(out, c1 * c2, self.mul_monomials(m1, m2))
        return Element._wrap(out)

    def mul_many(self, *elements: Element) -> Element:
        acc = self.one()
        for e in elements:
            acc = self.mul(acc, e)
        return acc

    def to_free(self, u: Element) -> Dict[Word, CycQ]:
        """A free-algebra representative of u (one word per monomial)."""
        out: Dict[Word, CycQ] = {}
        for m, c in u.terms.items():
            w, f = self.monomial_word(m)
            _add_into(out, w, c * f)
        return out

    # basis

    def pbw_basis(self, degree: int) -> List[PBWMonomial]:
        if degree < 0:
            raise ValueError("degree must be non-negative")
        out = []
        for k in range(degree + 1):
            out.extend(self.pbw_basis_exact(k))
        return out

    def pbw_basis_exact(self, k: int) -> List[PBWMonomial]:
        """Monomials of total degree exactly k, in canonical order."""
        out = []
        for ylen in range(k + 1):
            words = list(iter_roby_words(self.n, 3, ylen, alphabet=range(self.n))) if self.n or ylen == 0 else []
            xs = list(_compositions(k - ylen, self.p))
            for x in xs:
                for w in words:
                    out.append(PBWMonomial(x, w))
        out.sort(key=monomial_key)
        return out

    def is_pbw_word(self, w: Word) -> bool:
        """Sorted X-prefix followed by a Roby Y-suffix."""
        p = self.p
        k = 0
        while k < len(w) and w[k] < p:
            if k and w[k - 1] > w[k]:
                return False
            k += 1
        ys = w[k:]
        if any(l < p for l in ys):
            return False
        return find_rise(ys, 3) is None


def engine(spec: AlgebraSpec) -> EnvelopingAlgebra:
    """Shared :class:`EnvelopingAlgebra` for a spec (memo tables are reused)."""
    eng = spec._cache.get("enveloping")
    if eng is None:
        eng = spec._cache["enveloping"] = EnvelopingAlgebra(spec)
    return eng


def normalize(w, spec: AlgebraSpec) -> Element:
    return engine(spec).normalize(w)


def mul(u: Element, v: Element, spec: AlgebraSpec) -> Element:
    return engine(spec).mul(u, v)


def pbw_basis(spec: AlgebraSpec, degree: int) -> List[PBWMonomial]:
    return engine(spec).pbw_basis(degree)
