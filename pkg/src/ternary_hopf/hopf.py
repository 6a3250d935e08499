"""Z3-graded Hopf structure on U(g).

Generators are primitive, X of grade 0 and Y of grade 1, and U(g) (x) U(g)
multiplies with the braiding phase

    (a (x) c)(b (x) d) = q^(|c||b|) ab (x) cd.

Expanding the product of primitive generators gives, for a word g_1..g_k,

    Delta(g_1..g_k) = sum over subsets S of  q^N(S)  g_S (x) g_{not S},

where N(S) adds |g_i||g_j| for every i < j with i outside S and j inside S.
The antipode is S(g_1..g_k) = (-1)^k q^(sum_{i<j}|g_i||g_j|) g_k..g_1.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Dict, List, Sequence, Tuple

from .coeff import ONE, ZERO, CycQ, q_pow
from .enveloping import (
    Element,
    EnvelopingAlgebra,
    PBWMonomial,
    Sparse,
    _add_into,
    _axpy,
    engine,
    monomial_key,
)
from .structure import AlgebraSpec, CheckResult, ValidationReport

__all__ = [
    "TensorElement",
    "HopfAlgebra",
    "hopf",
    "coproduct",
    "counit",
    "antipode",
    "twisted_mul",
    "hopf_check",
    "check_coassoc",
    "check_counit",
    "check_antipode",
    "check_primitive",
    "check_multiplicativity",
    "check_grading",
]

Pair = Tuple[PBWMonomial, PBWMonomial]


class TensorElement(Sparse):
    """Element of U(g) (x) U(g): ``{(left monomial, right monomial): CycQ}``."""

    __slots__ = ()

    def sorted_items(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (-kv[0][0].degree, monomial_key(kv[0][0]), monomial_key(kv[0][1])),
        )


def _subsets(k: int):
    return itertools.product((True, False), repeat=k)


class HopfAlgebra:
    """Coproduct, counit and antipode for one algebra, with per-monomial caches."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.U: EnvelopingAlgebra = engine(spec)
        self._cop: Dict[PBWMonomial, dict] = {}
        self._ant: Dict[PBWMonomial, dict] = {}
        self._ywords: Dict[Tuple[int, ...], dict] = {}

    # tensor products

    def twisted_mul(self, s: TensorElement, t: TensorElement) -> TensorElement:
        U = self.U
        out: dict = {}
        for (a, c), x in s.terms.items():
            for (b, d), y in t.terms.items():
                phase = q_pow(c.grade * b.grade) * x * y
                ab = U.mul_monomials(a, b)
                cd = U.mul_monomials(c, d)
                for m1, c1 in ab.items():
                    pc = phase * c1
                    for m2, c2 in cd.items():
                        _add_into(out, (m1, m2), pc * c2)
        return TensorElement._wrap(out)

    def tensor(self, u: Element, v: Element) -> TensorElement:
        out = {}
        for a, x in u.terms.items():
            for b, y in v.terms.items():
                out[(a, b)] = x * y
        return TensorElement(out)

    # coproduct

    def _y_split(self, w: Tuple[int, ...]) -> dict:
        """Braided shuffle of a Y word: {(left word, right word): phase}."""
        hit = self._ywords.get(w)
        if hit is not None:
            return hit
        out: dict = {}
        for mask in _subsets(len(w)):
            # each Y in the left leg passes every earlier Y of the right leg
            n = 0
            right_so_far = 0
            for left in mask:
                if left:
                    n += right_so_far
                else:
                    right_so_far += 1
            lw = tuple(l for l, s in zip(w, mask) if s)
            rw = tuple(l for l, s in zip(w, mask) if not s)
            _add_into(out, (lw, rw), q_pow(n))
        self._ywords[w] = out
        return out

    def _x_times(self, b: Tuple[int, ...], y: Tuple[int, ...]) -> dict:
        """X_b times the normal form of the Y word y."""
        U = self.U
        xm = PBWMonomial(b, ())
        p = U.p
        nf = U._nf(tuple(p + j for j in y))
        out: dict = {}
        for m, c in nf.items():
            _axpy(out, c, U.mul_monomials(xm, m))
        return out

    def coproduct_monomial(self, m: PBWMonomial) -> dict:
        hit = self._cop.get(m)
        if hit is not None:
            return hit
        out: dict = {}
        xsplits = list(itertools.product(*(range(a + 1) for a in m.x_exp)))
        legs: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], dict] = {}
        for (lw, rw), phase in self._y_split(m.y_word).items():
            for b in xsplits:
                c = tuple(a - bi for a, bi in zip(m.x_exp, b))
                lk, rk = (b, lw), (c, rw)
                left = legs.get(lk)
                if left is None:
                    left = legs[lk] = self._x_times(b, lw)
                right = legs.get(rk)
                if right is None:
                    right = legs[rk] = self._x_times(c, rw)
                for m1, c1 in left.items():
                    pc = phase * c1
                    for m2, c2 in right.items():
                        _add_into(out, (m1, m2), pc * c2)
        self._cop[m] = out
        return out

    def coproduct(self, u: Element) -> TensorElement:
        out: dict = {}
        for m, c in u.terms.items():
            _axpy(out, c, self.coproduct_monomial(m))
        return TensorElement._wrap(out)

    def coproduct_word(self, w: Sequence[int]) -> TensorElement:
        """Direct subset expansion of a free word (independent of PBW splitting)."""
        U = self.U
        w = tuple(w)
        grades = [1 if U.is_y(l) else 0 for l in w]
        out: dict = {}
        for mask in _subsets(len(w)):
            n = 0
            for j, sj in enumerate(mask):
                if sj and grades[j]:
                    n += sum(grades[i] for i in range(j) if not mask[i])
            lw = tuple(l for l, s in zip(w, mask) if s)
            rw = tuple(l for l, s in zip(w, mask) if not s)
            phase = q_pow(n)
            for m1, c1 in U._nf(lw).items():
                for m2, c2 in U._nf(rw).items():
                    _add_into(out, (m1, m2), phase * c1 * c2)
        return TensorElement._wrap(out)

    # counit and antipode

    def counit(self, u: Element) -> CycQ:
        return u.coefficient(self.U.unit)

    def antipode_monomial(self, m: PBWMonomial) -> dict:
        hit = self._ant.get(m)
        if hit is not None:
            return hit
        U = self.U
        w, f = U.monomial_word(m)
        k = len(m.y_word)
        coeff = f * q_pow(k * (k - 1) // 2)
        if len(w) % 2:
            coeff = -coeff
        out = {mm: coeff * c for mm, c in U._nf(tuple(reversed(w))).items()}
        self._ant[m] = out
        return out

    def antipode(self, u: Element) -> Element:
        out: dict = {}
        for m, c in u.terms.items():
            _axpy(out, c, self.antipode_monomial(m))
        return Element._wrap(out)

    # multilinear helpers

    def mult(self, t: TensorElement) -> Element:
        out: dict = {}
        for (a, b), c in t.terms.items():
            _axpy(out, c, self.U.mul_monomials(a, b))
        return Element._wrap(out)

    def apply_left(self, fn: Callable[[PBWMonomial], dict], t: TensorElement) -> TensorElement:
        out: dict = {}
        for (a, b), c in t.terms.items():
            for a2, c2 in fn(a).items():
                _add_into(out, (a2, b), c * c2)
        return TensorElement._wrap(out)

    def apply_right(self, fn: Callable[[PBWMonomial], dict], t: TensorElement) -> TensorElement:
        out: dict = {}
        for (a, b), c in t.terms.items():
            for b2, c2 in fn(b).items():
                _add_into(out, (a, b2), c * c2)
        return TensorElement._wrap(out)

    # axiom checks; each returns a residual dict (empty when the axiom holds)

    def coassoc_residual(self, m: PBWMonomial) -> dict:
        d = self.coproduct_monomial(m)
        lhs: dict = {}
        rhs: dict = {}
        for (a, b), c in d.items():
            for (a1, a2), c1 in self.coproduct_monomial(a).items():
                _add_into(lhs, (a1, a2, b), c * c1)
            for (b1, b2), c2 in self.coproduct_monomial(b).items():
                _add_into(rhs, (a, b1, b2), c * c2)
        for k, c in rhs.items():
            _add_into(lhs, k, -c)
        return lhs

    def counit_residual(self, m: PBWMonomial) -> dict:
        unit = self.U.unit
        left: dict = {}
        right: dict = {}
        for (a, b), c in self.coproduct_monomial(m).items():
            if a == unit:
                _add_into(left, b, c)
            if b == unit:
                _add_into(right, a, c)
        res: dict = {}
        for side, acc in (("eps(x)id", left), ("id(x)eps", right)):
            _add_into(acc, m, -ONE)
            for k, c in acc.items():
                res[(side, k)] = c
        return res

    def antipode_residual(self, m: PBWMonomial) -> dict:
        d = TensorElement._wrap(self.coproduct_monomial(m))
        eps = ONE if m == self.U.unit else ZERO
        res: dict = {}
        for side, t in (
            ("S(x)id", self.apply_left(self.antipode_monomial, d)),
            ("id(x)S", self.apply_right(self.antipode_monomial, d)),
        ):
            acc = dict(self.mult(t).terms)
            if eps:
                _add_into(acc, self.U.unit, -eps)
            for k, c in acc.items():
                res[(side, k)] = c
        return res

    def multiplicativity_residual(self, m1: PBWMonomial, m2: PBWMonomial) -> dict:
        U = self.U
        prod = Element._wrap(U.mul_monomials(m1, m2))
        lhs = self.coproduct(prod)
        rhs = self.twisted_mul(
            TensorElement._wrap(self.coproduct_monomial(m1)),
            TensorElement._wrap(self.coproduct_monomial(m2)),
        )
        return (lhs - rhs).terms

    def antipode_anti_residual(self, m1: PBWMonomial, m2: PBWMonomial) -> dict:
        # S(uv) = q^(|u||v|) S(v) S(u)
        U = self.U
        lhs = self.antipode(Element._wrap(U.mul_monomials(m1, m2)))
        rhs = U.mul(
            Element._wrap(self.antipode_monomial(m2)),
            Element._wrap(self.antipode_monomial(m1)),
        ).scale(q_pow(m1.grade * m2.grade))
        return (lhs - rhs).terms

    def primitive_residual(self, letter: int) -> dict:
        g = self.U.element_of_letter(letter)
        (m, _), = g.terms.items()
        expected = {(m, self.U.unit): ONE, (self.U.unit, m): ONE}
        res = dict(self.coproduct_monomial(m))
        for k, c in expected.items():
            _add_into(res, k, -c)
        return res

    def grade_residual(self, m: PBWMonomial) -> dict:
        return {
            k: c
            for k, c in self.coproduct_monomial(m).items()
            if (k[0].grade + k[1].grade - m.grade) % 3
        }

    def check(self, degree: int = 3, pairs: int = 200, seed: int = 0) -> ValidationReport:
        """Run every Hopf axiom on the PBW basis up to ``degree``.

        Multiplicativity and anti-multiplicativity use ``pairs`` random pairs
        of basis monomials with total degree at most ``degree``.
        """
        basis = self.U.pbw_basis(degree)
        rng = random.Random(seed)
        by_deg: Dict[int, List[PBWMonomial]] = {}
        for m in basis:
            by_deg.setdefault(m.degree, []).append(m)

        def rand_pair():
            d1 = rng.randint(0, degree)
            d2 = rng.randint(0, degree - d1)
            return rng.choice(by_deg[d1]), rng.choice(by_deg[d2])

        sample = [rand_pair() for _ in range(pairs)]
        single = [(m,) for m in basis]
        checks = [
            _run_check("primitive", [(l,) for l in range(self.U.p + self.U.n)], self.primitive_residual),
            _run_check("grading", single, self.grade_residual),
            _run_check("counit", single, self.counit_residual),
            _run_check("coassociativity", single, self.coassoc_residual),
            _run_check("multiplicativity", sample, self.multiplicativity_residual),
            _run_check("antipode", single, self.antipode_residual, collect=True),
            _run_check("antipode_anti_multiplicative", sample, self.antipode_anti_residual),
        ]
        return ValidationReport(checks)


def _run_check(name, cases, fn, collect: bool = False) -> CheckResult:
    count = 0
    failures = []
    for case in cases:
        count += 1
        res = fn(*case)
        if res:
            if not collect:
                return CheckResult(name, False, tuple(case), res)
            failures.append((tuple(case), res))
    if failures:
        first, res = failures[0]
        return CheckResult(name, False, first, res, f"{len(failures)} of {count} cases fail", failures)
    return CheckResult(name, True, detail=f"{count} cases")


def hopf(spec: AlgebraSpec) -> HopfAlgebra:
    h = spec._cache.get("hopf")
    if h is None:
        h = spec._cache["hopf"] = HopfAlgebra(spec)
    return h


def coproduct(u: Element, spec: AlgebraSpec) -> TensorElement:
    return hopf(spec).coproduct(u)


def counit(u: Element, spec: AlgebraSpec) -> CycQ:
    return hopf(spec).counit(u)


def antipode(u: Element, spec: AlgebraSpec) -> Element:
    return hopf(spec).antipode(u)


def twisted_mul(s: TensorElement, t: TensorElement, spec: AlgebraSpec) -> TensorElement:
    return hopf(spec).twisted_mul(s, t)


def hopf_check(spec: AlgebraSpec, degree: int = 3, pairs: int = 200, seed: int = 0) -> ValidationReport:
    return hopf(spec).check(degree, pairs, seed)


def _basis_cases(spec: AlgebraSpec, degree: int):
    return [(m,) for m in engine(spec).pbw_basis(degree)]


def check_coassoc(spec: AlgebraSpec, degree: int) -> ValidationReport:
    H = hopf(spec)
    return ValidationReport([_run_check("coassociativity", _basis_cases(spec, degree), H.coassoc_residual)])


def check_counit(spec: AlgebraSpec, degree: int) -> ValidationReport:
    H = hopf(spec)
    return ValidationReport([_run_check("counit", _basis_cases(spec, degree), H.counit_residual)])


def check_grading(spec: AlgebraSpec, degree: int) -> ValidationReport:
    H = hopf(spec)
    return ValidationReport([_run_check("grading", _basis_cases(spec, degree), H.grade_residual)])


def check_antipode(spec: AlgebraSpec, degree: int) -> ValidationReport:
    """m(S (x) id)Delta = eps 1 = m(id (x) S)Delta on every basis monomial.

    Every failing monomial is recorded in ``failures`` (not just the first).
    """
    H = hopf(spec)
    return ValidationReport([_run_check("antipode", _basis_cases(spec, degree), H.antipode_residual, collect=True)])


def check_multiplicativity(spec: AlgebraSpec, degree: int, pairs: int = 200, seed: int = 0) -> ValidationReport:
    H = hopf(spec)
    rng = random.Random(seed)
    basis = H.U.pbw_basis(degree)
    cases = []
    while len(cases) < pairs:
        a, b = rng.choice(basis), rng.choice(basis)
        if a.degree + b.degree <= degree:
            cases.append((a, b))
    return ValidationReport([_run_check("multiplicativity", cases, H.multiplicativity_residual)])


def check_primitive(u: Element, spec: AlgebraSpec) -> bool:
    """True iff Delta(u) = u (x) 1 + 1 (x) u."""
    H = hopf(spec)
    unit = H.U.unit
    expected: dict = {}
    for m, c in u.terms.items():
        _add_into(expected, (m, unit), c)
        _add_into(expected, (unit, m), c)
    return H.coproduct(u).terms == expected
