"""The dual U(g)*, computed exactly on all PBW labels up to a degree cutoff.

A functional is stored by its values on the PBW basis (the dual basis
Psi[x | y]).  Pure-Y labels are the theta's, pure-X labels the alpha's.
Products in U(g) can lower degree (three Y's become one X), so products and
coproducts of functionals are only computed on labels of degree <= cutoff;
inside that range every coefficient is exact.

``cutoff=None`` marks an exact finite functional (like a single basis dual
vector): it is known on every label, not just a truncation.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, CycQ
from .enveloping import Element, PBWMonomial, _add_into, engine, monomial_key
from .exterior import is_roby
from .hopf import hopf
from .structure import AlgebraSpec, CheckResult, ValidationReport

__all__ = [
    "DualElement",
    "DualTensor",
    "theta",
    "alpha",
    "psi",
    "unit_functional",
    "pair",
    "dual_mul",
    "dual_mul_many",
    "dual_coproduct",
    "dual_counit",
    "dual_antipode",
    "three_exterior_check",
]


def _min_cut(*cuts: Optional[int]) -> Optional[int]:
    known = [c for c in cuts if c is not None]
    return min(known) if known else None


class DualElement:
    """Functional on U(g): ``{label: value}`` plus the cutoff it is exact to."""

    __slots__ = ("terms", "cutoff")

    def __init__(self, terms=None, cutoff: Optional[int] = None):
        clean = {}
        for m, c in dict(terms or {}).items():
            c = CycQ.coerce(c)
            if not c:
                continue
            if cutoff is not None and m.degree > cutoff:
                raise ValueError(f"label {m} has degree {m.degree} above cutoff {cutoff}")
            clean[m] = c
        self.terms: Dict[PBWMonomial, CycQ] = clean
        self.cutoff = cutoff

    def _binary(self, other, sign):
        if not isinstance(other, DualElement):
            return NotImplemented
        cut = _min_cut(self.cutoff, other.cutoff)
        out = {m: c for m, c in self.terms.items() if cut is None or m.degree <= cut}
        for m, c in other.terms.items():
            if cut is None or m.degree <= cut:
                _add_into(out, m, sign * c)
        return DualElement(out, cut)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return DualElement({m: -c for m, c in self.terms.items()}, self.cutoff)

    def scale(self, s) -> "DualElement":
        s = CycQ.coerce(s)
        return DualElement({m: s * c for m, c in self.terms.items()}, self.cutoff)

    def __rmul__(self, s):
        return self.scale(s)

    def truncate(self, cutoff: int) -> "DualElement":
        if self.cutoff is not None and cutoff > self.cutoff:
            raise ValueError(f"cannot extend a functional exact to {self.cutoff} up to {cutoff}")
        return DualElement({m: c for m, c in self.terms.items() if m.degree <= cutoff}, cutoff)

    def __eq__(self, other):
        """Equal as functionals on the labels both sides know exactly."""
        if not isinstance(other, DualElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, label: PBWMonomial) -> CycQ:
        return self.terms.get(label, ZERO)

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __repr__(self):
        inner = ", ".join(f"{m}: {c}" for m, c in self.sorted_items())
        return f"DualElement({{{inner}}}, cutoff={self.cutoff})"


class DualTensor:
    """Element of U(g)* (x) U(g)*, exact on label pairs of total degree <= cutoff."""

    __slots__ = ("terms", "cutoff")

    def __init__(self, terms=None, cutoff: Optional[int] = None):
        self.terms: Dict[Tuple[PBWMonomial, PBWMonomial], CycQ] = {
            k: CycQ.coerce(c) for k, c in dict(terms or {}).items() if c
        }
        self.cutoff = cutoff

    def coefficient(self, a: PBWMonomial, b: PBWMonomial) -> CycQ:
        return self.terms.get((a, b), ZERO)

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0].degree + kv[0][1].degree, monomial_key(kv[0][0]), monomial_key(kv[0][1])),
        )

    def __eq__(self, other):
        if not isinstance(other, DualTensor):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"DualTensor({len(self.terms)} terms, cutoff={self.cutoff})"


# constructors


def psi(spec: AlgebraSpec, x_exp=None, y_word=(), coeff=ONE) -> DualElement:
    """Dual basis vector of the PBW monomial X_{x_exp} Y_{y_word}."""
    x = tuple(x_exp) if x_exp is not None else (0,) * spec.p
    if len(x) != spec.p or any(a < 0 for a in x):
        raise ValueError(f"bad exponent vector {x}")
    y = tuple(y_word)
    if any(not 0 <= j < spec.n for j in y):
        raise ValueError(f"g1 index out of range in {y}")
    if not is_roby(y, 3):
        raise ValueError(f"{y} has a rise of length 3, not a basis label")
    return DualElement({PBWMonomial(x, y): coeff})


def theta(spec: AlgebraSpec, *word: int) -> DualElement:
    return psi(spec, None, word)


def alpha(spec: AlgebraSpec, *indices: int) -> DualElement:
    """alpha^{i1 i2 ...}: dual to the divided-power monomial with those X letters."""
    x = [0] * spec.p
    for i in indices:
        x[i] += 1
    return psi(spec, x, ())


def unit_functional(spec: AlgebraSpec) -> DualElement:
    return psi(spec)


# evaluation


def pair(f: DualElement, u: Element) -> CycQ:
    total = ZERO
    for m, c in u.terms.items():
        if f.cutoff is not None and m.degree > f.cutoff:
            raise ValueError(f"monomial of degree {m.degree} lies beyond the cutoff {f.cutoff}")
        v = f.terms.get(m)
        if v is not None:
            total = total + v * c
    return total


def dual_counit(f: DualElement) -> CycQ:
    return f.coefficient(PBWMonomial((0,) * _p_of(f), ())) if f.terms else ZERO


def _p_of(f: DualElement) -> int:
    return len(next(iter(f.terms)).x_exp)


# product


def _table(spec: AlgebraSpec, cutoff: int, pure_y: bool):
    """A -> [(B, Z, c)] for every term c A(x)B of Delta(Z), deg Z <= cutoff."""
    key = ("dual_table", cutoff, pure_y)
    tab = spec._cache.get(key)
    if tab is not None:
        return tab
    H = hopf(spec)
    if pure_y:
        zero = (0,) * spec.p
        labels = [
            PBWMonomial(zero, w)
            for k in range(cutoff + 1)
            for w in _roby_words(spec.n, k)
        ]
    else:
        labels = H.U.pbw_basis(cutoff)
    tab = {}
    for z in labels:
        for (a, b), c in H.coproduct_monomial(z).items():
            tab.setdefault(a, []).append((b, z, c))
    spec._cache[key] = tab
    return tab


def _roby_words(n: int, k: int):
    from .exterior import iter_roby_words

    if n == 0:
        return [()] if k == 0 else []
    return iter_roby_words(n, 3, k, alphabet=range(n))


def _is_pure_y(f: DualElement) -> bool:
    return all(not any(m.x_exp) for m in f.terms)


def dual_mul(f: DualElement, g: DualElement, spec: AlgebraSpec, cutoff: int) -> DualElement:
    """M(f, g)(Z) = (f (x) g)(Delta Z) for every label Z of degree <= cutoff."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    for h in (f, g):
        if h.cutoff is not None and h.cutoff < cutoff:
            raise ValueError(f"factor only exact up to {h.cutoff}, asked for {cutoff}")
    # X_b times anything keeps an X, so theta-only factors only see Y-only labels
    tab = _table(spec, cutoff, _is_pure_y(f) and _is_pure_y(g))
    out: Dict[PBWMonomial, CycQ] = {}
    gt = g.terms
    for a, fa in f.terms.items():
        for b, z, c in tab.get(a, ()):
            gb = gt.get(b)
            if gb is not None:
                _add_into(out, z, fa * gb * c)
    return DualElement(out, cutoff)


def dual_mul_many(factors: Sequence[DualElement], spec: AlgebraSpec, cutoff: int) -> DualElement:
    """Left-nested product M(M(f1, f2), f3)..., the unit functional when empty."""
    if not factors:
        return unit_functional(spec).truncate(cutoff)
    acc = factors[0].truncate(cutoff) if factors[0].cutoff is None else factors[0]
    for f in factors[1:]:
        acc = dual_mul(acc, f, spec, cutoff)
    return acc


# coproduct, antipode


def dual_coproduct(f: DualElement, spec: AlgebraSpec, cutoff: int) -> DualTensor:
    """(Delta f)(A (x) B) = f(A B) on label pairs with deg A + deg B <= cutoff."""
    if f.cutoff is not None and f.cutoff < cutoff:
        raise ValueError(f"functional only exact up to {f.cutoff}, asked for {cutoff}")
    U = engine(spec)
    grades = {m.grade for m in f.terms}
    by_deg: Dict[int, List[PBWMonomial]] = {}
    for m in U.pbw_basis(cutoff):
        by_deg.setdefault(m.degree, []).append(m)
    out: Dict[Tuple[PBWMonomial, PBWMonomial], CycQ] = {}
    ft = f.terms
    for da in range(cutoff + 1):
        for db in range(cutoff - da + 1):
            for a in by_deg[da]:
                for b in by_deg[db]:
                    # products are Z3-homogeneous
                    if (a.grade + b.grade) % 3 not in grades:
                        continue
                    v = ZERO
                    for m, c in U.mul_monomials(a, b).items():
                        fm = ft.get(m)
                        if fm is not None:
                            v = v + fm * c
                    if v:
                        out[(a, b)] = v
    return DualTensor(out, cutoff)


def dual_antipode(f: DualElement, spec: AlgebraSpec, cutoff: int) -> DualElement:
    """S*(f)(Z) = f(S(Z)) for labels Z of degree <= cutoff."""
    if f.cutoff is not None and f.cutoff < cutoff:
        raise ValueError(f"functional only exact up to {f.cutoff}, asked for {cutoff}")
    H = hopf(spec)
    grades = {m.grade for m in f.terms}
    out: Dict[PBWMonomial, CycQ] = {}
    for z in H.U.pbw_basis(cutoff):
        if z.grade not in grades:
            continue
        v = ZERO
        for m, c in H.antipode_monomial(z).items():
            fm = f.terms.get(m)
            if fm is not None:
                v = v + fm * c
        if v:
            out[z] = v
    return DualElement(out, cutoff)


# the exterior relations among the generators


def three_exterior_check(spec: AlgebraSpec, cutoff: int = 4) -> ValidationReport:
    """Symmetrised theta triples vanish, alpha generators commute."""
    if cutoff < 3:
        raise ValueError("the triple relations need cutoff >= 3")
    n, p = spec.n, spec.p
    checks = []

    def sym_triple(a, b, c):
        total = DualElement({}, cutoff)
        for perm in itertools.permutations((a, b, c)):
            fs = [theta(spec, j) for j in perm]
            total = total + dual_mul(dual_mul(fs[0], fs[1], spec, cutoff), fs[2], spec, cutoff)
        return total

    checks.append(_run(
        "theta_symmetrised_triples",
        itertools.combinations_with_replacement(range(n), 3),
        lambda *t: sym_triple(*t).terms,
    ))

    def commutator(i, j):
        ai, aj = alpha(spec, i), alpha(spec, j)
        return (dual_mul(ai, aj, spec, cutoff) - dual_mul(aj, ai, spec, cutoff)).terms

    checks.append(_run("alpha_commutative", itertools.combinations(range(p), 2), commutator))
    return ValidationReport(checks)


def _run(name, cases, fn) -> CheckResult:
    count = 0
    for case in cases:
        count += 1
        res = fn(*case)
        if res:
            return CheckResult(name, False, tuple(case), res)
    return CheckResult(name, True, detail=f"{count} cases")
