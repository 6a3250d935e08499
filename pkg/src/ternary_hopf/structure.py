"""Elementary Lie algebras of order three: g = g0 + g1.

An :class:`AlgebraSpec` holds sparse structure constants for the Lie bracket
on g0, the action of g0 on g1 and the totally symmetric triple bracket
g1 x g1 x g1 -> g0.  Vectors are dicts ``{basis index: CycQ}`` with no zero
entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .coeff import ONE, ZERO, CycQ

Vector = Dict[int, CycQ]

__all__ = [
    "AlgebraSpec",
    "CheckResult",
    "ValidationReport",
    "MatrixRep",
    "validate",
    "builtin_iso3",
    "builtin_killing",
    "killing_form",
    "sl2_constants",
    "builtin_killing_rank1",
    "builtin_matrix_rep",
    "check_representation",
    "BUILTINS",
    "get_builtin",
]


def _clean(vec) -> Vector:
    out = {}
    for k, c in vec.items():
        c = CycQ.coerce(c)
        if c:
            out[k] = c
    return out


def _axpy(acc: Vector, coeff, vec: Vector) -> None:
    """acc += coeff * vec, in place, dropping zeros."""
    for k, c in vec.items():
        v = acc.get(k, ZERO) + coeff * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


@dataclass(eq=False)
class AlgebraSpec:
    g0_names: Tuple[str, ...]
    g1_names: Tuple[str, ...]
    c00: Dict[Tuple[int, int], Vector] = field(default_factory=dict)
    c01: Dict[Tuple[int, int], Vector] = field(default_factory=dict)
    c111: Dict[Tuple[int, int, int], Vector] = field(default_factory=dict)
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.g0_names = tuple(self.g0_names)
        self.g1_names = tuple(self.g1_names)
        self.c00 = {tuple(k): _clean(v) for k, v in self.c00.items()}
        self.c01 = {tuple(k): _clean(v) for k, v in self.c01.items()}
        c111 = {}
        for k, v in self.c111.items():
            key = tuple(sorted(k))
            v = _clean(v)
            if key in c111 and c111[key] != v:
                raise ValueError(f"inconsistent triple bracket entries for {key}")
            c111[key] = v
        self.c111 = c111
        self.c00 = {k: v for k, v in self.c00.items() if v}
        self.c01 = {k: v for k, v in self.c01.items() if v}
        self.c111 = {k: v for k, v in self.c111.items() if v}
        self._check_bounds()

    def _check_bounds(self):
        p, n = self.p, self.n
        names = self.g0_names + self.g1_names
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for (i, j), v in self.c00.items():
            if not (0 <= i < p and 0 <= j < p) or any(not 0 <= k < p for k in v):
                raise ValueError(f"c00 entry {(i, j)} out of range")
        for (i, j), v in self.c01.items():
            if not (0 <= i < p and 0 <= j < n) or any(not 0 <= k < n for k in v):
                raise ValueError(f"c01 entry {(i, j)} out of range")
        for key, v in self.c111.items():
            if any(not 0 <= a < n for a in key) or any(not 0 <= k < p for k in v):
                raise ValueError(f"c111 entry {key} out of range")

    @property
    def p(self) -> int:
        return len(self.g0_names)

    @property
    def n(self) -> int:
        return len(self.g1_names)

    def bracket(self, i: int, j: int) -> Vector:
        """[X_i, X_j] as a vector over the g0 basis."""
        return self.c00.get((i, j), {})

    def action(self, i: int, j: int) -> Vector:
        """[X_i, Y_j] as a vector over the g1 basis."""
        return self.c01.get((i, j), {})

    def triple(self, a: int, b: int, c: int) -> Vector:
        """{Y_a, Y_b, Y_c} as a vector over the g0 basis (argument order irrelevant)."""
        return self.c111.get(tuple(sorted((a, b, c))), {})

    # linear extensions used by the checks

    def bracket_vec(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                _axpy(out, a * b, self.bracket(i, j))
        return out

    def action_vec(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                _axpy(out, a * b, self.action(i, j))
        return out

    def triple_vec(self, u: Vector, v: Vector, w: Vector) -> Vector:
        out: Vector = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for c, cc in w.items():
                    _axpy(out, ca * cb * cc, self.triple(a, b, c))
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (
            self.g0_names == other.g0_names
            and self.g1_names == other.g1_names
            and self.c00 == other.c00
            and self.c01 == other.c01
            and self.c111 == other.c111
        )

    __hash__ = object.__hash__

    def generator_names(self) -> Tuple[str, ...]:
        return self.g0_names + self.g1_names


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: Optional[Tuple[int, ...]] = None
    residual: Optional[dict] = None
    detail: str = ""
    # every failing case with its residual, when a check collects them all
    failures: List[Tuple[tuple, dict]] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = f"{status}  {self.name}"
        if self.detail:
            s += f"  ({self.detail})"
        if not self.passed and self.counterexample is not None:
            res = {k: str(v) for k, v in (self.residual or {}).items()}
            s += f"  counterexample={self.counterexample} residual={res}"
        return s


@dataclass
class ValidationReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> List[str]:
        return [c.name for c in self.checks]

    def __str__(self):
        return "\n".join(c.line() for c in self.checks)


def _run(name, cases, residual_fn) -> CheckResult:
    count = 0
    for case in cases:
        count += 1
        res = residual_fn(*case)
        if res:
            return CheckResult(name, False, tuple(case), res)
    return CheckResult(name, True, detail=f"{count} cases")


def _e(i: int) -> Vector:
    return {i: ONE}


def validate(spec: AlgebraSpec) -> ValidationReport:
    """Check the axioms of an elementary Lie algebra of order three.

    Checks run in a fixed order and stop at the first counterexample within
    each check; a failure is reported, never raised.
    """
    p, n = spec.p, spec.n
    checks = []

    def antisym(i, j):
        res = dict(spec.bracket(i, j))
        _axpy(res, ONE, spec.bracket(j, i))
        return res

    checks.append(_run("antisymmetry", itertools.combinations_with_replacement(range(p), 2), antisym))

    def jacobi(i, j, k):
        res: Vector = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            _axpy(res, ONE, spec.bracket_vec(_e(a), spec.bracket(b, c)))
        return res

    checks.append(_run("jacobi", itertools.combinations(range(p), 3), jacobi))

    def module(i, j, y):
        # [X_i,[X_j,Y]] - [X_j,[X_i,Y]] - [[X_i,X_j],Y]
        res = spec.action_vec(_e(i), spec.action(j, y))
        _axpy(res, -ONE, spec.action_vec(_e(j), spec.action(i, y)))
        _axpy(res, -ONE, spec.action_vec(spec.bracket(i, j), _e(y)))
        return res

    checks.append(
        _run(
            "module",
            ((i, j, y) for i, j in itertools.combinations(range(p), 2) for y in range(n)),
            module,
        )
    )

    def equivariance(x, a, b, c):
        res = spec.bracket_vec(_e(x), spec.triple(a, b, c))
        _axpy(res, -ONE, spec.triple_vec(spec.action(x, a), _e(b), _e(c)))
        _axpy(res, -ONE, spec.triple_vec(_e(a), spec.action(x, b), _e(c)))
        _axpy(res, -ONE, spec.triple_vec(_e(a), _e(b), spec.action(x, c)))
        return res

    checks.append(
        _run(
            "equivariance",
            (
                (x,) + t
                for x in range(p)
                for t in itertools.combinations_with_replacement(range(n), 3)
            ),
            equivariance,
        )
    )

    def fundamental(*ys):
        res: Vector = {}
        for j in range(4):
            rest = ys[:j] + ys[j + 1:]
            _axpy(res, ONE, spec.action_vec(spec.triple(*rest), _e(ys[j])))
        return res

    checks.append(
        _run("fundamental", itertools.combinations_with_replacement(range(n), 4), fundamental)
    )
    return ValidationReport(checks)


# ---------------------------------------------------------------------------
# builtins


def builtin_iso3(D: int) -> AlgebraSpec:
    """iso_3(1, D-1): Poincare algebra plus a vector of grade one."""
    if D < 1:
        raise ValueError("D must be positive")
    eta = [1] + [-1] * (D - 1)
    sep = "" if D <= 10 else "_"
    pairs = list(itertools.combinations(range(D), 2))
    lidx = {pr: k for k, pr in enumerate(pairs)}
    g0 = [f"L{m}{sep}{v}" for m, v in pairs] + [f"P{m}" for m in range(D)]
    g1 = [f"V{m}" for m in range(D)]
    P = lambda m: len(pairs) + m  # noqa: E731

    def L(m, v) -> Vector:
        # L_{mv} = -L_{vm}, L_{mm} = 0
        if m == v:
            return {}
        if m < v:
            return {lidx[(m, v)]: ONE}
        return {lidx[(v, m)]: -ONE}

    def g(a, b):
        return eta[a] if a == b else 0

    c00, c01, c111 = {}, {}, {}
    for (m, v), i in lidx.items():
        for (r, s), j in lidx.items():
            out: Vector = {}
            _axpy(out, g(v, s), L(r, m))
            _axpy(out, -g(m, s), L(r, v))
            _axpy(out, g(v, r), L(m, s))
            _axpy(out, -g(m, r), L(v, s))
            if out:
                c00[(i, j)] = out
        for r in range(D):
            out = {}
            _axpy(out, g(v, r), {P(m): ONE})
            _axpy(out, -g(m, r), {P(v): ONE})
            if out:
                c00[(i, P(r))] = out
                c00[(P(r), i)] = {k: -c for k, c in out.items()}
            vout: Vector = {}
            _axpy(vout, g(v, r), {m: ONE})
            _axpy(vout, -g(m, r), {v: ONE})
            if vout:
                c01[(i, r)] = vout
    for a, b, c in itertools.combinations_with_replacement(range(D), 3):
        out = {}
        _axpy(out, g(a, b), {P(c): ONE})
        _axpy(out, g(a, c), {P(b): ONE})
        _axpy(out, g(c, b), {P(a): ONE})
        if out:
            c111[(a, b, c)] = out
    return AlgebraSpec(tuple(g0), tuple(g1), c00, c01, c111, name=f"iso3_1_{D - 1}")


def killing_form(g0_constants: Dict[Tuple[int, int], Vector], dim: int) -> np.ndarray:
    """K(a, b) = tr(ad_a ad_b) computed from structure constants."""
    ad = []
    for a in range(dim):
        m = np.full((dim, dim), ZERO, dtype=object)
        for b in range(dim):
            for c, v in g0_constants.get((a, b), {}).items():
                m[c, b] = CycQ.coerce(v)
        ad.append(m)
    K = np.full((dim, dim), ZERO, dtype=object)
    for a in range(dim):
        for b in range(dim):
            K[a, b] = np.trace(ad[a].dot(ad[b]))
    return K


def sl2_constants() -> Dict[Tuple[int, int], Vector]:
    """Rank-one simple algebra in the basis (H, E, F)."""
    H, E, F = 0, 1, 2
    c = {
        (H, E): {E: CycQ(2)},
        (H, F): {F: CycQ(-2)},
        (E, F): {H: ONE},
    }
    for (a, b), v in list(c.items()):
        c[(b, a)] = {k: -x for k, x in v.items()}
    return c


def builtin_killing(
    g0_constants: Dict[Tuple[int, int], Vector],
    bilinear_form,
    g0_names: Optional[Sequence[str]] = None,
    g1_names: Optional[Sequence[str]] = None,
) -> AlgebraSpec:
    """g1 = adjoint copy of g0, {A_a,A_b,A_c} = g_ab J_c + g_ac J_b + g_bc J_a."""
    form = np.array(bilinear_form, dtype=object)
    dim = form.shape[0]
    if form.shape != (dim, dim):
        raise ValueError("bilinear form must be square")
    form = np.vectorize(CycQ.coerce, otypes=[object])(form) if dim else form
    for a in range(dim):
        for b in range(dim):
            if form[a, b] != form[b, a]:
                raise ValueError("bilinear form is not symmetric")
    g0 = list(g0_names) if g0_names else [f"J{a}" for a in range(dim)]
    g1 = list(g1_names) if g1_names else [f"A{a}" for a in range(dim)]
    c00 = {k: dict(v) for k, v in g0_constants.items()}
    c01 = {k: dict(v) for k, v in g0_constants.items()}
    c111 = {}
    for a, b, c in itertools.combinations_with_replacement(range(dim), 3):
        out: Vector = {}
        _axpy(out, form[a, b], {c: ONE})
        _axpy(out, form[a, c], {b: ONE})
        _axpy(out, form[b, c], {a: ONE})
        if out:
            c111[(a, b, c)] = out
    return AlgebraSpec(tuple(g0), tuple(g1), c00, c01, c111, name="killing")


def builtin_killing_rank1() -> AlgebraSpec:
    f = sl2_constants()
    spec = builtin_killing(f, killing_form(f, 3), ["H", "E", "F"], ["AH", "AE", "AF"])
    spec.name = "killing_rank1"
    return spec


# ---------------------------------------------------------------------------
# matrix model


@dataclass(eq=False)
class MatrixRep:
    dims: Tuple[int, ...]
    matrices: Dict[str, np.ndarray]

    @property
    def size(self) -> int:
        return sum(self.dims)


def _zeros(m: int) -> np.ndarray:
    return np.full((m, m), ZERO, dtype=object)


def _unit(m: int, i: int, j: int) -> np.ndarray:
    out = _zeros(m)
    out[i, j] = ONE
    return out


def _is_zero(mat: np.ndarray) -> bool:
    return not any(bool(x) for x in mat.flat)


def builtin_matrix_rep(m1: int, m2: int, m3: int) -> Tuple[AlgebraSpec, MatrixRep]:
    """Elementary algebra of block matrices; constants computed from the matrices."""
    dims = (m1, m2, m3)
    if min(dims) < 1:
        raise ValueError("block sizes must be positive")
    size = sum(dims)
    offs = [0, m1, m1 + m2]
    blocks = [range(offs[k], offs[k] + dims[k]) for k in range(3)]
    sep = "" if size < 10 else "_"

    def nm(i, j):
        return f"E{i + 1}{sep}{j + 1}"

    g0_pos = [(i, j) for b in blocks for i in b for j in b]
    # grade one: blocks (0 -> 1), (1 -> 2), (2 -> 0)
    g1_pos = [(i, j) for r, c in ((0, 1), (1, 2), (2, 0)) for i in blocks[r] for j in blocks[c]]
    mats0 = [_unit(size, i, j) for i, j in g0_pos]
    mats1 = [_unit(size, i, j) for i, j in g1_pos]
    idx0 = {pos: k for k, pos in enumerate(g0_pos)}
    idx1 = {pos: k for k, pos in enumerate(g1_pos)}

    def coords(mat, index) -> Vector:
        out = {}
        for (i, j), x in np.ndenumerate(mat):
            if x:
                if (i, j) not in index:
                    raise AssertionError("product left the expected grade")
                out[index[(i, j)]] = x
        return out

    c00, c01, c111 = {}, {}, {}
    for a, A in enumerate(mats0):
        for b, B in enumerate(mats0):
            v = coords(A.dot(B) - B.dot(A), idx0)
            if v:
                c00[(a, b)] = v
        for b, B in enumerate(mats1):
            v = coords(A.dot(B) - B.dot(A), idx1)
            if v:
                c01[(a, b)] = v
    for t in itertools.combinations_with_replacement(range(len(mats1)), 3):
        tot = _zeros(size)
        for s in itertools.permutations(t):
            tot = tot + mats1[s[0]].dot(mats1[s[1]]).dot(mats1[s[2]])
        v = coords(tot, idx0)
        if v:
            c111[t] = v
    g0 = tuple(nm(i, j) for i, j in g0_pos)
    g1 = tuple(nm(i, j) for i, j in g1_pos)
    spec = AlgebraSpec(g0, g1, c00, c01, c111, name=f"matrix_{m1}_{m2}_{m3}")
    rep = MatrixRep(dims, dict(zip(g0 + g1, mats0 + mats1)))
    return spec, rep


def check_representation(spec: AlgebraSpec, rep: MatrixRep) -> ValidationReport:
    """Check rho of brackets against commutators and symmetrised triple products."""
    size = rep.size
    for name in spec.generator_names():
        if name not in rep.matrices:
            raise ValueError(f"representation has no matrix for {name}")
        if rep.matrices[name].shape != (size, size):
            raise ValueError(f"matrix for {name} has shape {rep.matrices[name].shape}, expected {(size, size)}")
    R0 = [rep.matrices[nm] for nm in spec.g0_names]
    R1 = [rep.matrices[nm] for nm in spec.g1_names]

    def rho(vec: Vector, mats) -> np.ndarray:
        out = _zeros(size)
        for k, c in vec.items():
            out = out + c * mats[k]
        return out

    def residual(mat):
        return {ij: x for ij, x in np.ndenumerate(mat) if x}

    def r00(i, j):
        return residual(rho(spec.bracket(i, j), R0) - (R0[i].dot(R0[j]) - R0[j].dot(R0[i])))

    def r01(i, j):
        return residual(rho(spec.action(i, j), R1) - (R0[i].dot(R1[j]) - R1[j].dot(R0[i])))

    def r111(a, b, c):
        tot = _zeros(size)
        for s in itertools.permutations((a, b, c)):
            tot = tot + R1[s[0]].dot(R1[s[1]]).dot(R1[s[2]])
        return residual(rho(spec.triple(a, b, c), R0) - tot)

    p, n = spec.p, spec.n
    return ValidationReport(
        [
            _run("rep_bracket", itertools.product(range(p), range(p)), r00),
            _run("rep_action", itertools.product(range(p), range(n)), r01),
            _run("rep_triple", itertools.combinations_with_replacement(range(n), 3), r111),
        ]
    )


BUILTINS = {
    "iso3_1_0": lambda: builtin_iso3(1),
    "iso3_1_1": lambda: builtin_iso3(2),
    "iso3_1_2": lambda: builtin_iso3(3),
    "iso3_1_3": lambda: builtin_iso3(4),
    "killing_rank1": builtin_killing_rank1,
    "matrix_1_1_1": lambda: builtin_matrix_rep(1, 1, 1)[0],
    "matrix_2_1_1": lambda: builtin_matrix_rep(2, 1, 1)[0],
}


def get_builtin(name: str) -> AlgebraSpec:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin algebra {name!r}; known: {', '.join(sorted(BUILTINS))}") from None
