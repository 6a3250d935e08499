"""End-to-end acceptance checks.  Each check prints one PASS/FAIL line (also
repeated in the pytest terminal summary).  All comparisons are exact.

Two reference expansions and one reference table row carry misprints; they are
checked literally (expected to fail, marked xfail) next to the corrected
hand-derived values (which must pass).
"""

import itertools
import math
import random
import time

import pytest

from conftest import elem, record, scalar, tensor
from ternary_hopf.coeff import CycQ
from ternary_hopf.dual import alpha, dual_mul_many, theta, three_exterior_check
from ternary_hopf.enveloping import PBWMonomial, engine
from ternary_hopf.exterior import is_roby, roby_dim
from ternary_hopf.hopf import check_antipode, check_primitive, hopf
from ternary_hopf.oracle import oracle_reduce, truncation
from ternary_hopf.structure import (
    AlgebraSpec,
    builtin_iso3,
    builtin_killing_rank1,
    builtin_matrix_rep,
    check_representation,
    validate,
)

# tolerances: none, everything is exact rational / cyclotomic arithmetic
TIME_COPRODUCT_1212 = 1.0
TIME_HOPF_SUITE = 60.0
TIME_ORACLE = 300.0


def brute_roby(d, k):
    return sum(1 for w in itertools.product(range(d), repeat=k) if is_roby(w, 3))


def inclusion_exclusion_roby(d, k):
    """Count words with no non-decreasing window of length 3 by inclusion-exclusion
    over sets of window start positions."""
    if k < 3:
        return d ** k
    starts = range(k - 2)
    total = 0
    for r in range(len(starts) + 1):
        for chosen in itertools.combinations(starts, r):
            links = [False] * (k - 1)  # links[i]: s[i] <= s[i+1] forced
            for s in chosen:
                links[s] = links[s + 1] = True
            # maximal chains of forced links are non-decreasing blocks
            count = 1
            i = 0
            while i < k:
                j = i
                while j < k - 1 and links[j]:
                    j += 1
                size = j - i + 1
                count *= math.comb(d + size - 1, size)
                i = j + 1
            total += (-1) ** r * count
    return total


def test_roby_dimensions():
    got = tuple(roby_dim(2, 3, k) for k in range(7))
    ok = got == (1, 2, 4, 4, 5, 4, 5) and roby_dim(4, 3, 3) == 44
    record("roby dimensions: d=2 k=0..6 is (1,2,4,4,5,4,5), d=4 k=3 is 44", ok, f"got {got}, {roby_dim(4, 3, 3)}")
    assert ok


def test_roby_discrepancy_probe():
    dp = roby_dim(4, 3, 4)
    brute = brute_roby(4, 4)
    ie = inclusion_exclusion_roby(4, 4)
    ok = dp == brute == ie == 131
    record("roby dim d=4 k=4: DP = brute force over 256 words = inclusion-exclusion = 131", ok, f"{dp}, {brute}, {ie}")
    # the reference value 256 counts all words, not the rise-free ones
    rec = record("roby dim d=4 k=4 disagrees with the stated reference value 256 (recorded conflict)", dp != 256)
    assert ok and rec


def test_pbw_reduction_golden(iso13):
    U = engine(iso13)
    got = U.normalize(U.word("V1", "V1", "V2"))
    expected = elem("-1/2*P2 - V[1,2,1] - V[2,1,1]", iso13)
    p2 = iso13.g0_names.index("P2")
    x = [0] * iso13.p
    x[p2] = 1
    ok = got == expected and got.coefficient(PBWMonomial(tuple(x), ())) == CycQ(-1, 0) / 2
    record("normal form of V1 V1 V2 in iso3(1,3) is -1/2 P2 - V121 - V211", ok)
    assert ok


# coproducts

V11 = [("1", "V[1,1]", "1"), ("1+q", "V[1]", "V[1]"), ("1", "1", "V[1,1]")]
V12 = [("1", "V[1,2]", "1"), ("1", "V[1]", "V[2]"), ("q", "V[2]", "V[1]"), ("1", "1", "V[1,2]")]
V221_REFERENCE = [
    ("1", "V[2,2,1]", "1"),
    ("1", "V[2,2]", "V[1]"),
    ("q+q^2", "V[2,1]", "V[2]"),
    ("q+q^2", "V[1]", "V[2,2]"),
    ("1", "V[2]", "V[2,1]"),
    ("1", "1", "V[2,2,1]"),
]
# V1 (x) V22 comes from one subset only, so its coefficient is a single power of q
V221_CORRECTED = [
    ("1", "V[2,2,1]", "1"),
    ("1", "V[2,2]", "V[1]"),
    ("q+q^2", "V[2,1]", "V[2]"),
    ("q^2", "V[1]", "V[2,2]"),
    ("1+q", "V[2]", "V[2,1]"),
    ("1", "1", "V[2,2,1]"),
]
BRACKET_BLOCK = [
    ("-1/2*q", "V[2]", "P2"),
    ("-1/2*q^2", "V[1]", "P1"),
    ("-1/2*q", "P1", "V[1]"),
    ("-1/2*q^2", "P2", "V[2]"),
]
_V1212_COMMON = [
    ("1", "V[1,2,1,2]", "1"),
    ("1", "V[1]", "V[2,1,2]"),
    ("-q", "V[2]", "V[1,2,1]"),
    ("-q", "V[2]", "V[2,1,1]"),
    ("-q^2", "V[1]", "V[2,1,2]"),
    ("-q^2", "V[1]", "V[2,2,1]"),
    ("1", "V[2]", "V[1,2,1]"),
    ("1", "V[1,2]", "V[1,2]"),
    ("q", "V[1,1]", "V[2,2]"),
    ("q^2", "V[1,2]", "V[2,1]"),
    ("q^2", "V[2,1]", "V[1,2]"),
    ("1", "V[2,2]", "V[1,1]"),
    ("q", "V[1,2]", "V[1,2]"),
    ("1", "V[1,2,1]", "V[2]"),
    ("-q", "V[2,2,1]", "V[1]"),
    ("-q^2", "V[1,2,1]", "V[2]"),
    ("-q^2", "V[2,1,1]", "V[2]"),
    ("1", "V[2,1,2]", "V[1]"),
    ("1", "1", "V[1,2,1,2]"),
] + BRACKET_BLOCK
V1212_REFERENCE = _V1212_COMMON + [("-q", "V[2,1,1]", "V[1]")]
# same letters as the word: the misprinted V211 (x) V1 must be V212 (x) V1
V1212_CORRECTED = _V1212_COMMON + [("-q", "V[2,1,2]", "V[1]")]


def _cop(spec, word):
    H = hopf(spec)
    return H.coproduct(elem(word, spec))


def test_coproduct_v11_v12(iso13):
    ok11 = _cop(iso13, "V1*V1") == tensor(iso13, V11)
    ok12 = _cop(iso13, "V1*V2") == tensor(iso13, V12)
    record("coproduct of V11 term for term", ok11)
    record("coproduct of V12 term for term", ok12)
    assert ok11 and ok12


@pytest.mark.xfail(strict=True, reason="reference expansion of V221 has an impossible coefficient on V1 (x) V22")
def test_coproduct_v221_reference(iso13):
    ok = _cop(iso13, "V2*V2*V1") == tensor(iso13, V221_REFERENCE)
    record("coproduct of V221 equals the reference expansion literally", ok, "known misprint, see corrected line")
    assert ok


def test_coproduct_v221_corrected(iso13):
    ok = _cop(iso13, "V2*V2*V1") == tensor(iso13, V221_CORRECTED)
    record("coproduct of V221 equals the hand-derived corrected expansion", ok)
    assert ok


@pytest.mark.xfail(strict=True, reason="reference expansion of V1212 has one term with the wrong letters")
def test_coproduct_v1212_reference(iso13):
    ok = _cop(iso13, "V1*V2*V1*V2") == tensor(iso13, V1212_REFERENCE)
    record("coproduct of V1212 equals the reference expansion literally", ok, "known misprint, see corrected line")
    assert ok


def test_coproduct_v1212_corrected(iso13):
    spec = builtin_iso3(4)  # fresh caches so the timing is honest
    t0 = time.perf_counter()
    got = _cop(spec, "V1*V2*V1*V2")
    dt = time.perf_counter() - t0
    ok_full = got == tensor(spec, V1212_CORRECTED)
    block = tensor(spec, BRACKET_BLOCK)
    ok_block = all(got.coefficient(k) == c for k, c in block.items())
    record("coproduct of V1212: bracket correction block -1/2(qV2(x)P2 + q^2V1(x)P1 + qP1(x)V1 + q^2P2(x)V2)", ok_block)
    record("coproduct of V1212 equals the corrected expansion (19 terms)", ok_full)
    record(f"coproduct of V1212 in under {TIME_COPRODUCT_1212:g} s", dt < TIME_COPRODUCT_1212, f"{dt:.3f} s")
    assert ok_full and ok_block and dt < TIME_COPRODUCT_1212


def test_hopf_axiom_suite():
    spec = builtin_iso3(3)
    H = hopf(spec)
    t0 = time.perf_counter()
    basis = H.U.pbw_basis(3)
    bad = {}
    for m in basis:
        if H.coassoc_residual(m):
            bad.setdefault("coassociativity", m)
        if H.counit_residual(m):
            bad.setdefault("counit", m)
        if H.grade_residual(m):
            bad.setdefault("grading", m)
    rng = random.Random(2024)
    pairs = 0
    while pairs < 200:
        a, b = rng.choice(basis), rng.choice(basis)
        if a.degree + b.degree > 3:
            continue
        pairs += 1
        if H.multiplicativity_residual(a, b):
            bad.setdefault("multiplicativity", (a, b))
    dt = time.perf_counter() - t0
    ok = not bad and dt < TIME_HOPF_SUITE
    record(
        "Hopf axioms on iso3(1,2) up to degree 3: coassociativity, both counit laws, "
        "multiplicativity on 200 random pairs, grading",
        ok,
        f"{len(basis)} monomials, {dt:.1f} s" + (f", failures {sorted(bad)}" if bad else ""),
    )
    assert ok


def test_primitivity(iso12):
    U = engine(iso12)
    p, n = iso12.p, iso12.n
    bad = []
    for i in range(p):
        for g in range(p + n):
            x, y = U.element_of_letter(i), U.element_of_letter(g)
            u = U.mul(x, y) - U.mul(y, x)
            if not check_primitive(u, iso12):
                bad.append((i, g))
    for a, b, c in itertools.combinations_with_replacement(range(n), 3):
        w = {}
        for perm in itertools.permutations((p + a, p + b, p + c)):
            w[perm] = w.get(perm, 0) + 1
        u = U.normalize(w)
        if not check_primitive(u, iso12):
            bad.append((a, b, c))
    ok = not bad
    record("normalised [X,G] and symmetrised {Y,Y,Y} are primitive in iso3(1,2)", ok, f"failures {bad}" if bad else "")
    assert ok


# dual product tables


def _theta_terms(spec, rows):
    out = {}
    for c, word in rows:
        m = PBWMonomial((0,) * spec.p, tuple(word))
        out[m] = out.get(m, CycQ(0)) + scalar(c, spec)
    return {k: v for k, v in out.items() if v}


def _dual_identities(spec, cutoff):
    """Every generator identity; returns {name: ok} (row 1 of the six-row table
    is checked both as given and corrected)."""
    n = spec.n
    T = lambda *w: theta(spec, *w)
    M = lambda *fs: dual_mul_many(list(fs), spec, cutoff)
    res = {}
    pairs = itertools.permutations(range(n), 2)
    res["M(theta^a, theta^b) = theta^ab + q theta^ba"] = all(
        M(T(a), T(b)).terms == _theta_terms(spec, [("1", (a, b)), ("q", (b, a))]) for a, b in pairs
    ) and all(M(T(a), T(a)).terms == _theta_terms(spec, [("1+q", (a, a))]) for a in range(n))
    res["M(theta^j, theta^jj) = 0"] = all(not M(T(j), T(j, j)).terms for j in range(n))
    ok2 = True
    for a, b in itertools.combinations(range(n), 2):
        ok2 &= M(T(a), T(a, b)).terms == _theta_terms(spec, [("q^2", (a, b, a))])
        ok2 &= M(T(a), T(b, a)).terms == _theta_terms(spec, [("1", (a, b, a)), ("-1", (b, a, a))])
        ok2 &= M(T(b), T(a, a)).terms == _theta_terms(spec, [("1", (b, a, a)), ("q", (a, b, a))])
    res["two-equal-index products M(theta^a, theta^ab), M(theta^a, theta^ba), M(theta^b, theta^aa)"] = ok2
    rows_seen = set()
    ok3 = True
    for j1, j2, j3 in itertools.permutations(range(n), 3):
        cand = [("1", (j1, j2, j3)), ("q", (j2, j1, j3)), ("q^2", (j2, j3, j1))]
        dropped = [k for k, (_, w) in enumerate(cand) if not is_roby(w, 3)]
        rows_seen.add(tuple(dropped))
        keep = [c for k, c in enumerate(cand) if k not in dropped]
        ok3 &= M(T(j1), T(j2, j3)).terms == _theta_terms(spec, keep)
    res["M(theta^a, theta^bc), distinct indices, all four cases"] = ok3 and rows_seen == {(), (0,), (1,), (2,)}
    ok4 = True
    for a, b in itertools.combinations(range(n), 2):
        ok4 &= M(T(a), T(a), T(b)).terms == _theta_terms(spec, [("-1", (a, b, a)), ("-q", (b, a, a))])
        ok4 &= M(T(a), T(b), T(a)).terms == _theta_terms(spec, [("2", (a, b, a)), ("-1", (b, a, a))])
        ok4 &= M(T(b), T(a), T(a)).terms == _theta_terms(spec, [("-1", (a, b, a)), ("-q^2", (b, a, a))])
    res["triple products with two equal indices"] = ok4
    six_rows = {
        (0, 1, 2): [("q^2", (1, 2, 0)), ("q^2", (2, 0, 1)), ("q", (0, 2, 1)), ("q", (1, 0, 2)), ("1", (2, 0, 1))],
        (1, 2, 0): [("1", (1, 2, 0)), ("q^2", (2, 0, 1)), ("1", (0, 2, 1)), ("q", (1, 0, 2)), ("q", (2, 1, 0))],
        (2, 0, 1): [("q^2", (1, 2, 0)), ("1", (2, 0, 1)), ("q", (0, 2, 1)), ("1", (1, 0, 2)), ("q", (2, 1, 0))],
        (0, 2, 1): [("1", (1, 2, 0)), ("q", (2, 0, 1)), ("1", (0, 2, 1)), ("q^2", (1, 0, 2)), ("q^2", (2, 1, 0))],
        (1, 0, 2): [("q", (1, 2, 0)), ("1", (2, 0, 1)), ("q^2", (0, 2, 1)), ("1", (1, 0, 2)), ("q^2", (2, 1, 0))],
        (2, 1, 0): [("q", (1, 2, 0)), ("q", (2, 0, 1)), ("q^2", (0, 2, 1)), ("q^2", (1, 0, 2)), ("1", (2, 1, 0))],
    }
    row1_fixed = [("q^2", (1, 2, 0)), ("q^2", (2, 0, 1)), ("q", (0, 2, 1)), ("q", (1, 0, 2)), ("1", (2, 1, 0))]
    ok_rows = ok_row1_lit = ok_row1_fix = True
    for js in itertools.combinations(range(n), 3):
        sub = lambda rows: [(c, tuple(js[i] for i in w)) for c, w in rows]
        for order, rows in six_rows.items():
            got = M(*(T(js[i]) for i in order)).terms
            if order == (0, 1, 2):
                ok_row1_lit &= got == _theta_terms(spec, sub(rows))
                ok_row1_fix &= got == _theta_terms(spec, sub(row1_fixed))
            else:
                ok_rows &= got == _theta_terms(spec, sub(rows))
    res["six-row table, distinct indices, rows 2-6 as given"] = ok_rows
    res["six-row table, row 1 corrected (last term theta^{j3 j2 j1})"] = ok_row1_fix
    res["six-row table, row 1 as given"] = ok_row1_lit
    sym = three_exterior_check(spec, cutoff)
    res["symmetrised theta triples vanish"] = sym["theta_symmetrised_triples"].passed
    res["alpha generators commute"] = sym["alpha_commutative"].passed
    ok_a = True
    p = spec.p
    for k in (1, 2, 3):
        for idx in itertools.combinations_with_replacement(range(p), k):
            for order in set(itertools.permutations(idx)):
                ok_a &= M(*(alpha(spec, i) for i in order)).terms == alpha(spec, *idx).terms
    res["M(alpha^i1, ..., alpha^ik) = alpha^{i1...ik} for k <= 3"] = ok_a
    return res


@pytest.fixture(scope="module")
def dual_tables():
    spec = builtin_iso3(4)
    return _dual_identities(spec, 4), _dual_identities(spec, 5)


_ROW1_LITERAL = "six-row table, row 1 as given"


def test_dual_product_tables(dual_tables):
    at4, at5 = dual_tables
    ok_all = True
    for name, ok in at4.items():
        if name == _ROW1_LITERAL:
            continue
        stable = at5[name] == ok
        record(f"dual tables (cutoff 4, stable at 5): {name}", ok and stable)
        ok_all &= ok and stable
    assert ok_all


@pytest.mark.xfail(strict=True, reason="reference row 1 lists theta^{j3 j1 j2} twice; the second is theta^{j3 j2 j1}")
def test_dual_product_table_row1_literal(dual_tables):
    at4, at5 = dual_tables
    ok = at4[_ROW1_LITERAL] and at5[_ROW1_LITERAL]
    record(f"dual tables: {_ROW1_LITERAL}", ok, "known misprint, see corrected line")
    assert ok


def test_oracle_equivalence():
    t0 = time.perf_counter()
    s11 = builtin_iso3(2)
    U = engine(s11)
    letters = s11.p + s11.n
    mismatches = []
    count = 0
    for k in range(5):
        for w in itertools.product(range(letters), repeat=k):
            count += 1
            if oracle_reduce(w, s11, 4) != U.normalize(w):
                mismatches.append(w)
    s12 = builtin_iso3(3)
    U2 = engine(s12)
    rng = random.Random(7)
    for _ in range(500):
        w = tuple(rng.randrange(s12.p + s12.n) for _ in range(rng.randint(0, 4)))
        if oracle_reduce(w, s12, 4) != U2.normalize(w):
            mismatches.append(w)
    dt = time.perf_counter() - t0
    ok = not mismatches and dt < TIME_ORACLE
    record(
        f"engine = elimination oracle on all {count} words of degree <= 4 over iso3(1,1) and 500 random iso3(1,2) words",
        ok,
        f"{dt:.1f} s",
    )
    assert ok


def test_validation():
    specs = {f"iso3 D={d}": builtin_iso3(d) for d in (2, 3, 4)}
    specs["killing_rank1"] = builtin_killing_rank1()
    specs["matrix_1_1_1"] = builtin_matrix_rep(1, 1, 1)[0]
    bad = [k for k, s in specs.items() if not validate(s).ok]
    reps_ok = all(check_representation(*builtin_matrix_rep(*d)).ok for d in ((1, 1, 1), (2, 1, 1)))
    base = builtin_iso3(4)
    c111 = {k: dict(v) for k, v in base.c111.items()}
    v1 = base.g1_names.index("V1")
    c111[(v1, v1, v1)] = {0: CycQ(1)}
    broken = AlgebraSpec(base.g0_names, base.g1_names, base.c00, base.c01, c111, name="perturbed")
    caught = not validate(broken)["fundamental"].passed
    ok = not bad and reps_ok and caught
    record("validate passes on iso3(1,1..3), killing_rank1, matrix_1_1_1", not bad, f"failing {bad}" if bad else "")
    record("matrix representations check out for (1,1,1) and (2,1,1)", reps_ok)
    record("a perturbed triple bracket is caught by the fundamental identity check", caught)
    assert ok


def _convolution(p, d, k):
    return sum(math.comb(i + p - 1, p - 1) * roby_dim(d, 3, k - i) for i in range(k + 1))


def test_pbw_dimension_identity():
    spec = builtin_iso3(3)
    U = engine(spec)
    expected = [_convolution(spec.p, spec.n, k) for k in range(6)]
    counted = [len(U.pbw_basis_exact(k)) for k in range(6)]
    # independent witness: codimension of the truncated ideal, per degree
    tr = truncation(spec, 5)
    letters = spec.p + spec.n
    by_len = [0] * 6
    for w in tr.pivots:
        by_len[len(w)] += 1
    codim = [letters ** k - by_len[k] for k in range(6)]
    ok = counted == expected and codim == expected
    record(
        "filtered dimension of U(iso3(1,2)) in degrees 0..5 equals the g0-monomial / Roby convolution",
        ok,
        f"{expected}",
    )
    assert ok


def test_antipode_probe():
    spec = builtin_iso3(3)
    report = check_antipode(spec, 3)
    res = report["antipode"]
    ok = res.passed and not res.failures
    record("antipode axiom probe on iso3(1,2) up to degree 3", ok, res.detail)
    assert ok
