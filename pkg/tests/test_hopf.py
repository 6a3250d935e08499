import itertools
import random

import pytest

from conftest import elem, mono, tensor
from ternary_hopf.coeff import ONE, Q, ZERO, q_pow
from ternary_hopf.enveloping import engine
from ternary_hopf.hopf import (
    TensorElement,
    antipode,
    check_antipode,
    check_coassoc,
    check_counit,
    check_grading,
    check_multiplicativity,
    check_primitive,
    coproduct,
    counit,
    hopf,
    hopf_check,
    twisted_mul,
)


def _t(spec, a, b, c=ONE):
    return TensorElement({(mono(a, spec), mono(b, spec)): c})


def test_twisted_mul_braiding(iso12):
    s = twisted_mul(_t(iso12, "1", "V1"), _t(iso12, "V2", "1"), iso12)
    assert s == _t(iso12, "V2", "V1", Q)
    # even legs do not pick up a phase
    s = twisted_mul(_t(iso12, "1", "P1"), _t(iso12, "V2", "1"), iso12)
    assert s == _t(iso12, "V2", "P1")


def test_twisted_mul_associative(iso12):
    H = hopf(iso12)
    rng = random.Random(3)
    basis = H.U.pbw_basis(2)
    for _ in range(20):
        a, b, c = (TensorElement({(rng.choice(basis), rng.choice(basis)): ONE}) for _ in range(3))
        assert H.twisted_mul(H.twisted_mul(a, b), c) == H.twisted_mul(a, H.twisted_mul(b, c))


def test_coproduct_of_generators(iso12):
    for g in ["V0", "P1", "L12"]:
        assert check_primitive(elem(g, iso12), iso12)
    assert not check_primitive(elem("V[1,2]", iso12), iso12)
    assert not check_primitive(elem("P1*P2", iso12), iso12)
    assert coproduct(elem("1", iso12), iso12) == _t(iso12, "1", "1")


def test_coproduct_two_ys(iso12):
    got = coproduct(elem("V[1,2]", iso12), iso12)
    want = tensor(iso12, [("1", "V[1,2]", "1"), ("1", "1", "V[1,2]"), ("1", "V1", "V2"), ("q", "V2", "V1")])
    assert got == want


def test_divided_power_coproduct(iso12):
    # Delta(P0^(2)) = P0^(2) (x) 1 + P0 (x) P0 + 1 (x) P0^(2)
    got = coproduct(elem("P0^2", iso12), iso12)
    assert got == tensor(iso12, [("1", "P0^2", "1"), ("1", "P0", "P0"), ("1", "1", "P0^2")])


def test_counit(iso12):
    assert counit(elem("3 + V1 - P0", iso12), iso12) == 3
    assert counit(elem("V[1,1,2]", iso12), iso12) == ZERO


def test_antipode_examples(iso12):
    assert antipode(elem("V[1,2]", iso12), iso12) == elem("q*V[2,1]", iso12)
    assert antipode(elem("L01", iso12), iso12) == elem("-L01", iso12)
    assert antipode(elem("V1", iso12), iso12) == elem("-V1", iso12)
    assert antipode(elem("1", iso12), iso12) == elem("1", iso12)


def test_antipode_axiom_on_two_ys(iso12):
    H = hopf(iso12)
    for m in [mono("V[1,2]", iso12), mono("V[2,1,2]", iso12), mono("P0*V1", iso12)]:
        assert not H.antipode_residual(m)


@pytest.mark.parametrize(
    "check",
    [check_coassoc, check_counit, check_grading, check_antipode],
)
def test_axioms_killing(check, killing):
    report = check(killing, 3)
    assert report.ok, str(report)


def test_multiplicativity_killing(killing):
    assert check_multiplicativity(killing, 3, pairs=60, seed=1).ok


def test_full_report(iso11):
    report = hopf_check(iso11, 3, pairs=50)
    assert report.ok, str(report)
    assert "antipode_anti_multiplicative" in report.names()


def test_antipode_failures_collected(iso11):
    res = check_antipode(iso11, 2)["antipode"]
    assert res.passed and res.failures == []


def test_word_expansion_matches_coproduct(iso12):
    H = hopf(iso12)
    U = H.U
    rng = random.Random(11)
    for _ in range(40):
        w = tuple(rng.randrange(9) for _ in range(rng.randint(0, 4)))
        assert H.coproduct_word(w) == H.coproduct(U.normalize(w))


def _jumps(left, right, shuffle):
    """q exponent of a shuffle: each right-leg letter counts the left-leg letters after it."""
    n = 0
    for k, side in enumerate(shuffle):
        if side == "R":
            n += sum(1 for s in shuffle[k + 1:] if s == "L")
    return n


def test_jump_count_example():
    # (111) left, (222) right, shuffled into (121221)
    assert _jumps((1, 1, 1), (2, 2, 2), "LRLRRL") == 4
    assert q_pow(4) == Q


def _subset_coproduct(U, word, sign):
    out = {}
    for mask in itertools.product((True, False), repeat=len(word)):
        shuffle = "".join("L" if m else "R" for m in mask)
        lw = tuple(l for l, m in zip(word, mask) if m)
        rw = tuple(l for l, m in zip(word, mask) if not m)
        ph = q_pow(sign * _jumps(lw, rw, shuffle))
        for a, x in U.normalize(lw).items():
            for b, y in U.normalize(rw).items():
                out[(a, b)] = out.get((a, b), ZERO) + ph * x * y
    return TensorElement(out)


def test_jump_count_reading_of_the_y_coproduct(iso12):
    U = engine(iso12)
    p = iso12.p
    words = [w for k in range(1, 5) for w in itertools.product(range(3), repeat=k)]
    for w in words:
        yw = tuple(p + j for j in w)
        assert _subset_coproduct(U, yw, +1) == coproduct(U.normalize(yw), iso12)
    v12 = (p + 1, p + 2)
    assert _subset_coproduct(U, v12, -1) != coproduct(U.normalize(v12), iso12)
