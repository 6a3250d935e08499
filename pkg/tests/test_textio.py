import json
import random
from importlib import resources

import pytest

from conftest import elem
from ternary_hopf.coeff import CycQ
from ternary_hopf.enveloping import engine
from ternary_hopf.structure import builtin_iso3, builtin_killing_rank1, validate
from ternary_hopf.textio import (
    ParseError,
    dump_algebra,
    load_algebra_text,
    parse_algebra,
    parse_dual,
    parse_element,
    parse_expr,
    render_dual,
    render_element,
    render_tensor,
)
from ternary_hopf.hopf import coproduct

SL2 = {
    "g0": ["H", "E", "F"],
    "g1": [],
    "c00": [
        {"left": "H", "right": "E", "out": [{"gen": "E", "coeff": 2}]},
        {"left": "H", "right": "F", "out": [{"gen": "F", "coeff": -2}]},
        {"left": "E", "right": "F", "out": [{"gen": "H", "coeff": 1}]},
    ],
}


def test_shipped_file_matches_builtin():
    path = resources.files("ternary_hopf") / "data" / "iso3_1_3.json"
    assert parse_algebra(str(path)) == builtin_iso3(4)


@pytest.mark.parametrize("spec", [builtin_iso3(3), builtin_killing_rank1()])
def test_dump_roundtrip(spec):
    assert load_algebra_text(dump_algebra(spec)) == spec


def test_plain_lie_algebra_file(tmp_path):
    f = tmp_path / "sl2.json"
    f.write_text(json.dumps(SL2))
    spec = parse_algebra(f)
    assert spec.n == 0 and validate(spec).ok
    # missing antisymmetric partners are filled in
    assert spec.bracket(1, 0) == {1: CycQ(-2)}


def test_unknown_generator_reported():
    doc = dict(SL2, c00=[{"left": "H", "right": "Z9", "out": []}])
    with pytest.raises(ParseError, match="Z9"):
        load_algebra_text(json.dumps(doc))


@pytest.mark.parametrize(
    "doc,msg",
    [
        ({"g0": ["A", "A"]}, "duplicate"),
        ({"g0": ["q"]}, "reserved"),
        ({"g0": ["1x"]}, "bad generator name"),
        ({"g0": ["A"], "extra": 1}, "unknown top-level"),
        ({"g0": ["A", "B"], "c00": [{"left": "A", "right": "B", "out": [{"gen": "A", "coeff": 0.5}]}]}, "strings"),
    ],
)
def test_bad_files(doc, msg):
    with pytest.raises(ParseError, match=msg):
        load_algebra_text(json.dumps(doc))


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as ei:
        load_algebra_text('{\n  "g0": ["A",\n  ]\n}')
    assert ei.value.line == 3 and ei.value.col is not None


def test_expression_basics(iso12):
    assert parse_element("P1^2", iso12) == parse_element("1/2*P1*P1", iso12)
    assert parse_element("V[1,2,1]", iso12) == parse_element("V1*V2*V1", iso12)
    assert parse_element("(1+q)*V0", iso12) == parse_element("-q^2*V0", iso12)
    assert parse_element("3", iso12) == parse_element("3*1", iso12)
    assert parse_expr("2*q", iso12).scalar_value() == CycQ(0, 2)


@pytest.mark.parametrize("bad", ["V1**2", "V1 +", "W3", "V[1,", "(V1", "V1 V2)"])
def test_expression_errors(bad, iso12):
    with pytest.raises(ParseError):
        parse_element(bad, iso12)


def test_error_column(iso12):
    with pytest.raises(ParseError) as ei:
        parse_element("V1 + W3", iso12)
    assert ei.value.col == 6


def test_render(iso12):
    u = elem("V[1,1,2]", iso12)
    assert render_element(u, iso12) == "-1/2*P2 - V[1,2,1] - V[2,1,1]"
    assert render_element(elem("(1+q)*L01*P0 - q*P0^2", iso12), iso12) == "(1+q)*L01*P0 - q*P0^2"
    assert render_element(elem("0", iso12), iso12) == "0"


def test_render_parse_roundtrip(iso12):
    U = engine(iso12)
    rng = random.Random(2)
    basis = U.pbw_basis(3)
    for _ in range(30):
        u = U.zero()
        for _ in range(3):
            u = u + U.from_monomial(rng.choice(basis), CycQ(rng.randint(-3, 3), rng.randint(-3, 3)) / rng.randint(1, 4))
        assert parse_element(render_element(u, iso12), iso12) == u


def test_render_tensor(iso12):
    text = render_tensor(coproduct(elem("V0", iso12), iso12), iso12)
    assert text == "(V[0] ⊗ 1) + (1 ⊗ V[0])"


def test_generic_names_render_as_products(killing):
    u = elem("AE*AF", killing)
    assert parse_element(render_element(u, killing), killing) == u


def test_dual_labels(iso12):
    f = parse_dual("theta[1,2] - 1/2*alpha[P1*L01^2] + q*Psi[P0 | 2,1]", iso12)
    assert parse_dual(render_dual(f, iso12), iso12) == f
    with pytest.raises(ParseError):
        parse_dual("theta[1,2,3]", iso12)
