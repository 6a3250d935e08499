import pytest

from ternary_hopf.coeff import CycQ
from ternary_hopf.hopf import TensorElement
from ternary_hopf.structure import builtin_iso3, builtin_killing_rank1
from ternary_hopf.textio import parse_element, parse_expr

# acceptance lines collected during the run, printed in the terminal summary
ACCEPTANCE = []


def record(label, ok, note=""):
    line = f"{'PASS' if ok else 'FAIL'}  {label}"
    if note:
        line += f"  [{note}]"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def iso11():
    return builtin_iso3(2)


@pytest.fixture(scope="session")
def iso12():
    return builtin_iso3(3)


@pytest.fixture(scope="session")
def iso13():
    return builtin_iso3(4)


@pytest.fixture(scope="session")
def killing():
    return builtin_killing_rank1()


def scalar(text, spec):
    e = parse_expr(text, spec)
    assert e.is_scalar()
    return e.scalar_value()


def mono(text, spec):
    """The single PBW monomial an expression like 'V[1,2]' or 'P1' stands for."""
    u = parse_element(text, spec)
    ((m, c),) = u.items()
    assert c == 1
    return m


def tensor(spec, rows):
    """rows of (coeff, left, right) strings, summed."""
    out = {}
    for c, a, b in rows:
        key = (mono(a, spec), mono(b, spec))
        out[key] = out.get(key, CycQ(0)) + scalar(c, spec)
    return TensorElement(out)


def elem(text, spec):
    return parse_element(text, spec)
