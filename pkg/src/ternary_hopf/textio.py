"""Reading and writing algebras, expressions and results as text.

Algebra files are JSON::

    {"g0": ["H", ...], "g1": ["A", ...],
     "c00":  [{"left": "H", "right": "E", "out": [{"gen": "E", "coeff": "2"}]}],
     "c01":  [...same shape...],
     "c111": [{"left": ..., "mid": ..., "right": ..., "out": [...]}]}

Expressions use generator names, ``*`` or juxtaposition for products,
``+``/``-``, parentheses, rationals and ``q``.  ``X^k`` is the divided power
X^k/k!, and ``V[1,2,1]`` is the word V1 V2 V1 when the g1 names share a
prefix followed by integers.  Output uses the same syntax, so every printed
element parses back to itself.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, CycQ, Q
from .enveloping import Element, PBWMonomial, _add_into, engine
from .structure import AlgebraSpec

__all__ = [
    "ParseError",
    "Expr",
    "parse_algebra",
    "load_algebra_text",
    "dump_algebra",
    "parse_expr",
    "parse_element",
    "parse_dual",
    "render_coeff",
    "render_monomial",
    "render_element",
    "render_tensor",
    "render_dual",
    "render_dual_tensor",
    "machine_lines",
    "y_prefix",
]

RESERVED = {"q", "theta", "alpha", "Psi"}
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Bad input text; ``line``/``col`` are 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}, column {col}: "
        elif col is not None:
            where = f"column {col}: "
        super().__init__(where + message)


# algebra files


def parse_algebra(path) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return load_algebra_text(text, name=str(path))


def _coeff_value(raw, where: str) -> CycQ:
    if isinstance(raw, bool):
        raise ParseError(f"{where}: coefficient must be a number or string")
    if isinstance(raw, int):
        return CycQ(raw)
    if isinstance(raw, float):
        raise ParseError(f"{where}: write non-integer coefficients as strings like \"1/2\"")
    if isinstance(raw, str):
        try:
            return CycQ.parse(raw)
        except ValueError as e:
            raise ParseError(f"{where}: {e}") from None
    raise ParseError(f"{where}: coefficient must be a number or string")


def load_algebra_text(text: str, name: str = "") -> AlgebraSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object with keys g0, g1, c00, c01, c111")
    unknown = set(doc) - {"g0", "g1", "c00", "c01", "c111", "name"}
    if unknown:
        raise ParseError(f"unknown top-level keys: {sorted(unknown)}")

    def names(key):
        val = doc.get(key, [])
        if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
            raise ParseError(f"{key} must be a list of names")
        return val

    g0, g1 = names("g0"), names("g1")
    seen = set()
    for nm in g0 + g1:
        if not _NAME_RE.match(nm):
            raise ParseError(f"bad generator name {nm!r}")
        if nm in RESERVED:
            raise ParseError(f"generator name {nm!r} is reserved")
        if nm in seen:
            raise ParseError(f"duplicate generator name {nm!r}")
        seen.add(nm)
    i0 = {nm: i for i, nm in enumerate(g0)}
    i1 = {nm: i for i, nm in enumerate(g1)}

    def ref(table, nm, where, what):
        if nm not in table:
            raise ParseError(f"{where}: unknown {what} generator {nm!r}")
        return table[nm]

    def records(key, arg_tables, out_table, out_what):
        val = doc.get(key, [])
        if not isinstance(val, list):
            raise ParseError(f"{key} must be a list of records")
        fields = ("left", "mid", "right") if len(arg_tables) == 3 else ("left", "right")
        out = []
        for n, rec in enumerate(val):
            where = f"{key}[{n}]"
            if not isinstance(rec, dict):
                raise ParseError(f"{where}: expected an object")
            extra = set(rec) - set(fields) - {"out"}
            if extra:
                raise ParseError(f"{where}: unexpected fields {sorted(extra)}")
            args = []
            for fld, (table, what) in zip(fields, arg_tables):
                if fld not in rec:
                    raise ParseError(f"{where}: missing {fld!r}")
                args.append(ref(table, rec[fld], where, what))
            vec: Dict[int, CycQ] = {}
            terms = rec.get("out", [])
            if not isinstance(terms, list):
                raise ParseError(f"{where}: 'out' must be a list")
            for t in terms:
                if not isinstance(t, dict) or "gen" not in t:
                    raise ParseError(f"{where}: out entries need 'gen' and 'coeff'")
                g = ref(out_table, t["gen"], where, out_what)
                if g in vec:
                    raise ParseError(f"{where}: generator {t['gen']!r} listed twice")
                vec[g] = _coeff_value(t.get("coeff", 1), where)
            out.append((tuple(args), vec, where))
        return out

    c00: Dict[Tuple[int, int], Dict[int, CycQ]] = {}
    given = set()
    for (i, j), vec, where in records("c00", [(i0, "g0"), (i0, "g0")], i0, "g0"):
        if (i, j) in given:
            raise ParseError(f"{where}: duplicate bracket [{g0[i]}, {g0[j]}]")
        given.add((i, j))
        c00[(i, j)] = vec
    # fill in antisymmetric partners that were left out
    for (i, j) in list(c00):
        if (j, i) not in given:
            c00[(j, i)] = {k: -c for k, c in c00[(i, j)].items()}

    c01 = {}
    for (i, j), vec, where in records("c01", [(i0, "g0"), (i1, "g1")], i1, "g1"):
        if (i, j) in c01:
            raise ParseError(f"{where}: duplicate action [{g0[i]}, {g1[j]}]")
        c01[(i, j)] = vec

    c111 = {}
    for key, vec, where in records("c111", [(i1, "g1")] * 3, i0, "g0"):
        key = tuple(sorted(key))
        if key in c111:
            raise ParseError(f"{where}: duplicate triple bracket for {[g1[k] for k in key]}")
        c111[key] = vec

    label = doc.get("name") or name
    try:
        return AlgebraSpec(tuple(g0), tuple(g1), c00, c01, c111, name=str(label))
    except ValueError as e:
        raise ParseError(str(e)) from None


def dump_algebra(spec: AlgebraSpec) -> str:
    """JSON text that :func:`load_algebra_text` reads back to an equal spec."""

    def out(vec, names):
        return [{"gen": names[k], "coeff": str(c)} for k, c in sorted(vec.items())]

    g0, g1 = spec.g0_names, spec.g1_names
    doc = {
        "name": spec.name,
        "g0": list(g0),
        "g1": list(g1),
        "c00": [
            {"left": g0[i], "right": g0[j], "out": out(v, g0)}
            for (i, j), v in sorted(spec.c00.items())
            if i < j
        ],
        "c01": [{"left": g0[i], "right": g1[j], "out": out(v, g1)} for (i, j), v in sorted(spec.c01.items())],
        "c111": [
            {"left": g1[a], "mid": g1[b], "right": g1[c], "out": out(v, g0)}
            for (a, b, c), v in sorted(spec.c111.items())
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


# tokens

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*^()\[\],|]|⊗))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", col=pos + 1)
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.start(kind)
        if tok == "**":
            raise ParseError("'**' is not an operator; use '^' for divided powers", col=start + 1)
        toks.append(_Tok(kind, tok, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def y_prefix(spec: AlgebraSpec) -> Optional[str]:
    """Common prefix P with every g1 name equal to P + integer, if there is one."""
    names = spec.g1_names
    if not names:
        return None
    m = re.match(r"(.*?)(\d+)\Z", names[0])
    if not m or not m.group(1):
        return None
    prefix = m.group(1)
    for nm in names:
        rest = nm[len(prefix):]
        if not nm.startswith(prefix) or not rest.isdigit() or str(int(rest)) != rest:
            return None
    return prefix


# free-algebra expressions


class Expr:
    """Parsed expression as a noncommutative polynomial ``{word: CycQ}``."""

    def __init__(self, terms: Optional[Dict[Tuple[int, ...], CycQ]] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @staticmethod
    def scalar(c) -> "Expr":
        return Expr({(): CycQ.coerce(c)})

    def __add__(self, other: "Expr") -> "Expr":
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return Expr(out)

    def __neg__(self) -> "Expr":
        return Expr({w: -c for w, c in self.terms.items()})

    def __mul__(self, other: "Expr") -> "Expr":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(out, w1 + w2, c1 * c2)
        return Expr(out)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def scalar_value(self) -> CycQ:
        return self.terms.get((), ZERO)

    def __eq__(self, other):
        return isinstance(other, Expr) and self.terms == other.terms

    def __repr__(self):
        return f"Expr({self.terms})"


class _Parser:
    def __init__(self, text: str, spec: AlgebraSpec):
        self.text = text
        self.spec = spec
        self.toks = _tokenize(text)
        self.i = 0
        self.p = spec.p
        self.prefix = y_prefix(spec)
        self.lookup = {nm: k for k, nm in enumerate(spec.g0_names)}
        self.lookup.update({nm: spec.p + k for k, nm in enumerate(spec.g1_names)})

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        raise ParseError(msg, col=tok.pos + 1)

    def take(self, text: Optional[str] = None, kind: Optional[str] = None) -> _Tok:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def at(self, *texts: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def done(self):
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")

    # element grammar

    def expr(self) -> Expr:
        sign = 1
        if self.at("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.at("+", "-"):
            op = self.take().text
            t = self.term()
            acc = acc + (-t if op == "-" else t)
        return acc

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> Expr:
        acc = self.factor()
        while True:
            if self.at("*"):
                self.take()
                if not self._starts_factor():
                    self.error("expected a factor after '*'")
                acc = acc * self.factor()
            elif self._starts_factor():
                acc = acc * self.factor()
            else:
                return acc

    def _power(self) -> Optional[int]:
        if not self.at("^"):
            return None
        self.take()
        t = self.take(kind="num")
        if "/" in t.text:
            self.error("exponent must be a non-negative integer", t)
        return int(t.text)

    def factor(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.take()
            if self.at("^"):
                self.error("'^' applies to generators and q only")
            return Expr.scalar(Fraction(t.text))
        if t.kind == "op" and t.text == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            if self.at("^"):
                self.error("'^' applies to generators and q only")
            return inner
        if t.kind == "name":
            self.take()
            if t.text == "q":
                k = self._power()
                return Expr.scalar(Q ** (1 if k is None else k))
            if self.at("["):
                return self.bracket_word(t)
            if t.text not in self.lookup:
                self.error(f"unknown generator {t.text!r}", t)
            letter = self.lookup[t.text]
            k = self._power()
            if k is None:
                return Expr({(letter,): ONE})
            # divided power
            return Expr({(letter,) * k: CycQ(Fraction(1, math.factorial(k)))})
        self.error("expected a generator, number or '('" if t.kind != "end" else "unexpected end of input")

    def y_index(self) -> int:
        t = self.tok
        if t.kind == "num" and self.prefix is not None and "/" not in t.text:
            self.take()
            nm = self.prefix + str(int(t.text))
        elif t.kind == "name":
            self.take()
            nm = t.text
        else:
            self.error("expected a g1 index")
        if nm not in self.spec.g1_names:
            self.error(f"unknown g1 generator {nm!r}", t)
        return self.spec.g1_names.index(nm)

    def y_list(self, closer: str = "]") -> Tuple[int, ...]:
        out = []
        if self.at(closer):
            return ()
        out.append(self.y_index())
        while self.at(","):
            self.take()
            out.append(self.y_index())
        return tuple(out)

    def bracket_word(self, head: _Tok) -> Expr:
        if self.prefix is None or head.text != self.prefix:
            self.error(f"{head.text!r}[...] needs g1 names of the form {head.text}<integer>", head)
        self.take("[")
        ys = self.y_list()
        self.take("]")
        if self.at("^"):
            self.error("'^' applies to generators and q only")
        return Expr({tuple(self.p + j for j in ys): ONE})

    # dual grammar

    def x_monomial(self, closers) -> Tuple[int, ...]:
        exps = [0] * self.p
        if self.tok.kind == "op" and self.tok.text in closers:
            return tuple(exps)
        while True:
            t = self.take(kind="name")
            if t.text not in self.spec.g0_names:
                self.error(f"unknown g0 generator {t.text!r}", t)
            k = self._power()
            exps[self.spec.g0_names.index(t.text)] += 1 if k is None else k
            if self.at("*"):
                self.take()
                continue
            if self.tok.kind == "name":
                continue
            return tuple(exps)

    def dual_label(self) -> PBWMonomial:
        from .exterior import is_roby

        t = self.take(kind="name")
        self.take("[")
        if t.text == "theta":
            x, y = (0,) * self.p, self.y_list()
        elif t.text == "alpha":
            x, y = self.x_monomial(("]",)), ()
        elif t.text == "Psi":
            x = self.x_monomial(("|",))
            self.take("|")
            y = self.y_list()
        else:
            self.error(f"expected theta[...], alpha[...] or Psi[...], found {t.text!r}", t)
        self.take("]")
        if not is_roby(y, 3):
            self.error("dual labels need rise-free g1 words", t)
        return PBWMonomial(tuple(x), tuple(y))

    def dual_expr(self) -> Dict[PBWMonomial, CycQ]:
        out: Dict[PBWMonomial, CycQ] = {}
        sign = 1
        if self.at("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        while True:
            coeff = CycQ(sign)
            label = None
            while True:
                t = self.tok
                if t.kind == "name" and t.text in ("theta", "alpha", "Psi"):
                    if label is not None:
                        self.error("cannot multiply two dual labels here; use dual-mul", t)
                    label = self.dual_label()
                elif self._starts_factor():
                    f = self.factor()
                    if not f.is_scalar():
                        self.error("only scalars may multiply a dual label", t)
                    coeff = coeff * f.scalar_value()
                else:
                    self.error("expected a scalar or a dual label")
                if self.at("*"):
                    self.take()
                    continue
                if self._starts_factor():
                    continue
                break
            if label is None:
                label = PBWMonomial((0,) * self.p, ())
            _add_into(out, label, coeff)
            if self.at("+", "-"):
                sign = -1 if self.take().text == "-" else 1
                continue
            return out


def parse_expr(text: str, spec: AlgebraSpec) -> Expr:
    ps = _Parser(text, spec)
    if ps.tok.kind == "end":
        raise ParseError("empty expression", col=1)
    e = ps.expr()
    ps.done()
    return e


def parse_element(text: str, spec: AlgebraSpec) -> Element:
    """Parse and bring to PBW normal form."""
    return engine(spec).normalize(parse_expr(text, spec).terms)


def parse_dual(text: str, spec: AlgebraSpec, cutoff: Optional[int] = None):
    from .dual import DualElement

    ps = _Parser(text, spec)
    if ps.tok.kind == "end":
        raise ParseError("empty expression", col=1)
    terms = ps.dual_expr()
    ps.done()
    return DualElement(terms, cutoff)


# rendering


def render_coeff(c: CycQ) -> str:
    s = c.render()
    return s if c.is_simple() else f"({s})"


def _y_part(spec: AlgebraSpec, y: Sequence[int]) -> str:
    prefix = y_prefix(spec)
    if prefix is not None:
        return f"{prefix}[{','.join(spec.g1_names[j][len(prefix):] for j in y)}]"
    return "*".join(spec.g1_names[j] for j in y)


def _x_part(spec: AlgebraSpec, x: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(x):
        if a == 1:
            parts.append(spec.g0_names[i])
        elif a > 1:
            parts.append(f"{spec.g0_names[i]}^{a}")
    return "*".join(parts)


def render_monomial(m: PBWMonomial, spec: AlgebraSpec) -> str:
    parts = [s for s in (_x_part(spec, m.x_exp), _y_part(spec, m.y_word) if m.y_word else "") if s]
    return "*".join(parts) or "1"


def _join(terms: List[Tuple[CycQ, str, bool]]) -> str:
    """Terms are (coeff, body, body_is_unit); gives 'a - 2*b + (1+q)*c'."""
    if not terms:
        return "0"
    out = []
    for k, (c, body, unit) in enumerate(terms):
        neg = c.is_simple() and (c.a < 0 if c.b == 0 else (c.a == 0 and c.b < 0))
        mag = -c if neg else c
        if unit:
            piece = render_coeff(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{render_coeff(mag)}*{body}"
        if k == 0:
            out.append(f"-{piece}" if neg else piece)
        else:
            out.append(f" - {piece}" if neg else f" + {piece}")
    return "".join(out)


def render_element(u: Element, spec: AlgebraSpec) -> str:
    return _join([(c, render_monomial(m, spec), m.is_unit()) for m, c in u.sorted_items()])


def render_tensor(t, spec: AlgebraSpec) -> str:
    return _join(
        [(c, f"({render_monomial(a, spec)} ⊗ {render_monomial(b, spec)})", False) for (a, b), c in t.sorted_items()]
    )


def render_label(m: PBWMonomial, spec: AlgebraSpec) -> str:
    if m.is_unit():
        return "1"
    if not any(m.x_exp):
        return f"theta[{_y_index_list(spec, m.y_word)}]"
    if not m.y_word:
        return f"alpha[{_x_part(spec, m.x_exp)}]"
    return f"Psi[{_x_part(spec, m.x_exp)} | {_y_index_list(spec, m.y_word)}]"


def _y_index_list(spec: AlgebraSpec, y: Sequence[int]) -> str:
    prefix = y_prefix(spec)
    if prefix is not None:
        return ",".join(spec.g1_names[j][len(prefix):] for j in y)
    return ",".join(spec.g1_names[j] for j in y)


def render_dual(f, spec: AlgebraSpec) -> str:
    return _join([(c, render_label(m, spec), m.is_unit()) for m, c in f.sorted_items()])


def render_dual_tensor(t, spec: AlgebraSpec) -> str:
    return _join(
        [(c, f"({render_label(a, spec)} ⊗ {render_label(b, spec)})", False) for (a, b), c in t.sorted_items()]
    )


def machine_lines(obj, spec: AlgebraSpec) -> List[str]:
    """One line per term, coefficient TAB label, in canonical order."""
    from .dual import DualElement, DualTensor
    from .hopf import TensorElement

    if isinstance(obj, Element):
        return [f"{c.render()}\t{render_monomial(m, spec)}" for m, c in obj.sorted_items()]
    if isinstance(obj, TensorElement):
        return [
            f"{c.render()}\t{render_monomial(a, spec)} ⊗ {render_monomial(b, spec)}"
            for (a, b), c in obj.sorted_items()
        ]
    if isinstance(obj, DualElement):
        return [f"{c.render()}\t{render_label(m, spec)}" for m, c in obj.sorted_items()]
    if isinstance(obj, DualTensor):
        return [
            f"{c.render()}\t{render_label(a, spec)} ⊗ {render_label(b, spec)}"
            for (a, b), c in obj.sorted_items()
        ]
    if isinstance(obj, CycQ):
        return [obj.render()]
    raise TypeError(f"no machine format for {type(obj).__name__}")
