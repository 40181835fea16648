"""Parser and canonical printer for the input language.

Files declare variables, a mode (series or sets), optional named set
bindings, and one equation per variable:

    vars T;
    mode series;
    T = x*(1 + T^2);     # binary trees

    vars Y;
    mode sets;
    Y = {1} | {1} + {2}*Y;
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .epset import (
    BUILTIN_SETS,
    ENUMERATED_SETS,
    EPSet,
    EnumeratedSet,
    IndexSet,
    ZERO,
    format_epset,
    member,
    normalize,
    singleton,
    sumset,
    union,
)
from .pseries import (
    Add,
    Const,
    Construct,
    Mul,
    Pow,
    PSSystem,
    SysExpr,
    Var,
    X,
)
from .setsys import GammaTerm, SetSystem
from .epset import POS

CONSTRUCT_NAMES = ("Seq", "MSet", "Cycle", "DCycle")
RESERVED = set(BUILTIN_SETS) | set(ENUMERATED_SETS) | set(CONSTRUCT_NAMES) | {
    "x",
    "vars",
    "mode",
    "set",
    "series",
    "sets",
}


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # NAME INT PUNCT EOF
    text: str
    line: int
    col: int


_PUNCT = set("=;,|+*^(){}[]/")


def _tokenize(text: str) -> list[Token]:
    toks = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("NAME", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            toks.append(Token("PUNCT", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.mode: Optional[str] = None
        self.variables: list[str] = []
        self.sets: dict[str, EPSet] = {}
        self.equations: dict[str, object] = {}

    # -- token plumbing

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    def fail(self, msg: str):
        t = self.peek()
        raise ParseError(msg, t.line, t.col)

    def at_punct(self, text: str, ahead: int = 0) -> bool:
        t = self.peek(ahead)
        return t.kind == "PUNCT" and t.text == text

    # -- file structure

    def parse_file(self):
        while self.peek().kind != "EOF":
            t = self.peek()
            if t.kind == "NAME" and t.text == "vars":
                self.next()
                self.variables.append(self._name("variable name"))
                while self.at_punct(","):
                    self.next()
                    self.variables.append(self._name("variable name"))
                self.expect(";")
            elif t.kind == "NAME" and t.text == "mode":
                self.next()
                m = self.next()
                if m.text not in ("series", "sets"):
                    raise ParseError("mode must be series or sets", m.line, m.col)
                self.mode = m.text
                self.expect(";")
            elif t.kind == "NAME" and t.text == "set":
                self.next()
                name = self._fresh_name("set name")
                self.expect("=")
                val = self.parse_setexpr()
                if not isinstance(val, EPSet):
                    self.fail("set bindings must be eventually periodic")
                self.expect(";")
                self.sets[name] = val
            elif t.kind == "NAME":
                self._parse_equation()
            else:
                self.fail(f"unexpected {t.text!r}")
        if not self.variables:
            self.fail("no variables declared")
        missing = [v for v in self.variables if v not in self.equations]
        if missing:
            self.fail(f"missing equation for {missing[0]}")
        if self.mode is None:
            self.mode = "series"
        if self.mode == "series":
            return PSSystem(
                tuple(self.variables),
                tuple(self.equations[v] for v in self.variables),
            )
        return SetSystem(
            tuple(self.variables),
            tuple(self.equations[v] for v in self.variables),
        )

    def _name(self, what: str) -> str:
        t = self.next()
        if t.kind != "NAME":
            raise ParseError(f"expected {what}", t.line, t.col)
        if t.text in RESERVED:
            raise ParseError(f"{t.text!r} is reserved", t.line, t.col)
        return t.text

    def _fresh_name(self, what: str) -> str:
        t = self.peek()
        name = self._name(what)
        if name in self.sets or name in self.variables:
            raise ParseError(f"{name!r} already declared", t.line, t.col)
        return name

    def _parse_equation(self):
        t = self.peek()
        name = self.next().text
        if name not in self.variables:
            raise ParseError(f"undeclared variable {name!r}", t.line, t.col)
        if name in self.equations:
            raise ParseError(f"duplicate equation for {name!r}", t.line, t.col)
        self.expect("=")
        if self.mode is None:
            self.fail("mode must be declared before equations")
        if self.mode == "series":
            rhs = self.parse_series_expr()
        else:
            rhs = self.parse_set_equation_rhs()
        self.expect(";")
        self.equations[name] = rhs

    # -- set expressions (pure, no variables)

    def parse_setexpr(self) -> EPSet:
        acc = self.parse_setatom(allow_enumerated=False)
        while self.at_punct("|"):
            self.next()
            acc = union(acc, self.parse_setatom(allow_enumerated=False))
        return acc

    def parse_setatom(self, allow_enumerated: bool = True) -> IndexSet:
        t = self.peek()
        if self.at_punct("("):
            self.next()
            val = self.parse_setexpr()
            self.expect(")")
            return val
        if self.at_punct("{"):
            self.next()
            elems = []
            if not self.at_punct("}"):
                elems.append(self._int())
                while self.at_punct(","):
                    self.next()
                    elems.append(self._int())
            self.expect("}")
            return normalize(elems)
        if t.kind == "INT":
            a = self._int()
            if self.at_punct("+") and self.peek(1).kind == "INT" and self._is_progression_tail(1):
                self.next()  # +
                p = self._int()
                self.expect("*")
                self.expect("N")
                return normalize((), [(a, p)])
            if self.at_punct("*") and self.peek(1).text == "N":
                self.next()
                self.next()
                return normalize((), [(0, a)])
            return singleton(a)
        if t.kind == "NAME":
            name = self.next().text
            if name in BUILTIN_SETS:
                return BUILTIN_SETS[name]
            if name in ENUMERATED_SETS:
                if not allow_enumerated:
                    raise ParseError(
                        f"{name} is enumeration-only and not allowed here", t.line, t.col
                    )
                return ENUMERATED_SETS[name]
            if name in self.sets:
                return self.sets[name]
            raise ParseError(f"unknown set {name!r}", t.line, t.col)
        raise ParseError("expected a set", t.line, t.col)

    def _is_progression_tail(self, ahead: int) -> bool:
        return (
            self.peek(ahead).kind == "INT"
            and self.at_punct("*", ahead + 1)
            and self.peek(ahead + 2).text == "N"
        )

    def _int(self) -> int:
        t = self.next()
        if t.kind != "INT":
            raise ParseError("expected a number", t.line, t.col)
        return int(t.text)

    # -- set equations

    def parse_set_equation_rhs(self) -> Tuple[GammaTerm, ...]:
        terms = [self.parse_set_term()]
        while self.at_punct("|"):
            self.next()
            terms.append(self.parse_set_term())
        return tuple(terms)

    def parse_set_term(self) -> GammaTerm:
        k = len(self.variables)
        base = ZERO
        exps: list[IndexSet] = [ZERO] * k
        has_base = False
        while True:
            t = self.peek()
            if t.kind == "NAME" and t.text in self.variables:
                self.next()
                j = self.variables.index(t.text)
                exps[j] = _exp_add(exps[j], singleton(1))
            else:
                atom = self.parse_setatom()
                if self.at_punct("*") and self.peek(1).kind == "NAME" and self.peek(1).text in self.variables:
                    self.next()
                    vt = self.next()
                    j = self.variables.index(vt.text)
                    exps[j] = _exp_add(exps[j], atom)
                else:
                    if isinstance(atom, EnumeratedSet):
                        raise ParseError(
                            "enumerated sets may only appear as exponents",
                            t.line,
                            t.col,
                        )
                    base = sumset(base, atom)
                    has_base = True
            if self.at_punct("+"):
                self.next()
                continue
            break
        if not has_base and all(isinstance(e, EPSet) and e == ZERO for e in exps):
            self.fail("empty term")
        return GammaTerm(base, tuple(exps))

    # -- series expressions

    def parse_series_expr(self) -> SysExpr:
        terms = [self.parse_series_product()]
        while self.at_punct("+"):
            self.next()
            terms.append(self.parse_series_product())
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def parse_series_product(self) -> SysExpr:
        factors = [self.parse_series_power()]
        while self.at_punct("*"):
            self.next()
            factors.append(self.parse_series_power())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def parse_series_power(self) -> SysExpr:
        base = self.parse_series_atom()
        if self.at_punct("^"):
            self.next()
            return Pow(base, self._int())
        return base

    def parse_series_atom(self) -> SysExpr:
        t = self.peek()
        if self.at_punct("("):
            self.next()
            val = self.parse_series_expr()
            self.expect(")")
            return val
        if t.kind == "INT":
            num = self._int()
            if self.at_punct("/"):
                self.next()
                den = self._int()
                if den == 0:
                    raise ParseError("zero denominator", t.line, t.col)
                return Const(Fraction(num, den))
            return Const(Fraction(num))
        if t.kind == "NAME":
            name = self.next().text
            if name == "x":
                return X()
            if name in CONSTRUCT_NAMES:
                index: IndexSet = POS
                if self.at_punct("["):
                    self.next()
                    atom = self.parse_setatom()
                    while isinstance(atom, EPSet) and self.at_punct("|"):
                        self.next()
                        nxt = self.parse_setatom(allow_enumerated=False)
                        atom = union(atom, nxt)
                    index = atom
                    self.expect("]")
                self.expect("(")
                arg = self.parse_series_expr()
                self.expect(")")
                return Construct(name, index, arg)
            if name in self.variables:
                return Var(self.variables.index(name))
            raise ParseError(f"unknown name {name!r}", t.line, t.col)
        raise ParseError("expected an expression", t.line, t.col)


def _exp_add(a: IndexSet, b: IndexSet) -> IndexSet:
    if isinstance(a, EPSet) and a == ZERO:
        return b
    if isinstance(b, EPSet) and b == ZERO:
        return a
    if isinstance(a, EPSet) and isinstance(b, EPSet):
        return sumset(a, b)
    raise ValueError("cannot combine enumerated exponent sets")


def parse(text: str) -> Union[PSSystem, SetSystem]:
    """Parse an input file into a series or set system."""
    return _Parser(text).parse_file()


# ---------------------------------------------------------------------------
# canonical printing


def _fmt_index(e: IndexSet) -> str:
    if isinstance(e, EnumeratedSet):
        return e.name
    s = format_epset(e)
    if e.period is not None or " | " in s:
        return f"({s})"
    return s


def _fmt_base(b: EPSet) -> str:
    s = format_epset(b)
    if b.period is not None or " | " in s:
        return f"({s})"
    return s


def print_set_system(sys: SetSystem) -> str:
    lines = [f"vars {', '.join(sys.variables)};", "mode sets;"]
    for name, eq in zip(sys.variables, sys.equations):
        terms = []
        for t in eq:
            pieces = []
            exp_pieces = []
            for j, e in enumerate(t.exponents):
                if isinstance(e, EPSet) and e == ZERO:
                    continue
                if isinstance(e, EPSet) and e == singleton(1):
                    exp_pieces.append(sys.variables[j])
                else:
                    exp_pieces.append(f"{_fmt_index(e)}*{sys.variables[j]}")
            if t.base != ZERO or not exp_pieces:
                pieces.append(_fmt_base(t.base))
            pieces.extend(exp_pieces)
            terms.append(" + ".join(pieces))
        lines.append(f"{name} = {' | '.join(terms)};")
    return "\n".join(lines) + "\n"


def _fmt_series(e: SysExpr, vars: Tuple[str, ...], prec: int = 0) -> str:
    # precedence: 0 add, 1 mul, 2 pow, 3 atom
    if isinstance(e, Const):
        v = e.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return s
    if isinstance(e, X):
        return "x"
    if isinstance(e, Var):
        return vars[e.index]
    if isinstance(e, Add):
        s = " + ".join(_fmt_series(t, vars, 1) for t in e.terms)
        return f"({s})" if prec > 0 else s
    if isinstance(e, Mul):
        s = "*".join(_fmt_series(f, vars, 2) for f in e.factors)
        return f"({s})" if prec > 1 else s
    if isinstance(e, Pow):
        s = f"{_fmt_series(e.base, vars, 3)}^{e.exp}"
        return f"({s})" if prec > 2 else s
    if isinstance(e, Construct):
        if isinstance(e.index, EPSet) and e.index == POS:
            bracket = ""
        else:
            bracket = f"[{format_epset(e.index) if isinstance(e.index, EPSet) else e.index.name}]"
        return f"{e.kind}{bracket}({_fmt_series(e.arg, vars, 0)})"
    raise TypeError(repr(e))


def print_series_system(sys: PSSystem) -> str:
    lines = [f"vars {', '.join(sys.variables)};", "mode series;"]
    for name, rhs in zip(sys.variables, sys.right_sides):
        lines.append(f"{name} = {_fmt_series(rhs, sys.variables)};")
    return "\n".join(lines) + "\n"


def print_system(sys: Union[PSSystem, SetSystem]) -> str:
    """Canonical rendering; parse(print_system(s)) is structurally s."""
    if isinstance(sys, PSSystem):
        return print_series_system(sys)
    return print_set_system(sys)
