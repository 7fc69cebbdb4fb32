"""Problem files: ambient ring, coefficient field and generator lists.

Example::

    # the running example
    ring(x, y)
    field Q
    I = [x^2, y^3 - x*y]
    J = []            # optional, defaults to the zero ideal
    a = [x, y]        # optional, defaults to the maximal ideal
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, ParseError
from .poly import Field, Polynomial, Ring, order_of

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[()\[\],=+\-*/^])"
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens, ring=None):
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, text):
        if self.tok.text == text and self.tok.kind in ("sym", "name"):
            return self.next()
        return None

    def expect(self, text):
        tok = self.accept(text)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def expect_kind(self, kind, what):
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        return self.next()

    # poly := [sign] term (sign term)*
    def poly(self):
        ring = self.ring
        total = {}
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            exp, coeff = self.term()
            total[exp] = total.get(exp, 0) + sign * coeff
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        return Polynomial(ring, total)

    # term := factor ("*" factor)*
    def term(self):
        exp = [0] * self.ring.nvars
        coeff = Fraction(1)
        while True:
            tok = self.tok
            if tok.kind == "num":
                self.next()
                value = Fraction(int(tok.text))
                if self.accept("/"):
                    den = self.expect_kind("num", "denominator")
                    if int(den.text) == 0:
                        raise self.error("zero denominator", den)
                    value /= int(den.text)
                coeff *= value
            elif tok.kind == "name":
                self.next()
                try:
                    k = self.ring.variables.index(tok.text)
                except ValueError:
                    raise self.error(f"unknown variable {tok.text!r}", tok) from None
                power = 1
                if self.accept("^"):
                    power = int(self.expect_kind("num", "exponent").text)
                exp[k] += power
            else:
                found = tok.text or "end of input"
                raise self.error(f"expected a coefficient or variable, found {found!r}")
            if not self.accept("*"):
                return tuple(exp), coeff


def parse_polynomial(text, ring):
    """Parse a single polynomial in ``ring``."""
    parser = _Parser(tokenize(text), ring)
    f = parser.poly()
    if parser.tok.kind != "eof":
        raise parser.error(f"unexpected {parser.tok.text!r} after polynomial")
    return f


@dataclass
class ProblemSpec:
    ring: Ring
    I: list
    J: list = field(default_factory=list)
    a: list | None = None

    @property
    def variables(self):
        return self.ring.variables

    @property
    def field(self):
        return self.ring.field

    def a_generators(self):
        """Generators of the ideal a; the maximal ideal when none were given."""
        return list(self.a) if self.a is not None else self.ring.gens

    def validate(self):
        for name, gens in (("I", self.I), ("J", self.J), ("a", self.a or [])):
            for g in gens:
                if g.ring != self.ring:
                    raise InputError(f"generator {g} of {name} lives in another ring")
                if g.is_zero():
                    raise InputError(f"zero generator in {name}; omit it instead")
                if order_of(g) < 1:
                    raise InputError(
                        f"generator {g} of {name} has order 0: it is a unit of the local "
                        "ring, so the ideal would be the whole ring"
                    )
        if not self.I:
            raise InputError("the ideal I needs at least one generator")
        return self


def parse_problem(text):
    parser = _Parser(tokenize(text))
    ring_names = field_ = None
    ideals = {}
    while parser.tok.kind != "eof":
        tok = parser.tok
        if tok.text == "ring" and tok.kind == "name":
            if ring_names is not None:
                raise parser.error("duplicate ring declaration")
            parser.next()
            parser.expect("(")
            names = [parser.expect_kind("name", "variable name").text]
            while parser.accept(","):
                names.append(parser.expect_kind("name", "variable name").text)
            parser.expect(")")
            if len(set(names)) != len(names):
                raise parser.error("duplicate variable name", tok)
            ring_names = names
        elif tok.text == "field" and tok.kind == "name":
            if field_ is not None:
                raise parser.error("duplicate field declaration")
            if ring_names is None:
                raise parser.error("field declared before ring")
            parser.next()
            if parser.accept("Q"):
                field_ = Field(0)
            elif parser.accept("Fp"):
                ptok = parser.expect_kind("num", "prime modulus")
                try:
                    field_ = Field(int(ptok.text))
                except InputError as exc:
                    raise parser.error(str(exc), ptok) from None
            else:
                raise parser.error("expected 'Q' or 'Fp <prime>'")
            parser.ring = Ring(tuple(ring_names), field_)
        elif tok.kind == "name" and tok.text in ("I", "J", "a"):
            if parser.ring is None:
                raise parser.error("ideal declared before ring and field")
            if tok.text in ideals:
                raise parser.error(f"duplicate section {tok.text}")
            parser.next()
            parser.expect("=")
            parser.expect("[")
            gens = []
            if not parser.accept("]"):
                gens.append(parser.poly())
                while parser.accept(","):
                    gens.append(parser.poly())
                parser.expect("]")
            ideals[tok.text] = gens
        else:
            raise parser.error(f"unexpected {tok.text!r}; expected ring, field, I, J or a")
    if parser.ring is None:
        raise ParseError("missing ring or field declaration")
    if "I" not in ideals:
        raise ParseError("missing ideal I")
    spec = ProblemSpec(parser.ring, ideals["I"], ideals.get("J", []), ideals.get("a"))
    return spec.validate()


def format_problem(spec):
    lines = [f"ring({', '.join(spec.variables)})", f"field {spec.field}"]
    lines.append(f"I = [{', '.join(map(str, spec.I))}]")
    if spec.J:
        lines.append(f"J = [{', '.join(map(str, spec.J))}]")
    if spec.a is not None:
        lines.append(f"a = [{', '.join(map(str, spec.a))}]")
    return "\n".join(lines) + "\n"
