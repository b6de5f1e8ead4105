"""Text syntax for field elements, forms and norms.

Elements: integers, field symbols (``t``, ``s``, ``w``, ``mu``...), ``+ - * / ^``
and parentheses, e.g. ``(1/2)*t^-1 + 5*t^2``.

Forms::

    diag(a, b, ...)          diagonal form
    [[c11, c12], [0, c22]]   upper-triangular Gram data
    norm(u)                  r^2 - r s + u s^2
    hyp(n)                   n hyperbolic planes
    scale(a, f)   sum(f, g, ...)

Norms: ``norm{basis=[[...], ...], values=[(0,0), (1/2,0)]}``; the basis
rows are the splitting vectors in ambient coordinates.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .quadratic_forms import QuadraticForm, norm_form
from .valued_fields import Field, FieldError
from .valuegroup import ValueGroupElement


class LiteralError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, F: Field | None = None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.F = F
        self.symbols = F.symbols if F is not None else {}

    # token helpers -------------------------------------------------------
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise LiteralError(msg, self.text, tok[2])

    def accept(self, value):
        tok = self.peek()
        if tok[0] in ("op", "name") and tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            tok = self.peek()
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")

    def done(self):
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")

    # elements ------------------------------------------------------------
    def expr(self):
        F = self.F
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = F.add(acc, self.term())
            elif self.accept("-"):
                acc = F.sub(acc, self.term())
            else:
                return acc

    def term(self):
        F = self.F
        acc = self.unary()
        while True:
            if self.accept("*"):
                acc = F.mul(acc, self.unary())
            elif self.peek()[1] == "/" and self.peek()[0] == "op":
                tok = self.peek()
                self.i += 1
                d = self.unary()
                if F.is_zero(d):
                    self.error("division by zero", tok)
                acc = F.div(acc, d)
            else:
                return acc

    def unary(self):
        if self.accept("-"):
            return self.F.neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            tok = self.peek()
            e = self.signed_int()
            if e < 0 and self.F.is_zero(base):
                self.error("negative power of zero", tok)
            return self.F.pow(base, e)
        return base

    def signed_int(self):
        sign = -1 if self.accept("-") else 1
        if self.accept("("):
            v = self.signed_int()
            self.expect(")")
            return sign * v
        tok = self.peek()
        if tok[0] != "num":
            self.error("expected an integer exponent")
        self.i += 1
        return sign * int(tok[1])

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.i += 1
            return self.F.from_int(int(tok[1]))
        if tok[0] == "name":
            if tok[1] not in self.symbols:
                self.error(f"unknown symbol {tok[1]!r} for field {self.F}")
            self.i += 1
            return self.symbols[tok[1]]
        if self.accept("("):
            v = self.expr()
            self.expect(")")
            return v
        self.error(f"unexpected {tok[1] or 'end of input'!r}")

    # forms ---------------------------------------------------------------
    def form(self) -> QuadraticForm:
        F = self.F
        tok = self.peek()
        if self.accept("["):
            rows = [self.row()]
            while self.accept(","):
                rows.append(self.row())
            self.expect("]")
            if any(len(r) != len(rows) for r in rows):
                self.error("Gram data must be square", tok)
            try:
                return QuadraticForm(F, rows)
            except ValueError as exc:
                self.error(str(exc), tok)
        if tok[0] != "name":
            self.error("expected a form")
        name = tok[1]
        self.i += 1
        self.expect("(")
        if name == "diag":
            entries = [] if self.peek()[1] == ")" else self.expr_list()
            out = QuadraticForm.diagonal(F, entries)
        elif name == "norm":
            out = norm_form(F, self.expr())
        elif name == "hyp":
            n = self.signed_int()
            if n < 0:
                self.error("hyp needs n >= 0", tok)
            out = QuadraticForm.hyperbolic(F, n)
        elif name == "scale":
            a = self.expr()
            self.expect(",")
            f = self.form()
            if F.is_zero(a):
                self.error("scaling by zero", tok)
            out = f.scale(a)
        elif name == "sum":
            out = self.form()
            while self.accept(","):
                out = out.orthogonal_sum(self.form())
        else:
            self.error(f"unknown form constructor {name!r}", tok)
        self.expect(")")
        return out

    def row(self):
        self.expect("[")
        r = self.expr_list()
        self.expect("]")
        return r

    def expr_list(self):
        out = [self.expr()]
        while self.accept(","):
            out.append(self.expr())
        return out

    # norms ---------------------------------------------------------------
    def rational(self):
        sign = -1 if self.accept("-") else 1
        tok = self.peek()
        if tok[0] != "num":
            self.error("expected a rational number")
        self.i += 1
        v = Fraction(int(tok[1]))
        if self.accept("/"):
            tok = self.peek()
            if tok[0] != "num" or int(tok[1]) == 0:
                self.error("expected a positive denominator")
            self.i += 1
            v /= int(tok[1])
        return sign * v

    def value(self):
        if self.accept("("):
            coords = [self.rational()]
            while self.accept(","):
                coords.append(self.rational())
            self.expect(")")
            return ValueGroupElement(coords)
        return ValueGroupElement([self.rational()])

    def norm(self):
        start = self.peek()
        self.expect("norm")
        self.expect("{")
        basis = values = None
        while not self.accept("}"):
            key = self.peek()
            if key[0] != "name" or key[1] not in ("basis", "values"):
                self.error("expected 'basis' or 'values'")
            self.i += 1
            self.expect("=")
            if key[1] == "basis":
                self.expect("[")
                basis = [self.row()]
                while self.accept(","):
                    basis.append(self.row())
                self.expect("]")
            else:
                self.expect("[")
                values = [self.value()]
                while self.accept(","):
                    values.append(self.value())
                self.expect("]")
            self.accept(",")
        if values is None:
            self.error("norm needs values", start)
        if basis is None:
            n = len(values)
            basis = [[self.F.one if i == j else self.F.zero for j in range(n)] for i in range(n)]
        return basis, values


def parse_element(text: str, F: Field):
    p = _Parser(text, F)
    try:
        v = p.expr()
    except FieldError as exc:
        raise LiteralError(str(exc), text, p.peek()[2]) from exc
    p.done()
    return v


def parse_form(text: str, F: Field) -> QuadraticForm:
    p = _Parser(text, F)
    try:
        q = p.form()
    except FieldError as exc:
        raise LiteralError(str(exc), text, p.peek()[2]) from exc
    p.done()
    return q


def parse_norm(text: str, F: Field):
    """Return (basis rows, values) from a norm literal."""
    p = _Parser(text, F)
    out = p.norm()
    p.done()
    return out


def format_element(F: Field, a) -> str:
    return F.fmt(a)


def format_form(q: QuadraticForm) -> str:
    F = q.field
    if q.dim == 0:
        return "diag()"
    return "[" + ", ".join("[" + ", ".join(F.fmt(c) for c in row) + "]" for row in q.gram) + "]"


def format_value(g: ValueGroupElement) -> str:
    return "(" + ",".join(str(c) for c in g.coords) + ")"


def format_norm(basis, values, F: Field) -> str:
    rows = ", ".join("[" + ", ".join(F.fmt(c) for c in row) + "]" for row in basis)
    vals = ", ".join(format_value(g) for g in values)
    return f"norm{{basis=[{rows}], values=[{vals}]}}"
