"""Reader for ideal files.

    ring <p> <k> <name_0> ... <name_{k-1}>
    <generator>
    ...

Generators use + - * ^ with integer coefficients (reduced mod p); products
need an explicit ``*``.  Blank lines and lines starting with ``#`` are
skipped.  No generator lines means the zero ideal.
"""
from __future__ import annotations

import re

from .cone import ConeInput
from .errors import ParseError
from .ring import Ideal, Polynomial, PolyRingCtx

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _tokens(text: str, line: int) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(line, col, f"unexpected character {text[col - 1]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _Parser:
    """expr := ['+'|'-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := (INT | NAME) ['^' INT]."""

    def __init__(self, ctx: PolyRingCtx, text: str, line: int):
        self.ctx = ctx
        self.toks = _tokens(text, line)
        self.k = 0
        self.line = line
        self.end = len(text) + 1
        self.index = {name: i for i, name in enumerate(ctx.names)}

    def error(self, msg: str):
        col = self.toks[self.k][2] if self.k < len(self.toks) else self.end
        raise ParseError(self.line, col, msg)

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else (None, None, self.end)

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            self.error("empty generator")
        f = self.expr()
        if self.k < len(self.toks):
            kind, val, _ = self.peek()
            if kind in ("int", "name"):
                self.error(f"missing operator before {val!r} (write products with '*')")
            self.error(f"unexpected {val!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            acc = acc + self.term().scale(sign)
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            base = self.ctx.constant(int(val))
        elif kind == "name":
            if val not in self.index:
                self.error(f"unknown variable {val!r}")
            self.take()
            base = self.ctx.var(self.index[val])
        else:
            self.error("expected a number or a variable" if val is None else f"unexpected {val!r}")
        if self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "int":
                self.error("exponent must be a non-negative integer")
            self.take()
            base = base ** int(val)
        return base


def _ring_line(text: str, line: int, field: int | None) -> PolyRingCtx:
    parts = text.split()
    if not parts or parts[0] != "ring":
        raise ParseError(line, 1, "first line must be 'ring <p> <k> <names...>'")
    if len(parts) < 3 or not parts[1].isdigit() or not parts[2].isdigit():
        raise ParseError(line, 1, "expected 'ring <p> <k>' with integer p and k")
    p, k = int(parts[1]), int(parts[2])
    names = parts[3:]
    if k < 1 or len(names) != k:
        raise ParseError(line, 1, f"ring declares {k} variables but names {len(names)}")
    for name in names:
        if not _NAME.match(name):
            raise ParseError(line, text.index(name) + 1, f"invalid variable name {name!r}")
    if len(set(names)) != len(names):
        raise ParseError(line, 1, "variable names must be distinct")
    return PolyRingCtx(field if field is not None else p, tuple(names))


def parse_input(text: str, field: int | None = None) -> ConeInput:
    """Parse an ideal file; ``field`` overrides the characteristic it declares."""
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, 1, "empty input")
    ctx = _ring_line(lines[0], 1, field)
    gens = []
    for number, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        gens.append(_Parser(ctx, raw, number).parse())
    return ConeInput(ctx, Ideal(ctx, tuple(gens)))


def format_input(c: ConeInput) -> str:
    """Inverse of parse_input (up to generator normalization)."""
    ctx = c.ring
    lines = [f"ring {ctx.p} {ctx.nvars} " + " ".join(ctx.names)]
    lines += [str(g) for g in c.ideal.generators]
    return "\n".join(lines) + "\n"
