"""Tiny expression grammar shared by the field and sequence parsers.

Accepts integers, named variables, the operators ``+ - * / ^`` with the
usual precedence, and parentheses.  ``^`` binds tightest, requires an
integer exponent, and is right-associative.  Produces a small tuple AST:
('num', n) | ('var', name) | ('neg', x) | ('add'|'sub'|'mul'|'div', l, r)
| ('pow', base, exponent).
"""

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


class ExprError(ValueError):
    pass


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ExprError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ExprError(f"expected {op!r}, got {tok!r}")

    def parse_sum(self):
        node = self.parse_product()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.parse_product()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def parse_product(self):
        node = self.parse_unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.parse_unary()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def parse_unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.parse_unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek() == ("op", "^"):
            self.take()
            return ("pow", base, self.parse_exponent())
        return base

    def parse_exponent(self) -> int:
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        tok = self.take()
        if tok == ("op", "("):
            inner = self.parse_exponent()
            self.expect_op(")")
            return -inner if neg else inner
        kind, value = tok
        if kind != "num":
            raise ExprError(f"exponent must be an integer, got {value!r}")
        return -value if neg else value

    def parse_atom(self):
        tok = self.take()
        kind, value = tok
        if kind == "num":
            return ("num", value)
        if kind == "var":
            return ("var", value)
        if tok == ("op", "("):
            inner = self.parse_sum()
            self.expect_op(")")
            return inner
        raise ExprError(f"unexpected token {value!r}")


def parse(text: str):
    tokens = tokenize(text)
    if not tokens:
        raise ExprError("empty expression")
    parser = _Parser(tokens)
    ast = parser.parse_sum()
    if parser.pos != len(tokens):
        raise ExprError(f"trailing input at token {parser.tokens[parser.pos]!r}")
    return ast


def variables(ast) -> set:
    kind = ast[0]
    if kind == "num":
        return set()
    if kind == "var":
        return {ast[1]}
    if kind in ("neg",):
        return variables(ast[1])
    if kind == "pow":
        return variables(ast[1])
    return variables(ast[1]) | variables(ast[2])
