"""Recursive-descent parser for the polynomial expression grammar.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' natural)?
    atom   := integer | symbol | '(' expr ')'

Whitespace is insignificant; symbols match [A-Za-z][A-Za-z0-9_]*. The AST
uses plain tuples so it can be evaluated into any ring.
"""

import re
from fractions import Fraction

from .errors import ParseError, UnknownSymbolError, ZeroDivision

__all__ = ["parse_expr", "evaluate", "symbols_in", "unparse"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text, where):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1, where=where)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start + 1))
        elif m.group(2):
            toks.append(("sym", m.group(2), start + 1))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start + 1))
        pos = m.end()
    toks.append(("end", None, n + 1))
    return toks


class _Parser:
    def __init__(self, text, where):
        self.toks = _tokenize(text, where)
        self.i = 0
        self.where = where
        self.open_cols = []

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, column=tok[2], where=self.where)

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.factor()
            node = ("mul", node, rhs) if tok[1] == "*" else ("div", node, rhs, tok[2])
        return node

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return ("neg", self.factor())
        if tok[0] == "op" and tok[1] == "+":
            self.take()
            return self.factor()
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "int":
                self.fail("exponent must be a natural number", t)
            node = ("pow", node, t[1])
        return node

    def atom(self):
        tok = self.take()
        kind, val, col = tok
        if kind == "int":
            return ("num", Fraction(val))
        if kind == "sym":
            return ("sym", val, col)
        if kind == "op" and val == "(":
            node = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise ParseError(
                    f"unbalanced parenthesis opened at column {col}",
                    column=close[2], where=self.where,
                )
            return node
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected token {val!r}", tok)


def parse_expr(text, where=None):
    """Parse `text` into an AST; ParseError carries the 1-based column."""
    if not isinstance(text, str):
        raise ParseError(f"expression must be a string, got {type(text).__name__}", where=where)
    p = _Parser(text, where)
    if p.peek()[0] == "end":
        p.fail("empty expression")
    node = p.expr()
    if p.peek()[0] != "end":
        tok = p.peek()
        if tok[0] == "op" and tok[1] == ")":
            p.fail("unbalanced parenthesis: unexpected ')'")
        p.fail(f"unexpected token {tok[1]!r}")
    return node


def symbols_in(node):
    kind = node[0]
    if kind == "sym":
        return {node[1]}
    if kind == "num":
        return set()
    if kind in ("neg",):
        return symbols_in(node[1])
    if kind == "pow":
        return symbols_in(node[1])
    return symbols_in(node[1]) | symbols_in(node[2])


def evaluate(node, env, const, where=None):
    """Evaluate an AST; `env` maps symbol -> value, `const` lifts a Fraction."""
    kind = node[0]
    if kind == "num":
        return const(node[1])
    if kind == "sym":
        try:
            return env[node[1]]
        except KeyError:
            raise UnknownSymbolError(
                f"unknown symbol {node[1]!r}" + (f" in {where}" if where else "")
                + f" at column {node[2]}"
            ) from None
    if kind == "neg":
        return -evaluate(node[1], env, const, where)
    if kind == "pow":
        base = evaluate(node[1], env, const, where)
        return base ** node[2]
    a = evaluate(node[1], env, const, where)
    b = evaluate(node[2], env, const, where)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not b:
            raise ZeroDivision(
                "division by zero" + (f" in {where}" if where else "") + f" at column {node[3]}"
            )
        return a / b
    raise ValueError(f"bad AST node {kind}")


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def unparse(node, parent=0):
    """Canonical text for an AST (round-trips through parse_expr)."""
    kind = node[0]
    if kind == "num":
        v = node[1]
        s = str(v)
        return f"({s})" if (v.denominator != 1 or v < 0) and parent > 1 else s
    if kind == "sym":
        return node[1]
    prec = _PREC[kind]
    if kind == "neg":
        s = "-" + unparse(node[1], prec)
    elif kind == "pow":
        s = f"{unparse(node[1], prec + 1)}^{node[2]}"
    else:
        op = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[kind]
        s = unparse(node[1], prec) + op + unparse(node[2], prec + 1)
    return f"({s})" if prec < parent or (kind == "neg" and parent > prec) else s
