"""Polynomial text grammar shared by the library and the certifier CLI.

Terms over variables ``x1..x6, y1..y6, a1..a6, b1..b6, t``; integer or
``p/q`` rational coefficients; operators ``+ - * ^``; juxtaposition is
not allowed; whitespace is ignored.  Example::

    x1*x2*x4 - x1*x5^2 + x2*x3^2 + x3*x5*x6 + x4*x6^2

The pretty printer emits canonical text in the same grammar (terms in
graded-lex order, highest degree first), so print/parse round-trips.
"""

import re

from .errors import NotHomogeneousCubic, ParseError
from .linalg import QQ
from .poly import ALPHA, BETA, EPS, Poly, T, X, Y, mono_degree, var_name

_VAR_RE = re.compile(r"[xyab][1-6]|t")
_NUM_RE = re.compile(r"\d+")

_PREFIX = {"x": X, "y": Y, "a": ALPHA, "b": BETA}


def _tokenize(text):
    tokens = []  # (kind, value, position)
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        m = _VAR_RE.match(text, i)
        if m:
            tokens.append(("var", m.group(), i))
            i = m.end()
            continue
        m = _NUM_RE.match(text, i)
        if m:
            tokens.append(("num", m.group(), i))
            i = m.end()
            continue
        raise ParseError(i, "variable, number or operator", ch)
    tokens.append(("end", "", n))
    return tokens


def _var_code(name):
    if name == "t":
        return T
    return _PREFIX[name[0]][int(name[1]) - 1]


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        result = self.parse_term(allow_sign=True)
        while True:
            kind, _, pos = self.peek()
            if kind == "end":
                return result
            if kind == "+":
                self.advance()
                result = result + self.parse_term()
            elif kind == "-":
                self.advance()
                result = result - self.parse_term()
            else:
                raise ParseError(pos, "'+' or '-'", self.peek()[1])

    def parse_term(self, allow_sign=False) -> Poly:
        sign = 1
        if allow_sign:
            while self.peek()[0] in ("+", "-"):
                if self.advance()[0] == "-":
                    sign = -sign
        result = self.parse_factor()
        while self.peek()[0] == "*":
            self.advance()
            result = result * self.parse_factor()
        return result * sign if sign < 0 else result

    def parse_factor(self) -> Poly:
        kind, value, pos = self.peek()
        if kind == "var":
            self.advance()
            exp = self.parse_exponent()
            return Poly.var(_var_code(value), exp)
        if kind == "num":
            self.advance()
            num = int(value)
            if self.peek()[0] == "/":
                self.advance()
                dkind, dval, dpos = self.peek()
                if dkind != "num":
                    raise ParseError(dpos, "denominator", dval)
                self.advance()
                den = int(dval)
                if den == 0:
                    raise ParseError(dpos, "nonzero denominator", dval)
                return Poly.const(QQ(num, den))
            # plain integers may still carry an exponent, e.g. 2^3
            exp = self.parse_exponent()
            return Poly.const(num ** exp)
        raise ParseError(pos, "variable or coefficient", value or "end of input")

    def parse_exponent(self) -> int:
        if self.peek()[0] != "^":
            return 1
        self.advance()
        kind, value, pos = self.peek()
        if kind != "num":
            raise ParseError(pos, "integer exponent", value or "end of input")
        self.advance()
        return int(value)


def parse_poly(text: str) -> Poly:
    """Parse an expression in the shared grammar into a Poly."""
    return _Parser(text).parse()


def parse_cubic(text: str) -> Poly:
    """Parse and validate a nonzero homogeneous cubic in x1..x6."""
    p = parse_poly(text)
    if p.is_zero():
        raise NotHomogeneousCubic("zero polynomial")
    for c in p.variables():
        if c not in X:
            raise NotHomogeneousCubic(f"variable {var_name(c)} is not an x-variable")
    if p.homogeneous_degree() != 3:
        raise NotHomogeneousCubic("not homogeneous of degree 3")
    return p


def parse_rational(text: str):
    """Parse 'p' or 'p/q' (optional leading minus) into a rational."""
    text = text.strip()
    m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", text)
    if m is None:
        raise ParseError(0, "rational number p or p/q", text)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(0, "nonzero denominator", text)
    return QQ(num, den)


def _mono_sort_key(mono):
    # graded-lex descending: higher total degree first, then lex on
    # exponent sequence under the fixed variable order
    exps = []
    d = dict(mono)
    for code in list(X) + list(Y) + list(ALPHA) + list(BETA) + [T, EPS]:
        exps.append(-d.get(code, 0))
    return (-mono_degree(mono), tuple(exps))


def format_rational(q) -> str:
    return str(q)


def poly_to_str(p: Poly) -> str:
    """Canonical text form; parses back to the same polynomial."""
    if p.is_zero():
        return "0"
    parts = []
    for mono in sorted(p.terms, key=_mono_sort_key):
        coeff = p.terms[mono]
        neg = coeff < 0
        mag = -coeff if neg else coeff
        factors = [f"{var_name(c)}^{e}" if e > 1 else var_name(c) for c, e in mono]
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
