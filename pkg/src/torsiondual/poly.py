"""Multivariate polynomial kernel.

Polynomials are plain dicts mapping exponent tuples to nonzero coefficients;
the zero polynomial is the empty dict.  Coefficient arithmetic is delegated
to a small field object (exact rationals or a prime field), never floats.
Monomial orders are realised as sort keys so that bigger key means bigger
monomial.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


class RationalCoeffs:
    """Coefficient field Q backed by fractions.Fraction."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def fmt(a):
        return str(a)

    def key(self):
        return ("Q",)


class ModPCoeffs:
    """Coefficient field F_p; values are ints in [0, p)."""

    def __init__(self, p):
        self.p = p
        self.name = "F%d" % p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F%d" % self.p)
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def fmt(self, a):
        return str(a)

    def key(self):
        return ("Fp", self.p)


# ---------------------------------------------------------------------------
# monomials: exponent tuples

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    # does a divide b
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    # b / a, assuming a divides b
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def key_lex(m):
    return m


def key_grlex(m):
    return (sum(m), m)


def key_degrevlex(m):
    # ties: the last variable where two monomials differ decides, smaller wins
    return (sum(m), tuple(-e for e in reversed(m)))


ORDER_KEYS = {
    "lex": key_lex,
    "grlex": key_grlex,
    "degrevlex": key_degrevlex,
}


# ---------------------------------------------------------------------------
# polynomial dict arithmetic

def p_const(nvars, field, c):
    if c == field.zero:
        return {}
    return {(0,) * nvars: c}


def p_var(nvars, field, i):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): field.one}


def p_add(field, a, b):
    out = dict(a)
    for m, c in b.items():
        s = field.add(out.get(m, field.zero), c)
        if s == field.zero:
            out.pop(m, None)
        else:
            out[m] = s
    return out


def p_neg(field, a):
    return {m: field.neg(c) for m, c in a.items()}


def p_sub(field, a, b):
    return p_add(field, a, p_neg(field, b))


def p_scale(field, c, a):
    if c == field.zero:
        return {}
    return {m: field.mul(c, x) for m, x in a.items()}


def term_mul(field, c, m, a):
    """Multiply polynomial a by the single term c*m."""
    if c == field.zero:
        return {}
    return {mono_mul(m, n): field.mul(c, x) for n, x in a.items()}


def p_mul(field, a, b):
    out = {}
    for m, c in a.items():
        for n, d in b.items():
            k = mono_mul(m, n)
            s = field.add(out.get(k, field.zero), field.mul(c, d))
            if s == field.zero:
                out.pop(k, None)
            else:
                out[k] = s
    return out


def p_pow(nvars, field, a, n):
    out = p_const(nvars, field, field.one)
    for _ in range(n):
        out = p_mul(field, out, a)
    return out


def lead_mono(a, key):
    return max(a, key=key)


def lead_term(a, key):
    m = max(a, key=key)
    return m, a[m]


def p_total_deg(a):
    return max((mono_deg(m) for m in a), default=-1)


def freeze(a):
    """Hashable canonical image of a polynomial dict."""
    return tuple(sorted(a.items()))


# ---------------------------------------------------------------------------
# parsing: ASCII syntax with ^ powers, optional *, rationals a/b

class _Scanner:
    def __init__(self, text, names):
        self.text = text
        self.pos = 0
        self.names = sorted(names, key=len, reverse=True)

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def expect(self, ch):
        if self.peek() != ch:
            raise ParseError("expected %r at position %d in %r" % (ch, self.pos, self.text))
        self.pos += 1

    def take_int(self):
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected integer at position %d in %r" % (start, self.text))
        return int(self.text[start:self.pos])

    def try_name(self):
        self._skip()
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return name
        return None


class _PolyParser:
    """expr := term (+|- term)*; term := factor ( '*'? factor )*;
    factor := atom ('^' int)?; atom := rational | var | '(' expr ')'."""

    def __init__(self, text, var_names, field):
        self.sc = _Scanner(text, var_names)
        self.vars = list(var_names)
        self.nvars = len(self.vars)
        self.field = field

    def parse(self):
        out = self.expr()
        if self.sc.peek() != "":
            raise ParseError("trailing junk at position %d in %r" % (self.sc.pos, self.sc.text))
        return out

    def expr(self):
        f = self.field
        sign = 1
        while self.sc.peek() == "-" or self.sc.peek() == "+":
            if self.sc.peek() == "-":
                sign = -sign
            self.sc.pos += 1
        out = self.term()
        if sign < 0:
            out = p_neg(f, out)
        while self.sc.peek() in ("+", "-"):
            op = self.sc.peek()
            self.sc.pos += 1
            sign = 1 if op == "+" else -1
            while self.sc.peek() in ("+", "-"):
                if self.sc.peek() == "-":
                    sign = -sign
                self.sc.pos += 1
            t = self.term()
            out = p_add(f, out, t if sign > 0 else p_neg(f, t))
        return out

    def term(self):
        out = self.factor()
        while True:
            ch = self.sc.peek()
            if ch == "*":
                self.sc.pos += 1
                out = p_mul(self.field, out, self.factor())
            elif ch.isdigit() or ch == "(" or self.starts_name():
                out = p_mul(self.field, out, self.factor())
            else:
                return out

    def starts_name(self):
        save = self.sc.pos
        name = self.sc.try_name()
        self.sc.pos = save
        return name is not None

    def factor(self):
        base = self.atom()
        if self.sc.peek() == "^":
            self.sc.pos += 1
            n = self.sc.take_int()
            base = p_pow(self.nvars, self.field, base, n)
        return base

    def atom(self):
        ch = self.sc.peek()
        if ch == "(":
            self.sc.pos += 1
            out = self.expr()
            self.sc.expect(")")
            return out
        if ch.isdigit():
            num = self.sc.take_int()
            if self.sc.peek() == "/":
                self.sc.pos += 1
                den = self.sc.take_int()
                if den == 0:
                    raise ParseError("zero denominator in %r" % self.sc.text)
                c = Fraction(num, den)
                if isinstance(self.field, ModPCoeffs):
                    c = self.field.mul(self.field.from_int(num), self.field.inv(self.field.from_int(den)))
                    return p_const(self.nvars, self.field, c)
                return p_const(self.nvars, self.field, c)
            return p_const(self.nvars, self.field, self.field.from_int(num))
        name = self.sc.try_name()
        if name is not None:
            return p_var(self.nvars, self.field, self.vars.index(name))
        raise ParseError("unexpected %r at position %d in %r" % (ch, self.sc.pos, self.sc.text))


def parse_poly(text, var_names, field):
    return _PolyParser(str(text), var_names, field).parse()


def fmt_poly(a, var_names, key):
    """Canonical string: terms in decreasing order, explicit * between factors."""
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=key, reverse=True):
        c = a[m]
        factors = []
        for v, e in zip(var_names, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append("%s^%d" % (v, e))
        cs = str(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if not factors:
            body = cs
        elif cs == "1":
            body = "*".join(factors)
        else:
            body = "*".join([cs] + factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
