"""Truncated completions, Newton square roots, quadratic splitting.

The series side certifies whether x^2 - c(y) splits over the completed
local ring at the origin: write c = y^(2k) u with u a unit and take a
square root of u by Newton iteration, or report the obstruction (odd
vanishing order, or a constant term that is not a square in the
coefficient field).  The complex side completes free complexes
degreewise at finite precision.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import poly
from .complexes import FreeComplex
from .errors import NotUnitError, UsageError
from .pidmodel import TorsionInvariants, gamma_inv, lambda_inv, rhom_inv, \
    split_invariants, tensor_inv, CECH
from .rings import (
    PolynomialRing, Rationals, RingElement, TruncatedCompletion,
)


class TruncatedSeries:
    """Power series known below a total-degree bound.

    Arithmetic truncates to the minimum precision of the operands, so a
    result never claims digits its inputs cannot justify.
    """

    def __init__(self, ring, data, precision):
        if not isinstance(ring, PolynomialRing):
            raise UsageError("series need a polynomial coefficient ring")
        if not isinstance(precision, int) or precision < 1:
            raise UsageError("precision must be a positive int")
        self.ring = ring
        self.precision = precision
        data = dict(data)
        self.data = poly.freeze({
            m: c for m, c in data.items()
            if poly.mono_deg(m) < precision and c})

    @classmethod
    def parse(cls, field, variables, text, precision):
        ring = PolynomialRing(field, tuple(variables))
        return cls(ring, ring.parse(text), precision)

    def _like(self, data, precision):
        return TruncatedSeries(self.ring, data, precision)

    def _join(self, other):
        if self.ring.key() != other.ring.key():
            raise UsageError("series rings differ")
        return min(self.precision, other.precision)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and self.ring.key() == other.ring.key()
                and self.precision == other.precision
                and self.data == other.data)

    def __hash__(self):
        return hash((self.ring.key(), self.precision, self.data))

    def __repr__(self):
        return "TruncatedSeries(%s + O(deg %d))" % (self.fmt(),
                                                    self.precision)

    def fmt(self):
        return self.ring.fmt(dict(self.data))

    def add(self, other):
        n = self._join(other)
        return self._like(self.ring.add(dict(self.data), dict(other.data)), n)

    def sub(self, other):
        n = self._join(other)
        neg = self.ring.neg(dict(other.data))
        return self._like(self.ring.add(dict(self.data), neg), n)

    def mul(self, other):
        n = self._join(other)
        return self._like(self.ring.mul(dict(self.data), dict(other.data)), n)

    def scale(self, c):
        return self._like(
            poly.p_scale(self.ring.coeffs, c, dict(self.data)),
            self.precision)

    def truncated(self, precision):
        return self._like(dict(self.data), min(self.precision, precision))

    def constant_term(self):
        return dict(self.data).get((0,) * self.ring.nvars,
                                   self.ring.coeffs.from_int(0))

    def is_zero(self):
        return not self.data

    def inverse(self):
        f = self.ring.coeffs
        c0 = self.constant_term()
        if not c0:
            raise NotUnitError("series with zero constant term")
        one = self._like(poly.p_const(self.ring.nvars, f, f.from_int(1)),
                         self.precision)
        inv = self._like(
            poly.p_const(self.ring.nvars, f, f.inv(c0)), 1)
        k = 1
        while k < self.precision:
            k = min(2 * k, self.precision)
            inv = inv._like(inv.data, k)
            cur = self.truncated(k)
            # inv <- inv (2 - a inv), the Newton step for 1/a
            inv = inv.mul(one.truncated(k).scale(f.from_int(2))
                          .sub(cur.mul(inv)))
        return inv

    def div(self, other):
        return self.mul(other.inverse().truncated(self._join(other)))


@dataclass
class NoRationalSqrt:
    """Certified obstruction: the constant term has no square root."""
    constant: object
    reason: str
    kind = "NoRationalSqrt"


def _field_sqrt(field, c):
    if isinstance(field, poly.RationalCoeffs):
        if c < 0:
            return None
        rn, rd = isqrt(c.numerator), isqrt(c.denominator)
        if rn * rn == c.numerator and rd * rd == c.denominator:
            return Fraction(rn, rd)
        return None
    if isinstance(field, poly.ModPCoeffs):
        for r in range(field.p):
            if (r * r) % field.p == c:
                return r
        return None
    raise UsageError("no square root rule for %r" % (field,))


def series_sqrt(u, precision=None):
    """Square root by Newton iteration, or the obstruction.

    A NoRationalSqrt return is an answer, not an error: it certifies
    that no square root exists over the coefficient field.
    """
    f = u.ring.coeffs
    n = u.precision if precision is None else min(precision, u.precision)
    u = u.truncated(n)
    c0 = u.constant_term()
    if not c0:
        raise NotUnitError("series square root needs a unit")
    if isinstance(f, poly.ModPCoeffs) and f.p == 2:
        raise UsageError("square roots in characteristic 2 are unsupported")
    r0 = _field_sqrt(f, c0)
    if r0 is None:
        return NoRationalSqrt(c0, "%s is not a square in %s"
                              % (f.fmt(c0), f.name))
    half = f.inv(f.from_int(2))
    g = TruncatedSeries(u.ring, poly.p_const(u.ring.nvars, f, r0), 1)
    k = 1
    while k < n:
        k = min(2 * k, n)
        g = g._like(g.data, k)
        # g <- (g + u/g) / 2 doubles the number of correct digits
        g = g.add(u.truncated(k).div(g)).scale(half)
    return g


@dataclass
class Factors:
    """Split certificate for x^2 - c: the two factors are x -+ root."""
    root: TruncatedSeries
    precision: int
    kind = "Factors"

    def factor_strings(self):
        s = self.root.fmt()
        return ("x - (%s)" % s, "x + (%s)" % s)


@dataclass
class IrreducibleOverField:
    """No splitting over this coefficient field, with the obstruction."""
    obstruction: str
    reason: str
    kind = "IrreducibleOverField"


def hensel_quadratic(c, precision, ring=None):
    """Split x^2 - c(y) over the completed local ring, if possible.

    c = y^(2k) u with u(0) a nonzero square gives the root y^k sqrt(u);
    an odd vanishing order or a non-square constant term is a certified
    obstruction.
    """
    if isinstance(c, RingElement):
        ring, data = c.ring, c.data
    else:
        if ring is None:
            ring = PolynomialRing(Rationals(), ("y",))
        data = ring.parse(c) if isinstance(c, str) else c
    if not isinstance(ring, PolynomialRing) or ring.nvars != 1:
        raise UsageError("the discriminant must live in one variable")
    if not isinstance(precision, int) or precision < 1:
        raise UsageError("precision must be a positive int")
    if not data:
        return Factors(TruncatedSeries(ring, {}, precision), precision)
    order = min(poly.mono_deg(m) for m in data)
    if order % 2:
        return IrreducibleOverField(
            "odd_order", "odd vanishing order %d" % order)
    k = order // 2
    unit = {(e - order,): cf for (e,), cf in data.items()}
    s_prec = max(precision - order, 1)
    root = series_sqrt(TruncatedSeries(ring, unit, s_prec))
    if isinstance(root, NoRationalSqrt):
        return IrreducibleOverField("no_rational_sqrt", root.reason)
    shifted = {(e + k,): cf for (e,), cf in root.data}
    g = TruncatedSeries(ring, shifted, min(k + s_prec, precision))
    return Factors(g, precision)


def complete_base_change(X, ideal_gens, precision):
    """Degreewise completion of a free complex at finite precision.

    Finitely generated free terms make the naive degreewise completion
    agree with the derived one, so this is just entry reduction.
    """
    C = TruncatedCompletion(X.ring, ideal_gens, precision)
    diffs = {n: X.diff(n).map_entries(C, C.truncate)
             for n in range(X.lo, X.hi)}
    ranks = {n: X.rank(n) for n in X.degrees()}
    return FreeComplex(C, ranks, diffs)


def completed_homology(X, ideal_gens, precision):
    """Homology of the completed complex, free of truncation artifacts.

    Kernels computed mod the precision ideal acquire spurious classes
    (ker(p) mod p^N is nonzero), so homology is computed exactly over
    the base and completed piecewise instead: p-power torsion is
    already complete, free ranks become adic.
    """
    if len(ideal_gens) != 1:
        raise UsageError("piecewise completion needs a single generator")
    inv = split_invariants(X, ideal_gens[0])
    return lambda_inv(inv), precision


_IDENTITIES = (
    ("torsion_of_completion",
     lambda x: gamma_inv(lambda_inv(x)), gamma_inv),
    ("completion_of_torsion",
     lambda x: lambda_inv(gamma_inv(x)), lambda_inv),
)


def _piece_kinds(inv):
    return {p.kind for _, p in inv.placed}


@dataclass
class GMReport:
    ok: bool
    identities: list
    failing_pieces: list

    def to_dict(self):
        return {
            "ok": self.ok,
            "identities": self.identities,
            "failing_pieces": self.failing_pieces,
        }


def gm_check(inv):
    """Both torsion/completion identities on one invariant multiset.

    Round trips are included when the pieces qualify: completion then
    torsion is the identity on complete pieces, torsion then completion
    is the identity on torsion pieces.  A failing identity is broken
    down piece by piece.
    """
    rows = []
    failing = []

    def run(name, lhs_fn, rhs_fn, x):
        lhs, rhs = lhs_fn(x), rhs_fn(x)
        ok = lhs == rhs
        rows.append({"identity": name, "ok": ok,
                     "lhs": repr(lhs), "rhs": repr(rhs)})
        if not ok:
            for placed in x.placed:
                single = TorsionInvariants([placed])
                if lhs_fn(single) != rhs_fn(single):
                    failing.append("%r@%d" % (placed[1], placed[0]))
        return ok

    for name, lhs_fn, rhs_fn in _IDENTITIES:
        run(name, lhs_fn, rhs_fn, inv)

    kinds = _piece_kinds(inv)
    if kinds <= {"fin", "adic_free"}:
        run("round_trip_complete",
            lambda x: rhom_inv(CECH, tensor_inv(CECH, x)), lambda x: x, inv)
    if kinds <= {"fin", "pruefer"}:
        run("round_trip_torsion",
            lambda x: tensor_inv(CECH, rhom_inv(CECH, x)), lambda x: x, inv)

    ok = all(r["ok"] for r in rows)
    return GMReport(ok, rows, failing)
