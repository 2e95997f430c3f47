"""Ring descriptor tower and canonical elements.

Supported rings: Q, F_p, Z, polynomial rings over the field variants,
quotients by Groebner-reduced relation ideals, fraction fields of quotient
domains, and truncated completions.  Every element carries its descriptor
and a canonical payload; equality is payload identity except for fraction
fields, which compare by cross multiplication (no multivariate gcd here,
see the module notes in the README).
"""

from __future__ import annotations

from fractions import Fraction

from . import gb, poly
from .errors import ParseError, UnsupportedRingError, UsageError


class RingElement:
    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        self.ring = ring
        self.data = data

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring.key() != self.ring.key():
                raise UsageError("elements of different rings: %s vs %s"
                                 % (self.ring, other.ring))
            return other
        if isinstance(other, int):
            return self.ring.el(other)
        raise UsageError("cannot combine %r with ring element" % (other,))

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring.add(self.data, other.data))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.data))

    def __sub__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring.add(self.data, self.ring.neg(other.data)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring.mul(self.data, other.data))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise UsageError("ring element powers take nonnegative ints")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return self.ring.is_zero(self.data)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            if isinstance(other, int):
                try:
                    other = self.ring.el(other)
                except UsageError:
                    return NotImplemented
            else:
                return NotImplemented
        return (self.ring.key() == other.ring.key()
                and self.ring.eq(self.data, other.data))

    def __hash__(self):
        return hash((self.ring.key(), self.ring.freeze(self.data)))

    def __repr__(self):
        return "<%s in %s>" % (self.ring.fmt(self.data), self.ring)

    def __str__(self):
        return self.ring.fmt(self.data)


class Ring:
    kind = "?"
    is_field = False
    is_euclidean_domain = False

    def el(self, x):
        """Coerce an int, string, payload-carrying element, or payload."""
        if isinstance(x, RingElement):
            if x.ring.key() != self.key():
                raise UsageError("element of %s used in %s" % (x.ring, self))
            return x
        if isinstance(x, int):
            return RingElement(self, self.from_int(x))
        if isinstance(x, str):
            return RingElement(self, self.parse(x))
        raise UsageError("cannot coerce %r into %s" % (x, self))

    def zero(self):
        return RingElement(self, self.from_int(0))

    def one(self):
        return RingElement(self, self.from_int(1))

    def freeze(self, data):
        return data

    def eq(self, a, b):
        return a == b

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.fmt_ring()


class Rationals(Ring):
    kind = "rational"
    is_field = True

    def key(self):
        return ("Q",)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("1/0 in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError("bad rational %r: %s" % (text, e))

    def fmt(self, a):
        return str(a)

    def fmt_ring(self):
        return "Q"


class PrimeField(Ring):
    kind = "prime_field"
    is_field = True

    def __init__(self, p):
        if not isinstance(p, int) or p < 2 or not _is_prime(p):
            raise UsageError("prime field needs a prime, got %r" % (p,))
        self.p = p

    def key(self):
        return ("Fp", self.p)

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("1/0 in F%d" % self.p)
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, text):
        text = str(text).strip()
        try:
            if "/" in text:
                fr = Fraction(text)
                return self.mul(self.from_int(fr.numerator), self.inv(self.from_int(fr.denominator)))
            return int(text) % self.p
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError("bad F%d scalar %r: %s" % (self.p, text, e))

    def fmt(self, a):
        return str(a % self.p)

    def fmt_ring(self):
        return "F%d" % self.p


class Integers(Ring):
    kind = "integers"
    is_euclidean_domain = True

    def key(self):
        return ("Z",)

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return int(str(text).strip())
        except ValueError as e:
            raise ParseError("bad integer %r: %s" % (text, e))

    def fmt(self, a):
        return str(a)

    def fmt_ring(self):
        return "Z"


class PolynomialRing(Ring):
    kind = "polynomial"

    def __init__(self, base, var_names, order="degrevlex"):
        if not isinstance(base, (Rationals, PrimeField)):
            raise UsageError("polynomial base must be Q or a prime field")
        if not var_names or len(set(var_names)) != len(var_names):
            raise UsageError("polynomial ring needs distinct variable names")
        if order not in poly.ORDER_KEYS:
            raise UsageError("unknown monomial order %r" % (order,))
        self.base = base
        self.vars = tuple(str(v) for v in var_names)
        self.order = order
        self.coeffs = poly.RationalCoeffs() if isinstance(base, Rationals) \
            else poly.ModPCoeffs(base.p)
        self.mono_key = poly.ORDER_KEYS[order]
        self.ctx = gb.GBContext(len(self.vars), self.coeffs, self.mono_key)

    @property
    def nvars(self):
        return len(self.vars)

    def key(self):
        return ("poly", self.base.key(), self.vars, self.order)

    def from_int(self, n):
        return poly.p_const(self.nvars, self.coeffs, self.coeffs.from_int(n))

    def var(self, name):
        return RingElement(self, poly.p_var(self.nvars, self.coeffs, self.vars.index(name)))

    def add(self, a, b):
        return poly.p_add(self.coeffs, a, b)

    def neg(self, a):
        return poly.p_neg(self.coeffs, a)

    def mul(self, a, b):
        return poly.p_mul(self.coeffs, a, b)

    def is_zero(self, a):
        return not a

    def freeze(self, data):
        return poly.freeze(data)

    def parse(self, text):
        return poly.parse_poly(text, self.vars, self.coeffs)

    def fmt(self, a):
        return poly.fmt_poly(a, self.vars, self.mono_key)

    def fmt_ring(self):
        return "%s[%s]" % (self.base.fmt_ring(), ",".join(self.vars))


class QuotientRing(Ring):
    kind = "quotient"

    def __init__(self, cover, relations):
        """cover: PolynomialRing; relations: iterable of payloads/strings.
        Stored as the reduced Groebner basis; elements are normal forms."""
        if not isinstance(cover, PolynomialRing):
            raise UsageError("quotient cover must be a polynomial ring")
        self.cover = cover
        rels = []
        for r in relations:
            if isinstance(r, RingElement):
                r = cover.el(r).data
            elif isinstance(r, str):
                r = cover.parse(r)
            rels.append(r)
        self.relations = tuple(gb.groebner_ideal(cover.ctx, rels))
        self.coeffs = cover.coeffs
        self.mono_key = cover.mono_key
        self.vars = cover.vars
        # monomial ideal: normal form is dropping divisible monomials,
        # no division steps needed
        self._mono_rels = None
        if self.relations and all(len(r) == 1 for r in self.relations):
            self._mono_rels = tuple(next(iter(r)) for r in self.relations)

    @property
    def nvars(self):
        return self.cover.nvars

    def is_zero_ring(self):
        return any(poly.p_total_deg(r) == 0 for r in self.relations)

    def key(self):
        return ("quot", self.cover.key(), tuple(poly.freeze(r) for r in self.relations))

    def reduce(self, a):
        rels = self._mono_rels
        if rels is not None:
            return {m: c for m, c in a.items()
                    if not any(all(mi >= gi for mi, gi in zip(m, g))
                               for g in rels)}
        return gb.normal_form(self.cover.ctx, a, list(self.relations))

    def from_int(self, n):
        return self.reduce(self.cover.from_int(n))

    def var(self, name):
        return RingElement(self, self.reduce(self.cover.var(name).data))

    def add(self, a, b):
        return self.cover.add(a, b)  # normal forms are closed under addition

    def neg(self, a):
        return self.cover.neg(a)

    def mul(self, a, b):
        return self.reduce(self.cover.mul(a, b))

    def is_zero(self, a):
        return not a

    def freeze(self, data):
        return poly.freeze(data)

    def parse(self, text):
        return self.reduce(self.cover.parse(text))

    def fmt(self, a):
        return self.cover.fmt(a)

    def fmt_ring(self):
        rels = ", ".join(self.cover.fmt(r) for r in self.relations)
        return "%s/(%s)" % (self.cover.fmt_ring(), rels or "0")


class FractionField(Ring):
    kind = "fraction_field"
    is_field = True

    def __init__(self, base):
        if not isinstance(base, (PolynomialRing, QuotientRing)):
            raise UsageError("fraction field over unsupported base %r" % (base,))
        self.base = base

    def key(self):
        return ("frac", self.base.key())

    def from_int(self, n):
        return (self.base.from_int(n), self.base.from_int(1))

    def _norm(self, num, den):
        if self.base.is_zero(den):
            raise ZeroDivisionError("zero denominator in %s" % self)
        if self.base.is_zero(num):
            return (num, self.base.from_int(1))
        # make the denominator monic under the base order
        _, lc = poly.lead_term(den, self.base.mono_key)
        inv = self.base.coeffs.inv(lc)
        scale = poly.p_scale(self.base.coeffs, inv, den)
        if isinstance(self.base, QuotientRing):
            scale = self.base.reduce(scale)
        numn = poly.p_scale(self.base.coeffs, inv, num)
        if isinstance(self.base, QuotientRing):
            numn = self.base.reduce(numn)
        return (numn, scale)

    def add(self, a, b):
        an, ad = a
        bn, bd = b
        num = self.base.add(self.base.mul(an, bd), self.base.mul(bn, ad))
        return self._norm(num, self.base.mul(ad, bd))

    def neg(self, a):
        return (self.base.neg(a[0]), a[1])

    def mul(self, a, b):
        return self._norm(self.base.mul(a[0], b[0]), self.base.mul(a[1], b[1]))

    def inv(self, a):
        return self._norm(a[1], a[0])

    def is_zero(self, a):
        return self.base.is_zero(a[0])

    def eq(self, a, b):
        # cross multiplication; payloads are not fully canonical here
        lhs = self.base.mul(a[0], b[1])
        rhs = self.base.mul(b[0], a[1])
        return self.base.is_zero(self.base.add(lhs, self.base.neg(rhs)))

    def freeze(self, data):
        raise UnsupportedRingError("fraction field elements are not hashable")

    def parse(self, text):
        raise UnsupportedRingError("parsing fraction field elements is not supported")

    def fmt(self, a):
        num, den = a
        if poly.p_total_deg(den) == 0 and den == self.base.from_int(1):
            return self.base.fmt(num)
        return "(%s)/(%s)" % (self.base.fmt(num), self.base.fmt(den))

    def fmt_ring(self):
        return "Frac(%s)" % self.base.fmt_ring()


class TruncatedCompletion(Ring):
    """Completion of the base along an ideal, carried at finite precision.

    Base Z with ideal (p): payloads are ints in [0, p^N).  Polynomial or
    quotient base with the ideal generated by variables: payloads are
    normal forms truncated below total degree N.  Precision never grows
    silently; mixed-precision arithmetic is a usage error by construction
    (descriptors with different precision are different rings)."""

    kind = "truncated_completion"

    def __init__(self, base, ideal_gens, precision):
        if not isinstance(precision, int) or precision < 1:
            raise UsageError("precision must be a positive int")
        self.base = base
        self.precision = precision
        if isinstance(base, Integers):
            if len(ideal_gens) != 1:
                raise UsageError("completion of Z needs a single prime generator")
            p = ideal_gens[0]
            if isinstance(p, RingElement):
                p = p.data
            if isinstance(p, str):
                p = int(p)
            if not _is_prime(abs(int(p))):
                raise UsageError("completion of Z needs a prime, got %r" % (p,))
            self.p = abs(int(p))
            self.modulus = self.p ** precision
            self.ideal_vars = None
        elif isinstance(base, (PolynomialRing, QuotientRing)):
            names = []
            for g in ideal_gens:
                if isinstance(g, RingElement):
                    g = g.data
                if isinstance(g, str):
                    g = base.parse(g)
                terms = list(g.items())
                if len(terms) != 1 or poly.mono_deg(terms[0][0]) != 1:
                    raise UsageError("completion ideal generators must be single variables")
                idx = terms[0][0].index(1)
                names.append(base.vars[idx])
            if set(names) != set(base.vars):
                raise UsageError("completion supported only along the full variable ideal")
            self.p = None
            self.modulus = None
            self.ideal_vars = tuple(names)
        else:
            raise UsageError("completion base must be Z, a polynomial ring, or a quotient")
        self.gens = tuple(str(g) for g in ideal_gens)

    def key(self):
        return ("compl", self.base.key(), self.gens, self.precision)

    def truncate(self, a):
        if self.modulus is not None:
            return a % self.modulus
        if isinstance(self.base, QuotientRing):
            a = self.base.reduce(a)
        return {m: c for m, c in a.items() if poly.mono_deg(m) < self.precision}

    def from_int(self, n):
        return self.truncate(self.base.from_int(n))

    def add(self, a, b):
        return self.truncate(self.base.add(a, b))

    def neg(self, a):
        return self.truncate(self.base.neg(a))

    def mul(self, a, b):
        return self.truncate(self.base.mul(a, b))

    def is_zero(self, a):
        if self.modulus is not None:
            return a % self.modulus == 0
        return not a

    def freeze(self, data):
        if self.modulus is not None:
            return data
        return poly.freeze(data)

    def parse(self, text):
        return self.truncate(self.base.parse(text))

    def fmt(self, a):
        return self.base.fmt(a) if self.modulus is None else str(a % self.modulus)

    def fmt_ring(self):
        return "(%s)^((%s); prec %d)" % (self.base.fmt_ring(), ",".join(self.gens), self.precision)


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------

def ring_dim(ring):
    """Krull dimension of the descriptor.  Completions report the dimension
    of the completed model, which equals the base dimension (the finite
    precision carrier itself is artinian, but the descriptor stands for the
    full completion)."""
    if isinstance(ring, (Rationals, PrimeField, FractionField)):
        return 0
    if isinstance(ring, Integers):
        return 1
    if isinstance(ring, PolynomialRing):
        return ring.nvars
    if isinstance(ring, QuotientRing):
        return gb.ideal_dimension(ring.cover.ctx, list(ring.relations))
    if isinstance(ring, TruncatedCompletion):
        return ring_dim(ring.base)
    raise UnsupportedRingError("dimension of %r" % (ring,))


def regularity_class(ring):
    """'regular', 'hypersurface' (single nonzerodivisor relation), or
    'unknown'.  The hypersurface witness is checked by computing the
    syzygies of the relation over the cover: none means a nonzerodivisor."""
    if isinstance(ring, (Rationals, PrimeField, Integers, PolynomialRing, FractionField)):
        return "regular"
    if isinstance(ring, TruncatedCompletion):
        return regularity_class(ring.base)
    if isinstance(ring, QuotientRing):
        rels = [r for r in ring.relations]
        if not rels:
            return "regular"
        if ring.is_zero_ring():
            return "unknown"
        if len(rels) == 1:
            syz = gb.syzygies(ring.cover.ctx, [gb.v_from_poly(rels[0])])
            if not syz:
                return "hypersurface"
        return "unknown"
    raise UnsupportedRingError("regularity of %r" % (ring,))


class PrimeIdeal:
    """Prime ideal given by generators.  Primality of polynomial ideals is
    not verified up front; downstream elimination raises
    InconsistentPrimeError when a zero divisor shows up."""

    def __init__(self, ring, gens):
        self.ring = ring
        els = []
        for g in gens:
            els.append(ring.el(g))
        if isinstance(ring, Integers):
            if len(els) > 1:
                raise UsageError("prime ideals of Z have at most one generator")
            if els and not _is_prime(abs(els[0].data)):
                raise UsageError("%r does not generate a prime ideal of Z" % (els[0].data,))
            els = [ring.el(abs(e.data)) for e in els if e.data != 0]
        elif isinstance(ring, (Rationals, PrimeField, FractionField)):
            if any(not e.is_zero() for e in els):
                raise UsageError("a field has only the zero prime ideal")
            els = []
        elif isinstance(ring, (PolynomialRing, QuotientRing)):
            els = [e for e in els if not e.is_zero()]
            if isinstance(ring, QuotientRing) and ring.is_zero_ring():
                raise UsageError("prime ideal of the zero ring")
        else:
            raise UnsupportedRingError("prime ideals over %r" % (ring,))
        self.gens = tuple(els)

    def key(self):
        return (self.ring.key(), tuple(self.ring.freeze(g.data) for g in self.gens))

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "(%s) in %s" % (", ".join(str(g) for g in self.gens) or "0", self.ring)

    def is_zero_ideal(self):
        return not self.gens

    def quotient_ring(self):
        ring = self.ring
        if isinstance(ring, Integers):
            return PrimeField(self.gens[0].data) if self.gens else Integers()
        if isinstance(ring, (Rationals, PrimeField, FractionField)):
            return ring
        if isinstance(ring, PolynomialRing):
            return QuotientRing(ring, [g.data for g in self.gens])
        if isinstance(ring, QuotientRing):
            rels = list(ring.relations) + [g.data for g in self.gens]
            return QuotientRing(ring.cover, rels)
        raise UnsupportedRingError("quotient by prime over %r" % (ring,))

    def residue_field(self):
        ring = self.ring
        if isinstance(ring, Integers):
            return PrimeField(self.gens[0].data) if self.gens else Rationals()
        if isinstance(ring, (Rationals, PrimeField, FractionField)):
            return ring
        q = self.quotient_ring()
        return FractionField(q)

    def reduce_to_quotient(self, element, quotient=None):
        """Image of an element of the ring in A/p."""
        q = quotient if quotient is not None else self.quotient_ring()
        ring = self.ring
        if isinstance(ring, Integers):
            return q.el(element.data if isinstance(element, RingElement) else element)
        el = ring.el(element)
        if isinstance(ring, (Rationals, PrimeField, FractionField)):
            return el
        return RingElement(q, q.reduce(el.data))

    def height(self):
        ring = self.ring
        if isinstance(ring, Integers):
            return 1 if self.gens else 0
        if isinstance(ring, (Rationals, PrimeField, FractionField)):
            return 0
        return ring_dim(ring) - gb.ideal_dimension(
            _cover_ctx(ring), _cover_ideal(ring, self))

    def codim_dimension(self):
        """dim A/p."""
        ring = self.ring
        if isinstance(ring, Integers):
            return 0 if self.gens else 1
        if isinstance(ring, (Rationals, PrimeField, FractionField)):
            return 0
        return gb.ideal_dimension(_cover_ctx(ring), _cover_ideal(ring, self))

    def is_maximal(self):
        return self.codim_dimension() == 0

    def contains(self, element):
        ring = self.ring
        el = ring.el(element)
        if isinstance(ring, Integers):
            if not self.gens:
                return el.data == 0
            return el.data % self.gens[0].data == 0
        if isinstance(ring, (Rationals, PrimeField, FractionField)):
            return el.is_zero()
        ideal = _cover_ideal(ring, self)
        lifted = el.data
        return not gb.normal_form(_cover_ctx(ring), lifted, ideal)


def _cover_ctx(ring):
    if isinstance(ring, PolynomialRing):
        return ring.ctx
    if isinstance(ring, QuotientRing):
        return ring.cover.ctx
    raise UnsupportedRingError("no polynomial cover for %r" % (ring,))


def _cover_ideal(ring, prime):
    """Reduced GB of (relations + prime gens) in the polynomial cover."""
    if isinstance(ring, PolynomialRing):
        gens = [g.data for g in prime.gens]
        return gb.groebner_ideal(ring.ctx, gens)
    if isinstance(ring, QuotientRing):
        gens = list(ring.relations) + [g.data for g in prime.gens]
        return gb.groebner_ideal(ring.cover.ctx, gens)
    raise UnsupportedRingError("no polynomial cover for %r" % (ring,))
