"""Torsion objects at a prime: the unit, tensor, dual, and classifiers.

An object is a carrier (bounded free complex or presented module) together
with a prime of its ring; semantically it stands for the local-torsion
completion of the carrier at that prime, and every question asked here is
answered through computable invariants of the carrier: Betti numbers at
the prime, homology lengths, resolution behaviour.
"""

from __future__ import annotations

from .complexes import FreeComplex, homology, tensor, hom_complex
from .errors import NotDualisableError, UsageError
from .grobner import ModulePresentation, colon_ideal, saturation
from .linalg import Matrix, euclid_rank
from .resolutions import (
    Finite, PeriodicInfinite, UnknownAtCutoff,
    betti_at_prime, finiteness_decision, resolve,
)
from .rings import (
    Integers, PolynomialRing, PrimeField, PrimeIdeal, QuotientRing,
    Rationals, ring_dim,
)


class TorsionObject:
    __slots__ = ("carrier", "prime")

    def __init__(self, carrier, prime):
        if not isinstance(carrier, (FreeComplex, ModulePresentation)):
            raise UsageError("carrier must be a free complex or a presentation")
        if carrier.ring.key() != prime.ring.key():
            raise UsageError("carrier and prime live over different rings")
        self.carrier = carrier
        self.prime = prime

    @property
    def ring(self):
        return self.carrier.ring

    def __repr__(self):
        return "TorsionObject(%r at %r)" % (self.carrier, self.prime)


def unit(prime):
    return TorsionObject(FreeComplex.unit(prime.ring), prime)


def same_prime(p, q):
    if p.ring.key() != q.ring.key():
        return False
    a = sorted(p.ring.freeze(g.data) for g in p.gens)
    b = sorted(q.ring.freeze(g.data) for g in q.gens)
    return a == b


def _as_complex(obj, cutoff=None):
    if isinstance(obj.carrier, FreeComplex):
        return obj.carrier
    res = resolve(obj.carrier, cutoff)
    if not res.complete:
        raise UsageError("no finite free model for the carrier within "
                         "cutoff %d" % res.cutoff)
    return res.resolution


def gtensor(x1, x2, cutoff=None):
    if not same_prime(x1.prime, x2.prime):
        raise UsageError("tensor of objects at different primes")
    c = tensor(_as_complex(x1, cutoff), _as_complex(x2, cutoff))
    return TorsionObject(c, x1.prime)


def sw_dual(x, cutoff=None):
    """Dual against the unit; needs a finite free model of the carrier."""
    if isinstance(x.carrier, FreeComplex):
        F = x.carrier
    else:
        res = resolve(x.carrier, cutoff)
        if not res.complete:
            raise NotDualisableError(
                "carrier has no finite free model within cutoff %d; "
                "the dual is not representable here" % res.cutoff)
        F = res.resolution
    dual = hom_complex(F, FreeComplex.unit(x.ring))
    return TorsionObject(dual, x.prime)


def betti_table(x, cutoff=None):
    return betti_at_prime(x.carrier, x.prime, cutoff)


# ---------------------------------------------------------------------------
# classifiers

class Dualisable:
    kind = "Dualisable"
    __slots__ = ("total", "table")

    def __init__(self, total, table):
        self.total = total
        self.table = dict(table)

    def __repr__(self):
        return "Dualisable(total=%d)" % self.total


class NotDualisable:
    kind = "NotDualisable"
    __slots__ = ("certificate",)

    def __init__(self, certificate):
        self.certificate = certificate

    def __repr__(self):
        return "NotDualisable(%r)" % (self.certificate,)


class Unknown:
    kind = "Unknown"
    __slots__ = ("cutoff",)

    def __init__(self, cutoff):
        self.cutoff = cutoff

    def __repr__(self):
        return "Unknown(cutoff=%d)" % self.cutoff


def is_dualisable(x, cutoff=None):
    d = finiteness_decision(x.carrier, x.prime, cutoff)
    if isinstance(d, Finite):
        return Dualisable(d.total, d.table)
    if isinstance(d, PeriodicInfinite):
        return NotDualisable(d)
    return Unknown(d.cutoff)


def recognize_shifted_unit(x, cutoff=None):
    """The shift s with invariants exactly those of the s-fold suspension
    of the unit, or None.  Only a Finite verdict can certify this."""
    d = finiteness_decision(x.carrier, x.prime, cutoff)
    if not isinstance(d, Finite):
        return None
    if d.total == 1 and len(d.table) == 1:
        (deg, b), = d.table.items()
        if b == 1:
            return -deg
    return None


def _homology_presentations(x):
    """Per-degree homology of the carrier as presented modules."""
    if isinstance(x.carrier, ModulePresentation):
        return {0: x.carrier}
    h = homology(x.carrier)
    out = {}
    for n in h.degrees():
        s = h.summand(n)
        if s.is_zero():
            continue
        if hasattr(s, "pres"):
            out[n] = s.pres
        else:
            # Smith-form summand: rebuild a diagonal presentation
            R = s.ring
            rank = s.free_rank + len(s.factors)
            rel = Matrix.zeros(R, rank, len(s.factors))
            rows = [list(r) for r in rel.rows]
            for j, f in enumerate(s.factors):
                rows[j][j] = f
            rel = Matrix(R, rank, len(s.factors), rows)
            out[n] = ModulePresentation(R, rank, rel)
    return out


def _euclid_compact(x):
    """Over Z or k[t]: compact iff no homology has a free summand
    (at the zero ideal everything bounded is compact)."""
    if not x.prime.gens:
        return True
    if isinstance(x.carrier, ModulePresentation):
        free = x.carrier.ambient_rank - euclid_rank(x.carrier.relations)
        return free == 0
    h = homology(x.carrier)
    return all(h.summand(n).free_rank == 0
               for n in h.degrees() if not h.summand(n).is_zero())


def is_compact(x):
    """Finite length of every homology module after localising at the
    prime: the prime-power-torsion part is always finite length there, so
    the question is whether the rest dies, checked by a colon ideal
    escaping the prime for each generator."""
    R = x.ring
    if R.is_field:
        return True
    if isinstance(R, Integers) or (isinstance(R, PolynomialRing) and R.nvars == 1):
        return _euclid_compact(x)
    if not isinstance(R, (PolynomialRing, QuotientRing)):
        raise UsageError("compactness over unsupported ring %r" % (R,))
    if not x.prime.gens:
        return True
    pgens = [g for g in x.prime.gens]
    for n, pres in _homology_presentations(x).items():
        if pres.is_zero_module():
            continue
        tg, _ = saturation(pres, pgens)
        quot_rel = pres.relations.hstack(tg)
        for k in range(pres.ambient_rank):
            e = Matrix.zeros(R, pres.ambient_rank, 1)
            rows = [list(r) for r in e.rows]
            rows[k][0] = R.from_int(1)
            e = Matrix(R, pres.ambient_rank, 1, rows)
            ann = colon_ideal(quot_rel, e)
            if not any(not x.prime.contains(a) for a in ann):
                return False
    return True


# ---------------------------------------------------------------------------
# spectrum of the completed local ring, symbolically

def _field_name(base):
    if isinstance(base, Rationals):
        return "Q"
    if isinstance(base, PrimeField):
        return "F_%d" % base.p
    return str(base)


def spectrum_report(prime):
    """One-line description of Spec of the completion of the local ring
    at the prime; the dimension is preserved by completion and the line
    says so."""
    ring = prime.ring
    if isinstance(ring, Integers):
        if prime.gens:
            p = prime.gens[0].data
            return ("Spec Z_%d = {(0), (%d)}: two points; "
                    "dim preserved under completion: dim A = dim A^ = 1"
                    % (p, p))
        return ("Spec Q = {(0)}: one point; "
                "dim preserved under completion: dim A = dim A^ = 0")
    if isinstance(ring, (Rationals, PrimeField)):
        return ("Spec of a field: one point; "
                "dim preserved under completion: dim A = dim A^ = 0")
    h = prime.height()
    if isinstance(ring, PolynomialRing):
        if prime.is_maximal():
            return ("Spec of a %d-dimensional complete regular local ring "
                    "(%s[[%s]]); dim preserved under completion: "
                    "dim A_p = dim A^ = %d"
                    % (h, _field_name(ring.base), ",".join(ring.vars), h))
        return ("Spec of the completion of A_p at p: %d-dimensional "
                "complete regular local ring with residue field Frac(A/p); "
                "dim preserved under completion: dim A_p = dim A^ = %d"
                % (h, h))
    if isinstance(ring, QuotientRing):
        if h == 0 and prime.is_maximal():
            return ("one point (artinian local); "
                    "dim preserved under completion: dim A = dim A^ = 0")
        return ("Spec of the completion of A_p at p: complete local ring "
                "of dimension %d; dim preserved under completion: "
                "dim A_p = dim A^ = %d" % (h, h))
    raise UsageError("spectrum report over unsupported ring %r" % (ring,))
