"""Free resolutions by iterated syzygies, Betti numbers at a prime, and
the finite / periodic / unknown decision.

A bounded free complex is its own resolution.  A presented module is
resolved in cohomological degrees 0, -1, -2, ... by repeatedly taking
syzygies of the previous differential; deeper steps are pruned to an
irredundant generating set and column-normalised so that a periodic
tail shows up as verbatim matrix repetition.
"""

from __future__ import annotations

from . import linalg, poly
from .complexes import ChainMap, FreeComplex
from .errors import UsageError
from .grobner import (
    ModulePresentation, irredundant_columns, syzygies,
)
from .linalg import Matrix
from .rings import (
    Integers, PolynomialRing, QuotientRing, RingElement,
    regularity_class, ring_dim,
)


class ResolutionResult:
    __slots__ = ("resolution", "witness", "cutoff", "complete")

    def __init__(self, resolution, witness, cutoff, complete):
        self.resolution = resolution
        self.witness = witness
        self.cutoff = cutoff
        self.complete = complete

    def __repr__(self):
        state = "complete" if self.complete else "cut off"
        return "ResolutionResult(%r, %s)" % (self.resolution, state)


class Finite:
    kind = "Finite"
    __slots__ = ("total", "table")

    def __init__(self, total, table):
        self.total = total
        self.table = dict(table)

    def __repr__(self):
        return "Finite(total=%d, table=%r)" % (self.total, self.table)


class PeriodicInfinite:
    kind = "PeriodicInfinite"
    __slots__ = ("period", "onset")

    def __init__(self, period, onset):
        self.period = period
        self.onset = onset

    def __repr__(self):
        return "PeriodicInfinite(period=%d, onset=%d)" % (self.period, self.onset)


class UnknownAtCutoff:
    kind = "UnknownAtCutoff"
    __slots__ = ("cutoff",)

    def __init__(self, cutoff):
        self.cutoff = cutoff

    def __repr__(self):
        return "UnknownAtCutoff(cutoff=%d)" % self.cutoff


def default_cutoff(ring, amplitude=0):
    if regularity_class(ring) == "regular":
        return ring_dim(ring) + amplitude + 4
    return 8


def _drop_zero_columns(M):
    R = M.ring
    keep = [j for j in range(M.ncols)
            if any(not R.is_zero(M.rows[i][j]) for i in range(M.nrows))]
    return M.submatrix(range(M.nrows), keep)


def _lead_scale(R, p):
    """Unit making the payload's leading coefficient one, or None."""
    if isinstance(R, Integers):
        return -1 if p < 0 else 1
    if isinstance(R, PolynomialRing):
        _, c = poly.lead_term(p, R.mono_key)
        return poly.p_const(R.nvars, R.coeffs, R.coeffs.inv(c))
    if isinstance(R, QuotientRing):
        cover = R.cover
        _, c = poly.lead_term(p, cover.mono_key)
        return poly.p_const(cover.nvars, cover.coeffs, cover.coeffs.inv(c))
    return None


def normalise_columns(M):
    """Scale each column so its first nonzero entry is monic (positive
    over Z) and sort columns deterministically.  Makes repeated syzygy
    matrices comparable verbatim."""
    R = M.ring
    cols = []
    for j in range(M.ncols):
        col = [M.rows[i][j] for i in range(M.nrows)]
        for x in col:
            if not R.is_zero(x):
                u = _lead_scale(R, x)
                if u is not None:
                    col = [R.mul(u, y) for y in col]
                break
        cols.append(col)
    cols.sort(key=lambda c: tuple(R.fmt(x) for x in c))
    return Matrix(R, M.nrows, len(cols),
                  [[cols[j][i] for j in range(len(cols))]
                   for i in range(M.nrows)])


def _presentation_complex(pres):
    R = pres.ring
    ranks = {0: pres.ambient_rank, -1: pres.relations.ncols}
    diffs = {}
    if pres.relations.ncols and not pres.relations.is_zero():
        diffs[-1] = pres.relations
    return FreeComplex(R, ranks, diffs)


def _next_step(cur):
    """Syzygies of the previous differential, pruned and normalised."""
    S = syzygies(cur)
    S = _drop_zero_columns(S)
    R = cur.ring
    # euclidean kernels are already irredundant; prune the rest
    multivariate = (isinstance(R, PolynomialRing) and R.nvars > 1) \
        or isinstance(R, QuotientRing)
    if multivariate and S.ncols > 1:
        S = irredundant_columns(S)
    return normalise_columns(S)


def resolve(X, cutoff=None):
    """Free resolution of a complex (itself) or a presented module
    (iterated syzygies down to -cutoff)."""
    if isinstance(X, FreeComplex):
        eff = cutoff if cutoff is not None else \
            default_cutoff(X.ring, X.hi - X.lo)
        if eff < X.lo:
            raise UsageError("cutoff %d below the lowest degree %d" % (eff, X.lo))
        return ResolutionResult(X, ChainMap.identity(X), eff, True)
    if not isinstance(X, ModulePresentation):
        raise UsageError("resolve expects a complex or a module presentation")
    R = X.ring
    eff = cutoff if cutoff is not None else default_cutoff(R, 0)
    if eff < 0:
        raise UsageError("cutoff %d below the lowest degree 0" % eff)
    first = _drop_zero_columns(X.relations)
    mats = []
    complete = False
    cur = first
    while True:
        if cur.ncols == 0:
            complete = True
            break
        if len(mats) == eff:
            break
        mats.append(cur)
        cur = _next_step(cur)
    ranks = {0: X.ambient_rank}
    diffs = {}
    for i, m in enumerate(mats):
        ranks[-(i + 1)] = m.ncols
        diffs[-(i + 1)] = m
    res = FreeComplex(R, ranks, diffs)
    # comparison map from the presentation complex into the resolution:
    # identity on generators, selection of the surviving relation columns
    pres_cx = _presentation_complex(X)
    comps = {0: Matrix.identity(R, X.ambient_rank)}
    if X.relations.ncols and first.ncols:
        sel = Matrix.zeros(R, first.ncols, X.relations.ncols)
        rows = [list(r) for r in sel.rows]
        pos = 0
        for j in range(X.relations.ncols):
            col = [X.relations.rows[i][j] for i in range(X.relations.nrows)]
            if any(not R.is_zero(x) for x in col):
                rows[pos][j] = R.from_int(1)
                pos += 1
        sel = Matrix(R, first.ncols, X.relations.ncols, rows)
        comps[-1] = sel
    witness = ChainMap(pres_cx, res, comps)
    return ResolutionResult(res, witness, eff, complete)


def _reduce_complex(F, prime):
    """Differentials of F with entries mapped into A/p."""
    Q = prime.quotient_ring()
    R = F.ring

    def down(p):
        return prime.reduce_to_quotient(RingElement(R, p), Q).data

    return Q, {n: F.diff(n).map_entries(Q, down) for n in range(F.lo, F.hi)}


def _trusted_degrees(res):
    F = res.resolution
    if F.is_zero_complex():
        return []
    degs = list(F.degrees())
    if not res.complete:
        degs = [n for n in degs if n > F.lo]
    return degs


def _betti_from_resolution(res, prime):
    F = res.resolution
    if F.is_zero_complex():
        return {}
    Q, reduced = _reduce_complex(F, prime)
    ranks = {n: linalg.generic_rank(reduced[n]) for n in reduced}
    out = {}
    for n in _trusted_degrees(res):
        b = F.rank(n) - ranks.get(n, 0) - ranks.get(n - 1, 0)
        if b:
            out[n] = b
    return out


def betti_at_prime(X, prime, cutoff=None):
    """beta_i = rank over Frac(A/p) of H^i of the resolution reduced
    mod p.  Degrees whose incoming differential fell below the cutoff
    are omitted rather than reported wrongly."""
    return _betti_from_resolution(resolve(X, cutoff), prime)


def _periodicity(mats):
    """Smallest (period, onset) with two consecutive verbatim repeats,
    or None.  mats[k] is the k-th syzygy matrix, already normalised."""
    K = len(mats)
    for p in range(1, K):
        for o in range(0, K - p - 1):
            if mats[o] == mats[o + p] and mats[o + 1] == mats[o + p + 1]:
                return p, o
    return None


def periodicity_certificate(res):
    """(period, onset) of verbatim repetition among the syzygy matrices
    of a resolution, or None.  Column normalisation makes repeats of the
    same tail literal matrix equality."""
    F = res.resolution
    mats = [normalise_columns(F.diff(-(k + 1))) for k in range(-F.lo)]
    return _periodicity(mats)


def finiteness_decision(X, prime, cutoff=None):
    """Finite (with total Betti and table), PeriodicInfinite (verbatim
    repetition certificate on a hypersurface), or UnknownAtCutoff."""
    if isinstance(X, FreeComplex):
        ring = X.ring
        amp = (X.hi - X.lo) if not X.is_zero_complex() else 0
        lo_bound = X.lo
    else:
        ring = X.ring
        amp = 0
        lo_bound = 0
    eff = cutoff if cutoff is not None else default_cutoff(ring, amp)
    res = resolve(X, eff)
    table = _betti_from_resolution(res, prime)
    if res.complete:
        return Finite(sum(table.values()), table)
    rclass = regularity_class(ring)
    F = res.resolution
    if rclass == "regular":
        # vanishing window: beta_i = 0 below lo(X) - dim, so a trusted
        # table covering that window decides finiteness outright
        window_lo = lo_bound - ring_dim(ring)
        if F.lo + 1 <= window_lo:
            table = {n: b for n, b in table.items() if n >= window_lo}
            return Finite(sum(table.values()), table)
        return UnknownAtCutoff(eff)
    if rclass == "hypersurface":
        cert = periodicity_certificate(res)
        if cert is not None:
            p, o = cert
            periodic_degs = [-(o + 1 + t) for t in range(p + 1)]
            if any(table.get(d) for d in periodic_degs):
                return PeriodicInfinite(p, o)
            # periodic tail invisible at p: the table is all there is
            return Finite(sum(table.values()), table)
    return UnknownAtCutoff(eff)
