"""Exact matrices over the ring tower.

Entries are stored as raw payloads; the owning descriptor does arithmetic.
Rank over a fraction field of a quotient domain is computed fraction-free
(cross multiplication only, no division), with a zero-divisor trip wire
that reports an inconsistent prime instead of a wrong rank.  Euclidean
rings (Z, Q[x]) get Smith normal form with transform tracking for kernels,
exact solves, and invariant factors.
"""

from __future__ import annotations

from fractions import Fraction

from . import poly
from .errors import InconsistentPrimeError, UnsupportedRingError, UsageError
from .rings import (
    FractionField, Integers, PolynomialRing, PrimeField, QuotientRing,
    Rationals, RingElement, TruncatedCompletion,
)


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, nrows, ncols, rows):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(r) for r in rows)
        if len(self.rows) != nrows or any(len(r) != ncols for r in self.rows):
            raise UsageError("matrix shape mismatch")

    @classmethod
    def from_rows(cls, ring, rows):
        data = [[ring.el(x).data for x in row] for row in rows]
        n = len(data)
        m = len(data[0]) if data else 0
        return cls(ring, n, m, data)

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.from_int(0)
        return cls(ring, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, ring, n):
        z = ring.from_int(0)
        o = ring.from_int(1)
        return cls(ring, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    def at(self, i, j):
        return self.rows[i][j]

    def el(self, i, j):
        return RingElement(self.ring, self.rows[i][j])

    def is_zero(self):
        return all(self.ring.is_zero(x) for r in self.rows for x in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring.key() == other.ring.key()
                and self.nrows == other.nrows and self.ncols == other.ncols
                and all(self.ring.eq(a, b)
                        for ra, rb in zip(self.rows, other.rows)
                        for a, b in zip(ra, rb)))

    def __hash__(self):
        return hash((self.ring.key(), self.nrows, self.ncols,
                     tuple(self.ring.freeze(x) for r in self.rows for x in r)))

    def __repr__(self):
        body = "; ".join(", ".join(self.ring.fmt(x) for x in r) for r in self.rows)
        return "[%s]" % body

    def add(self, other):
        self._check(other)
        R = self.ring
        return Matrix(R, self.nrows, self.ncols,
                      [[R.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def neg(self):
        R = self.ring
        return Matrix(R, self.nrows, self.ncols,
                      [[R.neg(a) for a in r] for r in self.rows])

    def scale(self, c):
        R = self.ring
        if isinstance(c, RingElement):
            c = R.el(c).data
        elif isinstance(c, (int, str)):
            c = R.el(c).data
        return Matrix(R, self.nrows, self.ncols,
                      [[R.mul(c, a) for a in r] for r in self.rows])

    def mul(self, other):
        if self.ncols != other.nrows or self.ring.key() != other.ring.key():
            raise UsageError("matrix product shape/ring mismatch")
        R = self.ring
        z = R.from_int(0)
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    acc = R.add(acc, R.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(R, self.nrows, other.ncols, out)

    def transpose(self):
        return Matrix(self.ring, self.ncols, self.nrows,
                      [[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise UsageError("hstack row mismatch")
        return Matrix(self.ring, self.nrows, self.ncols + other.ncols,
                      [ra + rb for ra, rb in zip(self.rows, other.rows)])

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise UsageError("vstack col mismatch")
        return Matrix(self.ring, self.nrows + other.nrows, self.ncols,
                      self.rows + other.rows)

    def submatrix(self, row_idx, col_idx):
        return Matrix(self.ring, len(row_idx), len(col_idx),
                      [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def col(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def map_entries(self, target_ring, fn):
        return Matrix(target_ring, self.nrows, self.ncols,
                      [[fn(x) for x in r] for r in self.rows])

    def to_strings(self):
        return [[self.ring.fmt(x) for x in r] for r in self.rows]

    def _check(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) \
                or self.ring.key() != other.ring.key():
            raise UsageError("matrix shape/ring mismatch")


def block_diag(ring, blocks):
    blocks = [b for b in blocks]
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = Matrix.zeros(ring, n, m)
    rows = [list(r) for r in out.rows]
    i0 = j0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[i0 + i][j0 + j] = b.rows[i][j]
        i0 += b.nrows
        j0 += b.ncols
    return Matrix(ring, n, m, rows)


def kron(a, b):
    """Kronecker product (used to vectorise hom differentials)."""
    R = a.ring
    out = []
    for i in range(a.nrows):
        for k in range(b.nrows):
            row = []
            for j in range(a.ncols):
                for l in range(b.ncols):
                    row.append(R.mul(a.rows[i][j], b.rows[k][l]))
            out.append(row)
    return Matrix(R, a.nrows * b.nrows, a.ncols * b.ncols, out)


# ---------------------------------------------------------------------------
# field linear algebra

def _field_ops(ring):
    if not ring.is_field:
        raise UsageError("%r is not a field" % (ring,))
    return ring


def field_rref(M):
    """Reduced row echelon form over a field; returns (rref rows, pivots)."""
    R = _field_ops(M.ring)
    rows = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for c in range(M.ncols):
        pr = None
        for i in range(r, M.nrows):
            if not R.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = R.inv(rows[r][c])
        rows[r] = [R.mul(inv, x) for x in rows[r]]
        for i in range(M.nrows):
            if i != r and not R.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [R.add(x, R.neg(R.mul(f, y))) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == M.nrows:
            break
    return rows, pivots


def field_rank(M):
    _, pivots = field_rref(M)
    return len(pivots)


def field_kernel(M):
    """Right kernel basis as a Matrix (ncols x k)."""
    R = M.ring
    rows, pivots = field_rref(M)
    free = [c for c in range(M.ncols) if c not in pivots]
    cols = []
    for fc in free:
        v = [R.from_int(0)] * M.ncols
        v[fc] = R.from_int(1)
        for r, pc in enumerate(pivots):
            v[pc] = R.neg(rows[r][fc])
        cols.append(v)
    return Matrix(R, M.ncols, len(cols), [[cols[j][i] for j in range(len(cols))]
                                          for i in range(M.ncols)])


def field_solve(M, B):
    """One solution X with M X = B over a field, or None."""
    R = M.ring
    aug = M.hstack(B)
    rows, pivots = field_rref(aug)
    # inconsistency: pivot in the B block
    for c in pivots:
        if c >= M.ncols:
            return None
    out = [[R.from_int(0)] * B.ncols for _ in range(M.ncols)]
    for r, pc in enumerate(pivots):
        for j in range(B.ncols):
            out[pc][j] = rows[r][M.ncols + j]
    return Matrix(R, M.ncols, B.ncols, out)


# ---------------------------------------------------------------------------
# fraction-free rank over (the fraction field of) a quotient domain

def generic_rank(M):
    """Rank of M over Frac(ring) for domain-like rings.

    Polynomial and quotient rings use cross-multiplication elimination with
    Groebner-canonical zero tests; a product of two nonzero entries landing
    on zero witnesses a zero divisor and raises InconsistentPrimeError.
    Fields fall back to Gaussian elimination, Z to rank over Q."""
    ring = M.ring
    if ring.is_field:
        return field_rank(M)
    if isinstance(ring, Integers):
        QQ = Rationals()
        return field_rank(M.map_entries(QQ, lambda x: Fraction(x)))
    if not isinstance(ring, (PolynomialRing, QuotientRing)):
        raise UnsupportedRingError("generic rank over %r" % (ring,))
    rows = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    rank = 0
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if not ring.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nr):
            b = rows[i][c]
            if ring.is_zero(b):
                continue
            check = ring.mul(piv, b)
            if ring.is_zero(check):
                raise InconsistentPrimeError(
                    "zero divisor found: (%s)*(%s) = 0 in %s"
                    % (ring.fmt(piv), ring.fmt(b), ring))
            rows[i] = [ring.add(ring.mul(piv, x), ring.neg(ring.mul(b, y)))
                       for x, y in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        if r == nr:
            break
    return rank


# ---------------------------------------------------------------------------
# euclidean rings: Z and univariate polynomial rings over a field

class _EuclidZ:
    def __init__(self, ring):
        self.ring = ring

    def norm(self, a):
        return abs(a)

    def divmod(self, a, b):
        q, r = divmod(a, b)
        # symmetric remainder keeps entries small; python's r has the sign
        # of b, so shifting by one step of b always moves it past zero
        if r and 2 * abs(r) > abs(b):
            q += 1
            r -= b
        return q, r

    def is_unit(self, a):
        return a in (1, -1)

    def unit_normalise(self, a):
        """(u, a*u) with a*u the canonical associate."""
        return (1, a) if a >= 0 else (-1, -a)


class _EuclidPoly:
    def __init__(self, ring):
        if ring.nvars != 1:
            raise UsageError("euclidean polynomial ring must be univariate")
        self.ring = ring
        self.field = ring.coeffs

    def norm(self, a):
        return poly.p_total_deg(a) + 1

    def divmod(self, a, b):
        f = self.field
        key = self.ring.mono_key
        q = {}
        r = dict(a)
        bm, bc = poly.lead_term(b, key)
        while r:
            rm, rc = poly.lead_term(r, key)
            if not poly.mono_divides(bm, rm):
                break
            t = poly.mono_div(rm, bm)
            c = f.mul(rc, f.inv(bc))
            q = poly.p_add(f, q, {t: c})
            r = poly.p_sub(f, r, poly.term_mul(f, c, t, b))
        return q, r

    def is_unit(self, a):
        return bool(a) and poly.p_total_deg(a) == 0

    def unit_normalise(self, a):
        if not a:
            return (self.ring.from_int(1), a)
        _, lc = poly.lead_term(a, self.ring.mono_key)
        inv = self.field.inv(lc)
        u = poly.p_const(1, self.field, inv)
        return (u, poly.p_scale(self.field, inv, a))


class _EuclidChain:
    """F[x]/(x^m): every nonzero element is a unit times a power of x,
    so valuation serves as the norm and division is exact whenever the
    valuations allow it.  Kernels are not free over this ring, so only
    the Smith-form family may come here; basis extraction stays on the
    genuine domains."""

    def __init__(self, ring):
        rel, = ring.relations
        (self.length,), = rel
        self.ring = ring
        self.field = ring.coeffs

    def _val(self, a):
        return min(e for (e,) in a)

    def _unit_inv(self, u):
        # Newton doubling for the inverse of a valuation-zero element
        R = self.ring
        v = {(0,): self.field.inv(u[(0,)])}
        prec = 1
        while prec < self.length:
            uv = R.mul(u, v)
            v = R.mul(v, R.add(R.from_int(2), R.neg(uv)))
            prec *= 2
        return v

    def norm(self, a):
        return self._val(a) + 1

    def divmod(self, a, b):
        if not a:
            return {}, {}
        va, vb = self._val(a), self._val(b)
        if va < vb:
            return {}, dict(a)
        unit = {(e - vb,): c for (e,), c in b.items()}
        shifted = {(e - vb,): c for (e,), c in a.items()}
        return self.ring.mul(shifted, self._unit_inv(unit)), {}

    def is_unit(self, a):
        return bool(a) and self._val(a) == 0

    def unit_normalise(self, a):
        if not a:
            return (self.ring.from_int(1), a)
        v = self._val(a)
        u = self._unit_inv({(e - v,): c for (e,), c in a.items()})
        return (u, self.ring.mul(u, a))


def is_chain_ring(ring):
    """A univariate polynomial ring modulo one power of its variable."""
    if not isinstance(ring, QuotientRing) or ring.cover.nvars != 1:
        return False
    if len(ring.relations) != 1:
        return False
    rel, = ring.relations
    return len(rel) == 1 and next(iter(rel))[0] >= 1


def euclid_ops(ring):
    if isinstance(ring, Integers):
        return _EuclidZ(ring)
    if isinstance(ring, PolynomialRing) and ring.nvars == 1:
        return _EuclidPoly(ring)
    if is_chain_ring(ring):
        return _EuclidChain(ring)
    raise UnsupportedRingError("no euclidean structure on %r" % (ring,))


def smith_form(M, want_transforms=True):
    """Diagonalise M over a euclidean ring: returns (D, U, V) with
    U*M*V = D, D diagonal with ascending divisibility, U and V invertible.
    Diagonal entries are unit-normalised (positive ints, monic polys)."""
    ring = M.ring
    E = euclid_ops(ring)
    R = ring
    rows = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    U = [list(r) for r in Matrix.identity(R, nr).rows]
    V = [list(r) for r in Matrix.identity(R, nc).rows]

    def row_op(i, j, q):
        # row_i -= q*row_j
        rows[i] = [R.add(a, R.neg(R.mul(q, b))) for a, b in zip(rows[i], rows[j])]
        U[i] = [R.add(a, R.neg(R.mul(q, b))) for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):
        # col_i -= q*col_j
        for r in rows:
            r[i] = R.add(r[i], R.neg(R.mul(q, r[j])))
        for r in V:
            r[i] = R.add(r[i], R.neg(R.mul(q, r[j])))

    def swap_rows(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in rows:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def scale_row(i, u):
        rows[i] = [R.mul(u, a) for a in rows[i]]
        U[i] = [R.mul(u, a) for a in U[i]]

    k = 0
    while k < min(nr, nc):
        # locate minimal-norm nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                x = rows[i][j]
                if not R.is_zero(x):
                    n = E.norm(x)
                    if best is None or n < best:
                        best = n
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        dirty = False
        for i in range(k + 1, nr):
            if R.is_zero(rows[i][k]):
                continue
            q, r = E.divmod(rows[i][k], rows[k][k])
            row_op(i, k, q)
            if not R.is_zero(r):
                dirty = True
        for j in range(k + 1, nc):
            if R.is_zero(rows[k][j]):
                continue
            q, r = E.divmod(rows[k][j], rows[k][k])
            col_op(j, k, q)
            if not R.is_zero(r):
                dirty = True
        if dirty:
            continue
        # divisibility sweep: every remaining entry must be divisible by d_k
        bad = None
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if R.is_zero(rows[i][j]):
                    continue
                _, rem = E.divmod(rows[i][j], rows[k][k])
                if not R.is_zero(rem):
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(k, bad, R.neg(R.from_int(1)))  # add row bad into row k
            continue
        u, _ = E.unit_normalise(rows[k][k])
        if not R.eq(u, R.from_int(1)):
            scale_row(k, u)
        k += 1
    D = Matrix(R, nr, nc, rows)
    if not want_transforms:
        return D, None, None
    return D, Matrix(R, nr, nr, U), Matrix(R, nc, nc, V)


def euclid_rank(M):
    D, _, _ = smith_form(M, want_transforms=False)
    return sum(1 for i in range(min(M.nrows, M.ncols))
               if not M.ring.is_zero(D.rows[i][i]))


def euclid_kernel(M):
    """Right kernel basis over a euclidean domain (saturated sublattice)."""
    if is_chain_ring(M.ring):
        raise UnsupportedRingError("kernels over a chain ring are not free")
    D, _, V = smith_form(M)
    r = sum(1 for i in range(min(M.nrows, M.ncols))
            if not M.ring.is_zero(D.rows[i][i]))
    idx = list(range(r, M.ncols))
    return V.submatrix(range(M.ncols), idx)


def euclid_solve(M, B):
    """Solve M X = B exactly over a euclidean domain, or None."""
    ring = M.ring
    E = euclid_ops(ring)
    D, U, V = smith_form(M)
    UB = U.mul(B)
    r = min(M.nrows, M.ncols)
    Y = [[ring.from_int(0)] * B.ncols for _ in range(M.ncols)]
    for i in range(M.nrows):
        d = D.rows[i][i] if i < r else ring.from_int(0)
        for j in range(B.ncols):
            b = UB.rows[i][j]
            if ring.is_zero(d):
                if not ring.is_zero(b):
                    return None
            else:
                q, rem = E.divmod(b, d)
                if not ring.is_zero(rem):
                    return None
                if i < M.ncols:
                    Y[i][j] = q
    return V.mul(Matrix(ring, M.ncols, B.ncols, Y))


def invariant_factors(M):
    """Nonunit diagonal entries of the Smith form, ascending divisibility,
    plus the count of zero diagonal slots beyond the rank is left to the
    caller (use euclid_rank)."""
    ring = M.ring
    E = euclid_ops(ring)
    D, _, _ = smith_form(M, want_transforms=False)
    out = []
    for i in range(min(M.nrows, M.ncols)):
        d = D.rows[i][i]
        if ring.is_zero(d):
            continue
        if not E.is_unit(d):
            out.append(d)
    return out
