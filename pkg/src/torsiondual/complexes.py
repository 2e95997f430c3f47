"""Bounded complexes of finite free modules and the operations on them.

Conventions are cohomological throughout: the differential raises degree,
d^n maps X^n to X^{n+1}, and a differential matrix has one column per
basis element of the source.  Suspension by s reindexes (sigma^s X)^n =
X^(n+s) and scales the differential by (-1)^s; tensor products carry the
usual alternating sign on the second factor.
"""

from __future__ import annotations

from . import linalg
from .errors import UsageError
from .grobner import (
    ModulePresentation, submodule_contains, syzygies,
)
from .linalg import Matrix, kron
from .rings import Integers, PolynomialRing, QuotientRing


class FreeComplex:
    __slots__ = ("ring", "_ranks", "_diffs", "lo", "hi")

    def __init__(self, ring, ranks, diffs, check=True):
        """check=False skips the d^2 sweep only; shape checks always run.
        The functorial builders below pass False, since their output is
        square-zero by construction and the sweep is the dominant cost on
        tensor-sized complexes."""
        self.ring = ring
        self._ranks = {int(n): int(r) for n, r in ranks.items() if r}
        if self._ranks:
            self.lo = min(self._ranks)
            self.hi = max(self._ranks)
        else:
            self.lo = self.hi = 0
        self._diffs = {}
        for n, M in diffs.items():
            n = int(n)
            if M.ring.key() != ring.key():
                raise UsageError("differential over the wrong ring")
            if M.nrows != self.rank(n + 1) or M.ncols != self.rank(n):
                raise UsageError("differential at %d has shape %dx%d, "
                                 "expected %dx%d" % (n, M.nrows, M.ncols,
                                                     self.rank(n + 1), self.rank(n)))
            if not M.is_zero():
                self._diffs[n] = M
        if not check:
            return
        for n in list(self._diffs):
            if n + 1 in self._diffs:
                comp = self._diffs[n + 1].mul(self._diffs[n])
                if not comp.is_zero():
                    raise UsageError("d^2 is nonzero between degrees "
                                     "%d and %d" % (n, n + 2))

    @classmethod
    def unit(cls, ring):
        return cls(ring, {0: 1}, {})

    @classmethod
    def zero(cls, ring):
        return cls(ring, {}, {})

    @classmethod
    def from_strings(cls, ring, ranks, diffs):
        """diffs as nested lists of parseable entries."""
        mats = {int(n): Matrix.from_rows(ring, rows) for n, rows in diffs.items()}
        return cls(ring, ranks, mats)

    def rank(self, n):
        return self._ranks.get(n, 0)

    def diff(self, n):
        if n in self._diffs:
            return self._diffs[n]
        return Matrix.zeros(self.ring, self.rank(n + 1), self.rank(n))

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_zero_complex(self):
        return not self._ranks

    def amplitude(self):
        """(inf, sup) of the support, or None for the zero complex."""
        if not self._ranks:
            return None
        return (self.lo, self.hi)

    def total_rank(self):
        return sum(self._ranks.values())

    def __eq__(self, other):
        return (isinstance(other, FreeComplex)
                and self.ring.key() == other.ring.key()
                and self._ranks == other._ranks
                and all(self.diff(n) == other.diff(n)
                        for n in range(self.lo - 1, self.hi + 1)))

    def __hash__(self):
        return hash((self.ring.key(), tuple(sorted(self._ranks.items()))))

    def __repr__(self):
        if not self._ranks:
            return "FreeComplex(0)"
        parts = ["%d:%d" % (n, self.rank(n)) for n in self.degrees()]
        return "FreeComplex(%s)" % ", ".join(parts)

    def to_data(self):
        return {
            "degrees": [self.lo, self.hi],
            "ranks": {str(n): self.rank(n) for n in self.degrees()},
            "differentials": {str(n): self._diffs[n].to_strings()
                              for n in sorted(self._diffs)},
        }

    @classmethod
    def from_data(cls, ring, data):
        ranks = {int(n): r for n, r in data.get("ranks", {}).items()}
        diffs = {int(n): Matrix.from_rows(ring, rows)
                 for n, rows in data.get("differentials", {}).items()}
        return cls(ring, ranks, diffs)


class ChainMap:
    __slots__ = ("src", "tgt", "_comps")

    def __init__(self, src, tgt, comps):
        if src.ring.key() != tgt.ring.key():
            raise UsageError("chain map between different rings")
        self.src = src
        self.tgt = tgt
        self._comps = {}
        for n, M in comps.items():
            n = int(n)
            if M.nrows != tgt.rank(n) or M.ncols != src.rank(n):
                raise UsageError("component at %d has wrong shape" % n)
            if not M.is_zero():
                self._comps[n] = M
        lo = min(src.lo, tgt.lo)
        hi = max(src.hi, tgt.hi)
        for n in range(lo - 1, hi + 1):
            left = self.comp(n + 1).mul(src.diff(n))
            right = tgt.diff(n).mul(self.comp(n))
            if left != right:
                raise UsageError("chain map does not commute at degree %d" % n)

    @classmethod
    def zero(cls, src, tgt):
        return cls(src, tgt, {})

    @classmethod
    def identity(cls, X):
        return cls(X, X, {n: Matrix.identity(X.ring, X.rank(n))
                          for n in X.degrees()})

    def comp(self, n):
        if n in self._comps:
            return self._comps[n]
        return Matrix.zeros(self.src.ring, self.tgt.rank(n), self.src.rank(n))


def suspend(X, s):
    ranks = {n - s: X.rank(n) for n in X.degrees()}
    sign = X.ring.from_int(-1 if s % 2 else 1)
    diffs = {n - s: X.diff(n).scale(sign) for n in range(X.lo, X.hi)}
    return FreeComplex(X.ring, ranks, diffs, check=False)


def direct_sum(X, Y):
    if X.ring.key() != Y.ring.key():
        raise UsageError("direct sum over different rings")
    lo = min(X.lo, Y.lo)
    hi = max(X.hi, Y.hi)
    ranks = {n: X.rank(n) + Y.rank(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        diffs[n] = linalg.block_diag(X.ring, [X.diff(n), Y.diff(n)])
    return FreeComplex(X.ring, ranks, diffs, check=False)


def cone(f):
    """Mapping cone: C^n = X^(n+1) + Y^n, d(x, y) = (-dx, fx + dy)."""
    X, Y = f.src, f.tgt
    R = X.ring
    lo = min(X.lo - 1, Y.lo)
    hi = max(X.hi - 1, Y.hi)
    ranks = {n: X.rank(n + 1) + Y.rank(n) for n in range(lo, hi + 1)}
    neg = R.from_int(-1)
    diffs = {}
    for n in range(lo, hi):
        a = X.diff(n + 1).scale(neg)
        b = Matrix.zeros(R, X.rank(n + 2), Y.rank(n))
        c = f.comp(n + 1)
        d = Y.diff(n)
        diffs[n] = a.hstack(b).vstack(c.hstack(d))
    return FreeComplex(R, ranks, diffs, check=False)


def _assemble(ring, row_sizes, col_sizes, blocks):
    """Block matrix from a sparse {(row_block, col_block): Matrix} dict."""
    nr = sum(row_sizes)
    nc = sum(col_sizes)
    grid = [[ring.from_int(0)] * nc for _ in range(nr)]
    row_off = [0]
    for s in row_sizes:
        row_off.append(row_off[-1] + s)
    col_off = [0]
    for s in col_sizes:
        col_off.append(col_off[-1] + s)
    for (bi, bj), M in blocks.items():
        for i in range(M.nrows):
            for j in range(M.ncols):
                grid[row_off[bi] + i][col_off[bj] + j] = M.rows[i][j]
    return Matrix(ring, nr, nc, grid)


def tensor(X, Y):
    """Tensor product with the sign d(x o y) = dx o y + (-1)^|x| x o dy.

    Degree-n part is the sum of X^i o Y^(n-i) with i ascending; within a
    summand the basis is ordered with the X index major.
    """
    if X.ring.key() != Y.ring.key():
        raise UsageError("tensor over different rings")
    R = X.ring
    if X.is_zero_complex() or Y.is_zero_complex():
        return FreeComplex.zero(R)
    lo = X.lo + Y.lo
    hi = X.hi + Y.hi

    def summands(n):
        return [(i, n - i) for i in range(X.lo, X.hi + 1)
                if X.rank(i) and Y.rank(n - i)]

    ranks = {n: sum(X.rank(i) * Y.rank(j) for i, j in summands(n))
             for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        src = summands(n)
        tgt = summands(n + 1)
        tgt_pos = {p: k for k, p in enumerate(tgt)}
        blocks = {}
        for sj, (i, j) in enumerate(src):
            if (i + 1, j) in tgt_pos:
                blocks[(tgt_pos[(i + 1, j)], sj)] = \
                    kron(X.diff(i), Matrix.identity(R, Y.rank(j)))
            if (i, j + 1) in tgt_pos:
                sgn = R.from_int(-1 if i % 2 else 1)
                blocks[(tgt_pos[(i, j + 1)], sj)] = \
                    kron(Matrix.identity(R, X.rank(i)), Y.diff(j)).scale(sgn)
        diffs[n] = _assemble(R,
                             [X.rank(i) * Y.rank(j) for i, j in tgt],
                             [X.rank(i) * Y.rank(j) for i, j in src],
                             blocks)
    return FreeComplex(R, ranks, diffs, check=False)


def hom_complex(X, Y):
    """Hom(X, Y) with (df)_i = d_Y f_i - (-1)^n f_(i+1) d_X in degree n.

    A map X^i -> Y^(i+n) is flattened row major (target index major), so
    post-composition is kron(d_Y, 1) and pre-composition kron(1, d_X^T).
    """
    if X.ring.key() != Y.ring.key():
        raise UsageError("hom over different rings")
    R = X.ring
    if X.is_zero_complex() or Y.is_zero_complex():
        return FreeComplex.zero(R)
    lo = Y.lo - X.hi
    hi = Y.hi - X.lo

    def summands(n):
        return [i for i in range(X.lo, X.hi + 1)
                if X.rank(i) and Y.rank(i + n)]

    ranks = {n: sum(X.rank(i) * Y.rank(i + n) for i in summands(n))
             for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        src = summands(n)
        tgt = summands(n + 1)
        tgt_pos = {i: k for k, i in enumerate(tgt)}
        sgn = R.from_int(1 if n % 2 else -1)
        blocks = {}
        for sj, i in enumerate(src):
            if i in tgt_pos:
                blocks[(tgt_pos[i], sj)] = \
                    kron(Y.diff(i + n), Matrix.identity(R, X.rank(i)))
            if i - 1 in tgt_pos:
                blk = kron(Matrix.identity(R, Y.rank(i + n)),
                           X.diff(i - 1).transpose()).scale(sgn)
                blocks[(tgt_pos[i - 1], sj)] = blk
        diffs[n] = _assemble(R,
                             [X.rank(i) * Y.rank(i + n + 1) for i in tgt],
                             [X.rank(i) * Y.rank(i + n) for i in src],
                             blocks)
    return FreeComplex(R, ranks, diffs, check=False)


def koszul(ring, elements):
    """Koszul complex on the given elements, in degrees -len..0."""
    out = FreeComplex.unit(ring)
    for e in elements:
        e = ring.el(e).data
        step = FreeComplex(ring, {-1: 1, 0: 1},
                           {-1: Matrix(ring, 1, 1, [[e]])})
        out = tensor(out, step)
    return out


# ---------------------------------------------------------------------------
# homology

class FieldSummand:
    __slots__ = ("dim",)

    def __init__(self, dim):
        self.dim = dim

    def is_zero(self):
        return self.dim == 0

    def __repr__(self):
        return "k^%d" % self.dim


class EuclidSummand:
    """Free part plus cyclic torsion factors (ascending divisibility)."""

    __slots__ = ("ring", "free_rank", "factors")

    def __init__(self, ring, free_rank, factors):
        self.ring = ring
        self.free_rank = free_rank
        self.factors = list(factors)

    def is_zero(self):
        return self.free_rank == 0 and not self.factors

    def __repr__(self):
        bits = []
        if self.free_rank:
            bits.append("free^%d" % self.free_rank)
        bits.extend("cyclic(%s)" % self.ring.fmt(f) for f in self.factors)
        return " + ".join(bits) if bits else "0"


class PresentedSummand:
    """Homology as a presented module: gens are kernel columns in the
    ambient free module, pres describes relations among them."""

    __slots__ = ("gens", "pres")

    def __init__(self, gens, pres):
        self.gens = gens
        self.pres = pres

    def is_zero(self):
        return self.pres.ambient_rank == 0 or self.pres.is_zero_module()

    def __repr__(self):
        return "presented(%d gens, %d relations)" % (
            self.pres.ambient_rank, self.pres.relations.ncols)


class HomologyResult:
    __slots__ = ("ring", "by_degree")

    def __init__(self, ring, by_degree):
        self.ring = ring
        self.by_degree = by_degree

    def degrees(self):
        return sorted(self.by_degree)

    def summand(self, n):
        return self.by_degree.get(n)

    def is_zero(self):
        return all(s.is_zero() for s in self.by_degree.values())

    def support(self):
        return [n for n in self.degrees() if not self.by_degree[n].is_zero()]


def _euclid_like(R):
    return isinstance(R, Integers) or \
        (isinstance(R, PolynomialRing) and R.nvars == 1)


def _chain_homology(R, rank, d_out, d_in):
    """Homology over F[x]/(x^m) by flattening to the coefficient field.

    Kernel and image of a map of free modules agree with those of its
    F-linear flattening, so dim_F of x^t H for t = 0..m-1 is plain Gauss.
    Those dimensions pin down the cyclic decomposition: R/(x^a)
    contributes max(a - t, 0) to the t-th one, a full copy of R
    contributes m - t."""
    E = linalg.euclid_ops(R)
    m = E.length
    F = R.cover.base  # coefficient payloads are shared with R's own
    z = F.from_int(0)

    def flatten(M):
        rows = [[z] * (M.ncols * m) for _ in range(M.nrows * m)]
        for i in range(M.nrows):
            for q in range(M.ncols):
                a = M.rows[i][q]
                for (e,), c in a.items():
                    for j in range(m - e):
                        rows[i * m + j + e][q * m + j] = c
        return Matrix(F, M.nrows * m, M.ncols * m, rows)

    K = linalg.field_kernel(flatten(d_out))
    B = flatten(d_in)
    dim_im = linalg.field_rank(B)
    s = []
    for t in range(m):
        if t == 0:
            shifted = K
        else:
            rows = [[z] * K.ncols for _ in range(rank * m)]
            for i in range(rank):
                for j in range(m - t):
                    src = K.rows[i * m + j]
                    dst = rows[i * m + j + t]
                    for q in range(K.ncols):
                        dst[q] = src[q]
            shifted = Matrix(F, rank * m, K.ncols, rows)
        s.append(linalg.field_rank(shifted.hstack(B)) - dim_im)
    s.append(0)
    free = s[m - 1]
    factors = []
    for a in range(1, m):
        mult = (s[a - 1] - s[a]) - (s[a] - s[a + 1])
        factors.extend({(a,): F.from_int(1)} for _ in range(mult))
    return EuclidSummand(R, free, factors)


def homology(X):
    R = X.ring
    out = {}
    for n in X.degrees():
        if not X.rank(n):
            continue
        d_out = X.diff(n)
        d_in = X.diff(n - 1)
        if R.is_field:
            h = X.rank(n) - linalg.field_rank(d_out) - linalg.field_rank(d_in)
            out[n] = FieldSummand(h)
        elif _euclid_like(R):
            K = linalg.euclid_kernel(d_out)
            C = linalg.euclid_solve(K, d_in)
            if C is None:
                raise UsageError("image does not lie in the kernel")
            facs = linalg.invariant_factors(C)
            free = K.ncols - linalg.euclid_rank(C)
            out[n] = EuclidSummand(R, free, facs)
        elif linalg.is_chain_ring(R):
            out[n] = _chain_homology(R, X.rank(n), d_out, d_in)
        elif isinstance(R, (PolynomialRing, QuotientRing)):
            K = syzygies(d_out)
            if K.ncols == 0:
                out[n] = PresentedSummand(K, ModulePresentation.free(R, 0))
                continue
            ker = syzygies(K.hstack(d_in))
            rel = ker.submatrix(range(K.ncols), range(ker.ncols))
            keep = [j for j in range(rel.ncols)
                    if any(not R.is_zero(rel.rows[i][j])
                           for i in range(rel.nrows))]
            rel = rel.submatrix(range(rel.nrows), keep)
            out[n] = PresentedSummand(K, ModulePresentation(R, K.ncols, rel))
        else:
            raise UsageError("homology over unsupported ring %r" % (R,))
    return HomologyResult(R, out)


def is_exact(X):
    """Zero homology in every degree, over any supported ring."""
    for n in X.degrees():
        if not X.rank(n):
            continue
        K = syzygies(X.diff(n))
        if K.ncols and not submodule_contains(X.diff(n - 1), K):
            return False
    return True


def is_quasi_iso(f):
    return is_exact(cone(f))
