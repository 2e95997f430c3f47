"""Module-level commutative algebra on top of the raw Groebner engine.

Everything here speaks Matrix: a submodule of a free module A^r is a
matrix whose columns are its generators, and a finitely presented module
is the cokernel of such a matrix.  Kernels dispatch on the ring: Gaussian
elimination over fields, Smith form over Z and univariate polynomial
rings, Schreyer syzygies over multivariate polynomial rings, and a lift
through the defining relations for quotient rings.
"""

from __future__ import annotations

import itertools

from . import gb, linalg, poly
from .errors import UsageError
from .linalg import Matrix
from .rings import Integers, PolynomialRing, QuotientRing


class ModulePresentation:
    """Cokernel of relations: A^s --relations--> A^r --> M --> 0."""

    __slots__ = ("ring", "ambient_rank", "relations")

    def __init__(self, ring, ambient_rank, relations):
        if relations.nrows != ambient_rank or relations.ring.key() != ring.key():
            raise UsageError("presentation relations do not match ambient rank")
        self.ring = ring
        self.ambient_rank = ambient_rank
        self.relations = relations

    @classmethod
    def free(cls, ring, rank):
        return cls(ring, rank, Matrix.zeros(ring, rank, 0))

    @classmethod
    def cyclic(cls, ring, ideal_gens):
        rel = Matrix.from_rows(ring, [[g for g in ideal_gens]])
        return cls(ring, 1, rel)

    def is_zero_module(self):
        return submodule_contains(self.relations,
                                  Matrix.identity(self.ring, self.ambient_rank))

    def __repr__(self):
        return "ModulePresentation(rank=%d, relations=%d cols over %r)" % (
            self.ambient_rank, self.relations.ncols, self.ring)


# ---------------------------------------------------------------------------
# column vector <-> gb vector plumbing

def _cols_to_vectors(M):
    """Columns of a matrix over a polynomial ring as gb vectors."""
    out = []
    for j in range(M.ncols):
        v = {}
        for i in range(M.nrows):
            for m, c in M.rows[i][j].items():
                v[(i, m)] = c
        out.append(v)
    return out


def _vector_to_col(ctx, v, nrows):
    col = [dict() for _ in range(nrows)]
    for (i, m), c in v.items():
        col[i][m] = c
    return col


def _quotient_lift(M):
    """Columns of M over A/J lifted to the cover A, with J-multiples of
    each basis vector appended so spans agree.  Returns (cover ring,
    lifted matrix, count of original columns)."""
    R = M.ring
    A = R.cover
    lifted = M.map_entries(A, lambda p: dict(p))
    extra = []
    for g in R.relations:
        for k in range(M.nrows):
            col = [A.from_int(0)] * M.nrows
            col[k] = dict(g)
            extra.append(col)
    if extra:
        E = Matrix(A, M.nrows, len(extra),
                   [[extra[j][i] for j in range(len(extra))]
                    for i in range(M.nrows)])
        lifted = lifted.hstack(E)
    return A, lifted, M.ncols


def syzygies(M):
    """Kernel of A^s --M--> A^r as a matrix of column generators."""
    R = M.ring
    if R.is_field:
        return linalg.field_kernel(M)
    if isinstance(R, Integers) or (isinstance(R, PolynomialRing) and R.nvars == 1):
        return linalg.euclid_kernel(M)
    if isinstance(R, PolynomialRing):
        syz = gb.syzygies(R.ctx, _cols_to_vectors(M))
        cols = [_vector_to_col(R.ctx, v, M.ncols) for v in syz]
        return Matrix(R, M.ncols, len(cols),
                      [[cols[j][i] for j in range(len(cols))]
                       for i in range(M.ncols)])
    if isinstance(R, QuotientRing):
        A, lifted, s = _quotient_lift(M)
        full = syzygies(lifted)
        cols = []
        for j in range(full.ncols):
            col = [R.reduce(full.rows[i][j]) for i in range(s)]
            if any(not R.is_zero(x) for x in col):
                cols.append(col)
        return Matrix(R, s, len(cols),
                      [[cols[j][i] for j in range(len(cols))]
                       for i in range(s)])
    raise UsageError("syzygies over unsupported ring %r" % (R,))


def buchberger(ring, elements):
    """Reduced Groebner basis of an ideal, as ring elements."""
    if not isinstance(ring, PolynomialRing):
        raise UsageError("buchberger expects a polynomial ring")
    gbasis = gb.groebner_ideal(ring.ctx, [ring.el(e).data for e in elements])
    from .rings import RingElement
    return [RingElement(ring, g) for g in gbasis]


def submodule_contains(gens, target):
    """Do the columns of target lie in the column span of gens?"""
    R = gens.ring
    if gens.nrows != target.nrows:
        raise UsageError("ambient rank mismatch")
    if R.is_field:
        return linalg.field_solve(gens, target) is not None
    if isinstance(R, Integers) or (isinstance(R, PolynomialRing) and R.nvars == 1):
        return linalg.euclid_solve(gens, target) is not None
    if isinstance(R, PolynomialRing):
        mkey = gb.pot_key(R.ctx.key)
        basis, _ = gb.module_groebner(R.ctx, _cols_to_vectors(gens), mkey)
        for v in _cols_to_vectors(target):
            if gb.reduce_full(R.ctx, v, basis, mkey):
                return False
        return True
    if isinstance(R, QuotientRing):
        A, lifted, _ = _quotient_lift(gens)
        lifted_t = target.map_entries(A, lambda p: dict(p))
        return submodule_contains(lifted, lifted_t)
    raise UsageError("membership over unsupported ring %r" % (R,))


def _drop_zero_columns(M):
    R = M.ring
    keep = [j for j in range(M.ncols)
            if any(not R.is_zero(M.rows[i][j]) for i in range(M.nrows))]
    return M.submatrix(range(M.nrows), keep)


def colon_into(sub, ideal_gens):
    """The submodule (sub : I) = {x in A^r : I*x inside sub}."""
    R = sub.ring
    fs = [R.el(f).data for f in ideal_gens]
    if not fs:
        raise UsageError("colon by the empty ideal")
    r = sub.nrows
    m = len(fs)
    s = sub.ncols
    z = R.from_int(0)
    rows = []
    for j in range(m):
        for i in range(r):
            row = [z] * (r + m * s)
            row[i] = fs[j]
            for t in range(s):
                row[r + j * s + t] = sub.rows[i][t]
            rows.append(row)
    big = Matrix(R, m * r, r + m * s, rows)
    ker = syzygies(big)
    top = ker.submatrix(range(r), range(ker.ncols))
    return _drop_zero_columns(top)


def colon_ideal(sub, vec):
    """The ideal (sub : v) = {a in A : a*v inside sub} for one vector v."""
    R = sub.ring
    if vec.ncols != 1 or vec.nrows != sub.nrows:
        raise UsageError("colon_ideal expects a single column vector")
    ker = syzygies(vec.hstack(sub))
    top = ker.submatrix([0], range(ker.ncols))
    out = _drop_zero_columns(top)
    return [out.el(0, j) for j in range(out.ncols)]


def intersection(gens_a, gens_b):
    """Generators of the intersection of two column spans in A^r."""
    if gens_a.nrows != gens_b.nrows:
        raise UsageError("ambient rank mismatch")
    ker = syzygies(gens_a.hstack(gens_b.neg()))
    coeffs = ker.submatrix(range(gens_a.ncols), range(ker.ncols))
    return _drop_zero_columns(gens_a.mul(coeffs))


def ideal_quotient(ring, ideal_gens, by_gens):
    """(I : J) as ideal generators."""
    I = Matrix.from_rows(ring, [[g for g in ideal_gens]])
    acc = None
    for g in by_gens:
        v = Matrix.from_rows(ring, [[g]])
        found = colon_ideal(I, v)
        part = Matrix.from_rows(ring, [found])
        acc = part if acc is None else intersection(acc, part)
    if acc is None:
        raise UsageError("quotient by the empty ideal")
    return [acc.el(0, j) for j in range(acc.ncols)]


def saturation(pres, ideal_gens):
    """The I-power-torsion submodule of a presented module.

    Iterates S <- (S : I) starting from the relation span until the chain
    stops growing, then returns (gens, presentation): gens are ambient
    coordinates of generators for the torsion submodule (redundant ones
    pruned against the relations), and the presentation describes that
    submodule as a module in its own right.
    """
    R = pres.ring
    S = pres.relations
    while True:
        bigger = colon_into(S, ideal_gens)
        if submodule_contains(S, bigger):
            break
        S = bigger
    keep = []
    for j in range(S.ncols):
        col = S.submatrix(range(S.nrows), [j])
        if not submodule_contains(pres.relations, col):
            keep.append(j)
    gens = S.submatrix(range(S.nrows), keep)
    if gens.ncols == 0:
        return gens, ModulePresentation.free(R, 0)
    ker = syzygies(gens.hstack(pres.relations))
    rel = ker.submatrix(range(gens.ncols), range(ker.ncols))
    rel = _drop_zero_columns(rel)
    return gens, ModulePresentation(R, gens.ncols, rel)


def module_annihilator(pres):
    """Generators of ann(M) for a presented module M, as ring elements."""
    R = pres.ring
    if pres.ambient_rank == 0:
        return [R.el(1)]
    acc = None
    for i in range(pres.ambient_rank):
        e = Matrix.zeros(R, pres.ambient_rank, 1)
        rows = [list(r) for r in e.rows]
        rows[i][0] = R.from_int(1)
        e = Matrix(R, pres.ambient_rank, 1, rows)
        part = Matrix.from_rows(R, [colon_ideal(pres.relations, e)])
        acc = part if acc is None else intersection(acc, part)
    return [acc.el(0, j) for j in range(acc.ncols)]


def module_krull_dim(pres):
    """Krull dimension of the support of a presented module; -1 if zero.

    Polynomial and quotient rings only (via the annihilator ideal)."""
    R = pres.ring
    if not isinstance(R, (PolynomialRing, QuotientRing)):
        raise UsageError("krull dimension needs a polynomial or quotient ring")
    if pres.is_zero_module():
        return -1
    ann = module_annihilator(pres)
    if isinstance(R, QuotientRing):
        ctx = R.cover.ctx
        gens = [dict(a.data) for a in ann] + [dict(g) for g in R.relations]
    else:
        ctx = R.ctx
        gens = [dict(a.data) for a in ann]
    basis = gb.groebner_ideal(ctx, gens)
    return gb.ideal_dimension(ctx, basis)


def _module_leads(R, relations):
    """Leading terms (component, monomial) of a module Groebner basis of
    the column span, computed over the cover for quotient rings."""
    if isinstance(R, QuotientRing):
        A, lifted, _ = _quotient_lift(relations)
        ctx = A.ctx
        vecs = _cols_to_vectors(lifted)
    else:
        ctx = R.ctx
        vecs = _cols_to_vectors(relations)
    mkey = gb.pot_key(ctx.key)
    basis, _ = gb.module_groebner(ctx, vecs, mkey)
    leads = []
    for g in basis:
        if g:
            (comp, m), _ = gb.v_lead(g, mkey)
            leads.append((comp, m))
    return ctx, leads


def module_vector_dimension(pres):
    """Dimension over the base field if finite, else None."""
    R = pres.ring
    if not isinstance(R, (PolynomialRing, QuotientRing)):
        raise UsageError("vector dimension needs a polynomial or quotient ring")
    if pres.ambient_rank == 0:
        return 0
    ctx, leads = _module_leads(R, pres.relations)
    nvars = ctx.nvars
    total = 0
    for comp in range(pres.ambient_rank):
        comp_leads = [m for c, m in leads if c == comp]
        bounds = []
        for j in range(nvars):
            powers = [m[j] for m in comp_leads
                      if all(m[t] == 0 for t in range(nvars) if t != j)]
            if not powers:
                return None
            bounds.append(min(powers))
        for mono in itertools.product(*(range(b) for b in bounds)):
            if not any(poly.mono_divides(lm, mono) for lm in comp_leads):
                total += 1
    return total


def irredundant_columns(M):
    """Greedily drop generator columns lying in the span of the rest.

    Polynomial and quotient rings only; euclidean kernels are already
    irredundant by construction.
    """
    R = M.ring
    if not isinstance(R, (PolynomialRing, QuotientRing)):
        raise UsageError("irredundant_columns expects a polynomial or quotient ring")
    keep = list(range(M.ncols))
    changed = True
    while changed:
        changed = False
        for pos, j in enumerate(keep):
            others = [k for k in keep if k != j]
            rest = M.submatrix(range(M.nrows), others)
            col = M.submatrix(range(M.nrows), [j])
            if submodule_contains(rest, col):
                keep.pop(pos)
                changed = True
                break
    return M.submatrix(range(M.nrows), keep)
