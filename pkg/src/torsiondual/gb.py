"""Groebner engine for ideals and submodules of free modules.

Works on raw data: a context (variable count, coefficient field, monomial
order key) plus vectors stored as dicts mapping (component, exponents) to
coefficients.  Ring-level polynomials are the single-component case.  No
ring descriptors here; rings.py builds on this module, not the other way
round.

Syzygies use the two-pass Schreyer construction: compute a module Groebner
basis with coordinates in the input generators, then harvest one syzygy per
S-pair reduction of the final basis plus the interreduction discrepancies.
"""

from __future__ import annotations

from . import poly
from .poly import mono_div, mono_divides, mono_lcm, mono_mul


class GBContext:
    __slots__ = ("nvars", "field", "key")

    def __init__(self, nvars, field, key):
        self.nvars = nvars
        self.field = field
        self.key = key


def pot_key(ring_key):
    """Position over term: lower component wins, then the ring order."""
    def k(cm):
        return (-cm[0], ring_key(cm[1]))
    return k


def schreyer_key(lead_monos, base_key):
    """Order on syzygy coordinates induced by leading monomials of the
    generators; ties broken by preferring the earlier generator."""
    def k(cm):
        i, u = cm
        comp, m = lead_monos[i]
        return (base_key((comp, mono_mul(u, m))), -i)
    return k


# vectors: dict[(comp, exps)] -> coeff

def v_from_poly(p, comp=0):
    return {(comp, m): c for m, c in p.items()}


def v_to_poly(v):
    out = {}
    for (comp, m), c in v.items():
        if comp != 0:
            raise ValueError("vector has entries outside component 0")
        out[m] = c
    return out


def v_add(field, a, b):
    out = dict(a)
    for k, c in b.items():
        s = field.add(out.get(k, field.zero), c)
        if s == field.zero:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def v_neg(field, a):
    return {k: field.neg(c) for k, c in a.items()}


def v_term_mul(field, c, m, v):
    if c == field.zero:
        return {}
    return {(comp, mono_mul(m, n)): field.mul(c, x) for (comp, n), x in v.items()}


def v_poly_mul(field, p, v):
    out = {}
    for m, c in p.items():
        for (comp, n), x in v.items():
            k = (comp, mono_mul(m, n))
            s = field.add(out.get(k, field.zero), field.mul(c, x))
            if s == field.zero:
                out.pop(k, None)
            else:
                out[k] = s
    return out


def v_lead(v, mkey):
    k = max(v, key=mkey)
    return k, v[k]


def v_scale(field, c, v):
    if c == field.zero:
        return {}
    return {k: field.mul(c, x) for k, x in v.items()}


def reduce_full(ctx, v, basis, mkey, coords=None, basis_coords=None):
    """Total normal form of v against basis (empty entries are skipped).

    With coords/basis_coords given, the coordinate vector is updated in
    parallel so that the invariant  current = combination described by
    coords  is preserved through every subtraction."""
    field = ctx.field
    index = []
    for pos, g in enumerate(basis):
        if g:
            index.append((v_lead(g, mkey), g, pos))
    out = dict(v)
    done = {}
    while out:
        lead = max(out, key=mkey)
        c = out[lead]
        comp, m = lead
        hit = None
        for ((gcomp, gm), gc), g, pos in index:
            if gcomp == comp and mono_divides(gm, m):
                hit = (gm, gc, g, pos)
                break
        if hit is None:
            done[lead] = c
            del out[lead]
            continue
        gm, gc, g, pos = hit
        q = field.mul(c, field.inv(gc))
        u = mono_div(m, gm)
        out = v_add(field, out, v_neg(field, v_term_mul(field, q, u, g)))
        if coords is not None:
            coords = v_add(field, coords,
                           v_neg(field, v_term_mul(field, q, u, basis_coords[pos])))
    if coords is not None:
        return done, coords
    return done


def _spair(field, g1, lead1, g2, lead2):
    (comp, m1), c1 = lead1
    (_, m2), c2 = lead2
    t = mono_lcm(m1, m2)
    a1 = field.inv(c1)
    a2 = field.inv(c2)
    u1 = mono_div(t, m1)
    u2 = mono_div(t, m2)
    s = v_add(field,
              v_term_mul(field, a1, u1, g1),
              v_neg(field, v_term_mul(field, a2, u2, g2)))
    return s, (a1, u1), (a2, u2)


def module_groebner(ctx, gens, mkey, track=False):
    """Reduced Groebner basis of the submodule generated by gens.

    Returns (basis, coords) where coords[i] expresses basis[i] in the input
    generators (None when track is False).  The basis is monic, fully
    interreduced, and sorted by decreasing leading term, so it is unique
    for the given order.
    """
    field = ctx.field
    basis = []
    coords = []
    for i, g in enumerate(gens):
        if g:
            basis.append(dict(g))
            coords.append({(i, (0,) * ctx.nvars): field.one} if track else None)
    # seed pairs
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)
             if v_lead(basis[i], mkey)[0][0] == v_lead(basis[j], mkey)[0][0]]
    while pairs:
        pairs.sort(key=lambda ij: -poly.mono_deg(
            mono_lcm(v_lead(basis[ij[0]], mkey)[0][1], v_lead(basis[ij[1]], mkey)[0][1])))
        i, j = pairs.pop()
        li = v_lead(basis[i], mkey)
        lj = v_lead(basis[j], mkey)
        s, (ai, ui), (aj, uj) = _spair(field, basis[i], li, basis[j], lj)
        if not s:
            continue
        if track:
            sc = v_add(field,
                       v_term_mul(field, ai, ui, coords[i]),
                       v_neg(field, v_term_mul(field, aj, uj, coords[j])))
            nf, nc = reduce_full(ctx, s, basis, mkey, sc, coords)
        else:
            nf = reduce_full(ctx, s, basis, mkey)
            nc = None
        if nf:
            k = len(basis)
            lead_comp = v_lead(nf, mkey)[0][0]
            basis.append(nf)
            coords.append(nc)
            pairs.extend((k, t) for t in range(k)
                         if v_lead(basis[t], mkey)[0][0] == lead_comp)
    return _interreduce(ctx, basis, coords, mkey, track)


def _interreduce(ctx, basis, coords, mkey, track):
    field = ctx.field
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            if not basis[i]:
                continue
            masked = list(basis)
            masked[i] = {}
            if not any(masked):
                continue
            if track:
                nf, nc = reduce_full(ctx, basis[i], masked, mkey, coords[i], coords)
            else:
                nf = reduce_full(ctx, basis[i], masked, mkey)
                nc = None
            if nf != basis[i]:
                changed = True
                basis[i] = nf
                coords[i] = nc
    out = [(b, c) for b, c in zip(basis, coords) if b]
    # monic
    final = []
    for b, c in out:
        _, lc = v_lead(b, mkey)
        inv = field.inv(lc)
        final.append((v_scale(field, inv, b), v_scale(field, inv, c) if track else None))
    final.sort(key=lambda bc: mkey(v_lead(bc[0], mkey)[0]), reverse=True)
    return [b for b, _ in final], ([c for _, c in final] if track else None)


def syzygies(ctx, gens, base_mkey=None):
    """Generating set for the syzygies of gens (vectors over ctx).

    Each syzygy is a vector in the free module indexed by the positions of
    gens.  Uses the Schreyer order induced by the computed basis.
    """
    field = ctx.field
    gens = [dict(g) for g in gens]
    live = [i for i, g in enumerate(gens) if g]
    if base_mkey is None:
        base_mkey = pot_key(ctx.key)
    out = []
    # zero generators give unit syzygies
    unit = (0,) * ctx.nvars
    for i, g in enumerate(gens):
        if not g:
            out.append({(i, unit): field.one})
    if not live:
        return out
    basis, coords = module_groebner(ctx, gens, base_mkey, track=True)
    if not basis:
        return out
    lead_monos = [v_lead(h, base_mkey)[0] for h in basis]
    skey = schreyer_key(lead_monos, base_mkey)
    # one syzygy per S-pair of the final basis
    for i in range(len(basis)):
        for j in range(i):
            if lead_monos[i][0] != lead_monos[j][0]:
                continue
            li = (lead_monos[i], basis[i][lead_monos[i]])
            lj = (lead_monos[j], basis[j][lead_monos[j]])
            s, (ai, ui), (aj, uj) = _spair(field, basis[i], li, basis[j], lj)
            hc = v_add(field,
                       v_term_mul(field, ai, ui, {(t, unit): field.one for t in (i,)}),
                       v_neg(field, v_term_mul(field, aj, uj, {(t, unit): field.one for t in (j,)})))
            if s:
                nf, q = reduce_full(ctx, s, basis, base_mkey,
                                    hc, [{(t, unit): field.one} for t in range(len(basis))])
                if nf:
                    raise AssertionError("S-pair of a Groebner basis did not reduce to zero")
                hc = q
            # map coordinates in basis back to the input generators
            syz = {}
            for (t, u), c in hc.items():
                syz = v_add(field, syz, v_term_mul(field, c, u, coords[t]))
            if syz:
                out.append(syz)
    # discrepancies e_i - A.(division of g_i)
    for i in live:
        nf, q = reduce_full(ctx, gens[i], basis, base_mkey,
                            {}, [{(t, unit): field.one} for t in range(len(basis))])
        if nf:
            raise AssertionError("generator did not reduce to zero against its own basis")
        syz = {(i, unit): field.one}
        for (t, u), c in q.items():
            # q holds minus the quotients already (reduce_full subtracts)
            syz = v_add(field, syz, v_term_mul(field, c, u, coords[t]))
        if syz:
            out.append(syz)
    return out


# ---------------------------------------------------------------------------
# ideal-level wrappers

def groebner_ideal(ctx, polys):
    gens = [v_from_poly(p) for p in polys if p]
    mkey = pot_key(ctx.key)
    basis, _ = module_groebner(ctx, gens, mkey)
    return [v_to_poly(b) for b in basis]


def normal_form(ctx, p, gb):
    if not gb:
        return dict(p)
    mkey = pot_key(ctx.key)
    nf = reduce_full(ctx, v_from_poly(p), [v_from_poly(g) for g in gb], mkey)
    return v_to_poly(nf)


def ideal_dimension(ctx, gb):
    """Krull dimension of R/I from the leading term ideal; -1 for the unit
    ideal.  Maximal independent variable sets modulo the leading terms."""
    for g in gb:
        m, _ = poly.lead_term(g, ctx.key)
        if poly.mono_deg(m) == 0:
            return -1
    leads = [poly.lead_mono(g, ctx.key) for g in gb]
    supports = [frozenset(i for i, e in enumerate(m) if e > 0) for m in leads]
    n = ctx.nvars
    from itertools import combinations
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0
