"""Seeded property runs for the duality laws in the computable models.

Each law compares computed invariants of its two sides: Betti tables,
homology ranks, invariant factor lists.  The canonical comparison maps
are never constructed, and every report says so.  Runners are
deterministic for a fixed seed.  When a recipe-built case fails, the
recipe is shrunk by dropping build steps (rank reductions first, then
degree tweaks fall out with them) and the shrunk instance is re-emitted
in manifest form.
"""

import hashlib
import json
import random
from dataclasses import dataclass, field

from . import poly
from .category import (
    TorsionObject, betti_table, gtensor, is_compact, is_dualisable, sw_dual,
)
from .complexes import (
    ChainMap, EuclidSummand, FieldSummand, FreeComplex, cone, direct_sum,
    hom_complex, homology, koszul, suspend,
)
from .complexes import tensor as cx_tensor
from .errors import UsageError
from .grobner import ModulePresentation, module_vector_dimension
from .linalg import Matrix, euclid_kernel, is_chain_ring
from .manifest import object_to_data, ring_to_data
from .pidmodel import (
    AdicFree, FinCyclic, LocalFree, Pruefer, TorsionInvariants,
    betti_from_invariants, classify_inv, dual_inv, tensor_inv,
)
from .resolutions import betti_at_prime, periodicity_certificate, resolve
from .rings import (
    Integers, PolynomialRing, PrimeIdeal, QuotientRing, Rationals,
    regularity_class,
)

INVARIANT_NOTE = ("compared at invariant level (homology ranks, Betti "
                  "tables, invariant factors); the canonical maps are "
                  "not constructed")


@dataclass
class LawCase:
    law: str
    case_id: str
    verdict: str                       # pass | fail | skip
    witness: dict
    instance: dict = field(default_factory=dict)
    note: str = INVARIANT_NOTE

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self, full=False):
        out = {"case": self.case_id, "law": self.law,
               "verdict": self.verdict, "note": self.note,
               "witness_digest": digest(self.witness)}
        if full or self.verdict == "fail":
            out["witness"] = self.witness
            if self.instance:
                out["manifest"] = self.instance
        return out


def digest(obj):
    blob = json.dumps(obj, sort_keys=True, default=repr)
    return hashlib.sha1(blob.encode()).hexdigest()[:12]


def describe_instance(ring=None, prime=None, objects=None):
    """Manifest-shaped dict for a case, loadable as a standalone input."""
    out = {}
    if ring is not None:
        out["ring"] = ring_to_data(ring)
    if prime is not None:
        out["prime"] = [prime.ring.fmt(g.data) for g in prime.gens]
    if objects:
        out["objects"] = {
            k: object_to_data(v.carrier if isinstance(v, TorsionObject)
                              else v)
            for k, v in sorted(objects.items())}
    return out


# ---------------------------------------------------------------------------
# homology signatures

def homology_signature(C):
    """Degree -> canonical invariant tuple, one entry per nonzero H^n."""
    H = homology(C)
    out = {}
    for n in H.degrees():
        s = H.summand(n)
        if s.is_zero():
            continue
        if isinstance(s, FieldSummand):
            out[n] = ("dim", s.dim)
        elif isinstance(s, EuclidSummand):
            out[n] = ("euclid", s.free_rank,
                      tuple(s.ring.fmt(f) for f in s.factors))
        else:
            out[n] = ("vdim", module_vector_dimension(s.pres))
    return out


def _length_of_factor(ring, f):
    if isinstance(ring, Integers):
        n, total, d = abs(f), 0, 2
        while n > 1:
            if d * d > n:
                total += 1
                break
            while n % d == 0:
                n //= d
                total += 1
            d += 1 if d == 2 else 2
        return total
    return poly.p_total_deg(f)


def rank_signature(C):
    """Like homology_signature but additive under direct sums: cyclic
    torsion collapses to composition length."""
    H = homology(C)
    out = {}
    for n in H.degrees():
        s = H.summand(n)
        if s.is_zero():
            continue
        if isinstance(s, FieldSummand):
            out[n] = ("dim", s.dim)
        elif isinstance(s, EuclidSummand):
            out[n] = ("euclid", s.free_rank,
                      sum(_length_of_factor(s.ring, f) for f in s.factors))
        else:
            out[n] = ("vdim", module_vector_dimension(s.pres))
    return out


def signature_sum(sigs):
    out = {}
    for sig in sigs:
        for n, entry in sig.items():
            if n not in out:
                out[n] = entry
                continue
            a, b = out[n], entry
            if a[0] != b[0]:
                raise UsageError("cannot add %r and %r" % (a, b))
            if a[0] == "euclid":
                out[n] = ("euclid", a[1] + b[1], a[2] + b[2])
            elif None in (a[1], b[1]):
                out[n] = (a[0], None)
            else:
                out[n] = (a[0], a[1] + b[1])
    return out


def _fmt_sig(sig):
    return {str(n): list(v) if isinstance(v, tuple) else v
            for n, v in sorted(sig.items())}


# ---------------------------------------------------------------------------
# law runners

def law_dual_tensor_compact(C, X, case_id="tensor-compact/0", cutoff=None):
    """compact (x) dualisable stays compact; invariant or object route."""
    law = "dual_tensor_compact"
    if isinstance(C, TorsionInvariants):
        cv, xv = classify_inv(C), classify_inv(X)
        witness = {"C": repr(C), "X": repr(X),
                   "C_class": cv, "X_class": xv}
        inst = describe_instance(ring=Integers(),
                                 objects={"C": C, "X": X})
        if cv != "Compact" or xv == "NotInGamma":
            return LawCase(law, case_id, "skip", witness, inst)
        t = tensor_inv(C, X)
        tv = classify_inv(t)
        witness.update({"tensor": repr(t), "tensor_class": tv})
        return LawCase(law, case_id, "pass" if tv == "Compact" else "fail",
                       witness, inst)
    comp = is_compact(C)
    dual = is_dualisable(X, cutoff)
    witness = {"C_compact": comp, "X_verdict": dual.kind}
    inst = describe_instance(ring=C.ring, prime=C.prime,
                             objects={"C": C, "X": X})
    if not comp or dual.kind != "Dualisable":
        return LawCase(law, case_id, "skip", witness, inst)
    t = gtensor(C, X, cutoff)
    tc = is_compact(t)
    witness["tensor_compact"] = tc
    return LawCase(law, case_id, "pass" if tc else "fail", witness, inst)


def law_double_dual(X, case_id="double-dual/0", cutoff=None):
    """Betti table of X equals that of the double dual."""
    law = "double_dual"
    if isinstance(X, TorsionInvariants):
        cls = classify_inv(X)
        witness = {"X": repr(X), "X_class": cls}
        inst = describe_instance(ring=Integers(), objects={"X": X})
        if cls == "NotInGamma":
            return LawCase(law, case_id, "skip", witness, inst)
        dd = dual_inv(dual_inv(X))
        bx = betti_from_invariants(X)
        bdd = betti_from_invariants(dd)
        witness.update({"double_dual": repr(dd),
                        "betti": _fmt_sig(bx),
                        "betti_double_dual": _fmt_sig(bdd)})
        return LawCase(law, case_id, "pass" if bx == bdd else "fail",
                       witness, inst)
    verdict = is_dualisable(X, cutoff)
    witness = {"X_verdict": verdict.kind}
    inst = describe_instance(ring=X.ring, prime=X.prime, objects={"X": X})
    if verdict.kind != "Dualisable":
        return LawCase(law, case_id, "skip", witness, inst)
    dd = sw_dual(sw_dual(X, cutoff), cutoff)
    bx = betti_table(X, cutoff)
    bdd = betti_table(dd, cutoff)
    witness.update({"betti": _fmt_sig(bx), "betti_double_dual": _fmt_sig(bdd)})
    return LawCase(law, case_id, "pass" if bx == bdd else "fail",
                   witness, inst)


def law_nu(X, Y, Z, case_id="nu/0"):
    """hom(X, Y) (x) Z against hom(X, Y (x) Z), degreewise homology."""
    law = "nu"
    lhs = homology_signature(cx_tensor(hom_complex(X, Y), Z))
    rhs = homology_signature(hom_complex(X, cx_tensor(Y, Z)))
    witness = {"lhs": _fmt_sig(lhs), "rhs": _fmt_sig(rhs)}
    inst = describe_instance(ring=X.ring,
                             objects={"X": X, "Y": Y, "Z": Z})
    return LawCase(law, case_id, "pass" if lhs == rhs else "fail",
                   witness, inst)


def law_functional_compact_finite(X, family, case_id="functional/0"):
    """hom from X into a finite sum, against the sum of homs."""
    law = "functional_compact_finite"
    family = list(family)
    if not 1 <= len(family) <= 8:
        raise UsageError("family size must be between 1 and 8")
    total = family[0]
    for Y in family[1:]:
        total = direct_sum(total, Y)
    lhs = rank_signature(hom_complex(X, total))
    rhs = signature_sum(rank_signature(hom_complex(X, Y)) for Y in family)
    witness = {"lhs": _fmt_sig(lhs), "rhs": _fmt_sig(rhs),
               "family_size": len(family)}
    objs = {"X": X}
    objs.update({"Y%d" % i: Y for i, Y in enumerate(family)})
    inst = describe_instance(ring=X.ring, objects=objs)
    return LawCase(law, case_id, "pass" if lhs == rhs else "fail",
                   witness, inst)


def _truncate_above(C, top):
    ranks = {n: C.rank(n) for n in C.degrees() if n <= top}
    diffs = {n: C.diff(n) for n in range(C.lo, min(C.hi, top))}
    return FreeComplex(C.ring, ranks, diffs)


def _summand_size(s):
    if isinstance(s, FieldSummand):
        return s.dim
    if isinstance(s, EuclidSummand):
        free = s.free_rank
        if is_chain_ring(s.ring):
            # a free summand of F[x]/(x^m) is m-dimensional over F
            rel, = s.ring.relations
            (m,), = rel
            free *= m
        return free + sum(_length_of_factor(s.ring, f)
                          for f in s.factors)
    return module_vector_dimension(s.pres)


@dataclass
class KprojReport:
    ring_text: str
    cutoff: int
    table: dict                        # degree -> size of H^degree
    certificate: object                # (period, onset) or None
    note: str = INVARIANT_NOTE

    def unbounded_witness(self):
        return all(self.table.get(i) for i in range(self.cutoff + 1))

    def to_dict(self):
        return {"ring": self.ring_text, "cutoff": self.cutoff,
                "table": {str(i): v for i, v in sorted(self.table.items())},
                "certificate": list(self.certificate)
                if self.certificate else None,
                "unbounded": self.unbounded_witness(),
                "note": self.note}


def kproj_demo(ring, M, N, cutoff):
    """Size table of H^i of dual(resolution M) (x) dual(resolution N).

    Over a hypersurface with M, N torsion this grows without bound;
    the periodicity certificate of M's resolution is attached.
    """
    if regularity_class(ring) != "hypersurface":
        raise UsageError("the demo needs a hypersurface quotient ring")
    if not isinstance(cutoff, int) or cutoff < 0:
        raise UsageError("cutoff must be a nonnegative int")
    depth = cutoff + 2
    rM = resolve(M, depth)
    rN = resolve(N, depth)
    one = FreeComplex.unit(ring)
    dM = _truncate_above(hom_complex(rM.resolution, one), cutoff + 1)
    dN = _truncate_above(hom_complex(rN.resolution, one), cutoff + 1)
    T = _truncate_above(cx_tensor(dM, dN), cutoff + 1)
    H = homology(T)
    table = {}
    for i in range(cutoff + 1):
        s = H.summand(i)
        table[i] = 0 if s is None or s.is_zero() else _summand_size(s)
    return KprojReport(ring.fmt_ring(), cutoff, table,
                       periodicity_certificate(rM))


def law_regularity_bound(prime, sample_size, seed=0,
                         case_id="regularity/0"):
    """Betti support of random modules fits in the height window."""
    law = "regularity_bound"
    ring = prime.ring
    if regularity_class(ring) != "regular":
        raise UsageError("the resolution-length bound needs a regular ring")
    rng = random.Random("regularity:%d" % seed)
    bound = prime.height()
    supports = []
    offender = None
    for _ in range(sample_size):
        M = rand_module(rng, ring)
        sup = sorted(betti_at_prime(M, prime))
        supports.append(sup)
        if offender is None and any(n < -bound or n > 0 for n in sup):
            offender = M
    witness = {"height": bound, "sample_size": sample_size,
               "supports": supports}
    verdict = "pass" if offender is None else "fail"
    inst = {}
    if offender is not None:
        def still_fails(pres):
            sup = sorted(betti_at_prime(pres, prime))
            return any(n < -bound or n > 0 for n in sup)

        offender = shrink_module(offender, still_fails)
        inst = describe_instance(ring=ring, prime=prime,
                                 objects={"M": offender})
    return LawCase(law, case_id, verdict, witness, inst)


# ---------------------------------------------------------------------------
# seeded generators

def _rand_int(rng):
    r = rng.random()
    if r < 0.35:
        return 0
    if r < 0.6:
        return rng.choice((1, -1))
    if r < 0.8:
        return rng.choice((5, -5, 10))
    return rng.choice((2, 3, -2, 25, 15))


def rand_z_complex(rng, max_rank=3, lo=-3, hi=3):
    """Random bounded free complex over Z; each differential's rows are
    drawn from the left kernel lattice of the previous one, so d^2 = 0
    holds by construction."""
    R = Integers()
    a = rng.randint(lo, hi)
    b = rng.randint(a, hi)
    ranks = {n: rng.randint(0, max_rank) for n in range(a, b + 1)}
    diffs = {}
    prev = None
    for n in range(a, b):
        rs, rt = ranks[n], ranks[n + 1]
        if rs == 0 or rt == 0:
            prev = None
            continue
        if prev is None:
            M = Matrix.from_rows(R, [[_rand_int(rng) for _ in range(rs)]
                                     for _ in range(rt)])
        else:
            K = euclid_kernel(prev.transpose())
            if K.ncols == 0:
                prev = None
                continue
            C = Matrix.from_rows(R, [[_rand_int(rng)
                                      for _ in range(K.ncols)]
                                     for _ in range(rt)])
            M = C.mul(K.transpose())
        if M.is_zero():
            prev = None
            continue
        diffs[n] = M
        prev = M
    return FreeComplex(R, ranks, diffs)


def rand_invariants(rng, kinds=("fin", "pruefer", "local_free", "adic_free"),
                    max_pieces=4, min_pieces=0, window=(-2, 2),
                    max_length=3, max_rank=2):
    placed = []
    for _ in range(rng.randint(min_pieces, max_pieces)):
        kind = rng.choice(kinds)
        deg = rng.randint(*window)
        if kind == "fin":
            placed.append((deg, FinCyclic(rng.randint(1, max_length))))
        elif kind == "pruefer":
            placed.append((deg, Pruefer()))
        elif kind == "local_free":
            placed.append((deg, LocalFree(rng.randint(1, max_rank))))
        else:
            placed.append((deg, AdicFree(rng.randint(1, max_rank))))
    return TorsionInvariants(placed)


def _rand_poly(rng, ring):
    # degree capped at 2 and the pool weighted toward multiples of the
    # first variable, so localisations see content without feeding the
    # syzygy engine entries it chews on for minutes
    v0 = ring.vars[0]
    monos = ["1", v0, v0, "%s^2" % v0]
    for v in ring.vars[1:2]:
        monos += [v, "%s*%s" % (v0, v)]
    out = ring.from_int(0)
    for _ in range(rng.randint(1, 2)):
        c = rng.choice((1, 1, 1, -1, 2))
        out = ring.add(out, ring.mul(ring.from_int(c),
                                     ring.parse(rng.choice(monos))))
    return out


def rand_module(rng, ring, max_rank=3, max_cols=3):
    r = rng.randint(1, max_rank)
    cols = rng.randint(0, max_cols)
    if isinstance(ring, Integers):
        rows = [[_rand_int(rng) for _ in range(cols)] for _ in range(r)]
    elif isinstance(ring, (PolynomialRing, QuotientRing)):
        rows = [[_rand_poly(rng, ring) for _ in range(cols)]
                for _ in range(r)]
    else:
        raise UsageError("no module generator for %r" % (ring,))
    rel = Matrix(ring, r, cols, rows)
    return ModulePresentation(ring, r, rel)


def perturbed_identity(X, c, h_seed):
    """c*id + d h + h d for a random degree -1 map h: always a chain map,
    chain homotopic to c*id."""
    rng = random.Random("homotopy:%d" % h_seed)
    R = X.ring
    hh = {}
    for n in X.degrees():
        rs, rt = X.rank(n), X.rank(n - 1)
        if rs and rt:
            hh[n] = Matrix.from_rows(
                R, [[rng.choice((0, 0, 1, -1)) for _ in range(rs)]
                    for _ in range(rt)])
    comps = {}
    for n in X.degrees():
        r = X.rank(n)
        if not r:
            continue
        M = Matrix.identity(R, r).scale(c)
        if n in hh:
            M = M.add(X.diff(n - 1).mul(hh[n]))
        if n + 1 in hh:
            M = M.add(hh[n + 1].mul(X.diff(n)))
        comps[n] = M
    return ChainMap(X, X, comps)


def rand_recipe(rng, steps=None, n_bases=1):
    """Build plan: leaves plus suspensions, sums, and cones along random
    self-maps or zero maps.  Indices are resolved modulo the objects
    built so far, so dropping steps during shrinking keeps it valid."""
    n = steps if steps is not None else rng.randint(2, 6)
    out = [("base", rng.randrange(max(n_bases, 1)))]
    for _ in range(n):
        r = rng.random()
        if r < 0.15:
            out.append(("base", rng.randrange(max(n_bases, 1))))
        elif r < 0.45:
            out.append(("suspend", rng.randrange(8), rng.randint(-2, 2)))
        elif r < 0.65:
            out.append(("sum", rng.randrange(8), rng.randrange(8)))
        elif r < 0.9:
            out.append(("cone_id", rng.randrange(8),
                        rng.choice((-1, 0, 1, 2, 5)), rng.randrange(1 << 30)))
        else:
            out.append(("cone_zero", rng.randrange(8), rng.randrange(8)))
    return out


def build_object(ring, recipe, bases=None, size_cap=36):
    """Run a recipe; bases are zero-arg builders for the leaf objects
    (default: the unit).  Growth past size_cap repeats the previous
    object instead, keeping runs at desk scale."""
    mk = list(bases) if bases else [lambda: FreeComplex.unit(ring)]
    objs = []
    for step in recipe:
        kind = step[0]
        if kind == "base":
            cur = mk[step[1] % len(mk)]()
        elif not objs:
            continue
        elif kind == "suspend":
            cur = suspend(objs[step[1] % len(objs)], step[2])
        elif kind == "sum":
            cur = direct_sum(objs[step[1] % len(objs)],
                             objs[step[2] % len(objs)])
        elif kind == "cone_id":
            cur = cone(perturbed_identity(objs[step[1] % len(objs)],
                                          step[2], step[3]))
        elif kind == "cone_zero":
            cur = cone(ChainMap.zero(objs[step[1] % len(objs)],
                                     objs[step[2] % len(objs)]))
        else:
            raise UsageError("unknown recipe step %r" % (step,))
        if cur.total_rank() > size_cap and objs:
            cur = objs[-1]
        objs.append(cur)
    return objs[-1] if objs else FreeComplex.zero(ring)


def rand_thick_object(rng, prime, size_cap=36):
    """Object in the thick closure of the unit: shifts, cones, sums."""
    recipe = rand_recipe(rng)
    X = build_object(prime.ring, recipe, size_cap=size_cap)
    return TorsionObject(X, prime), recipe


def koszul_bases(ring, seeds):
    return [lambda s=s: koszul(ring, [s]) for s in seeds]


def rand_torsion_object(rng, prime, seeds, size_cap=12):
    """Torsion object at the prime, built from Koszul leaves on elements
    of the prime."""
    ring = prime.ring
    bases = koszul_bases(ring, seeds)
    recipe = rand_recipe(rng, n_bases=len(bases))
    X = build_object(ring, recipe, bases=bases, size_cap=size_cap)
    return TorsionObject(X, prime), recipe


# ---------------------------------------------------------------------------
# shrinking

def shrink_recipe(recipe, still_fails):
    """Greedy step removal; keeps the failure, returns the short recipe."""
    cur = list(recipe)
    changed = True
    while changed:
        changed = False
        for i in range(len(cur)):
            cand = cur[:i] + cur[i + 1:]
            if still_fails(cand):
                cur = cand
                changed = True
                break
    return cur


def shrink_module(pres, still_fails):
    """Drop relation columns, then ambient generators, while failing."""
    cur = pres
    changed = True
    while changed:
        changed = False
        for j in range(cur.relations.ncols):
            keep = [c for c in range(cur.relations.ncols) if c != j]
            cand = ModulePresentation(
                cur.ring, cur.ambient_rank,
                cur.relations.submatrix(range(cur.relations.nrows), keep))
            if still_fails(cand):
                cur = cand
                changed = True
                break
        if changed or cur.ambient_rank <= 1:
            continue
        for i in range(cur.ambient_rank):
            keep = [r for r in range(cur.ambient_rank) if r != i]
            cand = ModulePresentation(
                cur.ring, cur.ambient_rank - 1,
                cur.relations.submatrix(keep, range(cur.relations.ncols)))
            if still_fails(cand):
                cur = cand
                changed = True
                break
    return cur


# ---------------------------------------------------------------------------
# suite runner

SUITES = ("tensor-compact", "double-dual", "nu", "functional",
          "kproj", "regularity")

_DEFAULT_COUNTS = {"tensor-compact": 40, "double-dual": 12, "nu": 8,
                   "functional": 8, "regularity": 2}


def _suite_tensor_compact(rng, count):
    cases = []
    golden = [
        (TorsionInvariants([(0, FinCyclic(1))]),
         TorsionInvariants([(1, Pruefer())])),
        (TorsionInvariants(), TorsionInvariants([(0, FinCyclic(2))])),
    ]
    pairs = list(golden)
    while len(pairs) < count:
        pairs.append((rand_invariants(rng, kinds=("fin",), max_pieces=3),
                      rand_invariants(rng, kinds=("fin", "pruefer"),
                                      max_pieces=3)))
    for i, (C, X) in enumerate(pairs):
        cases.append(law_dual_tensor_compact(
            C, X, case_id="tensor-compact/%03d" % i))
    return cases


def _pid_goldens():
    return [
        TorsionInvariants([(0, FinCyclic(1))]),
        TorsionInvariants([(-1, FinCyclic(3))]),
        TorsionInvariants([(2, Pruefer())]),
        TorsionInvariants([(0, FinCyclic(1)), (0, FinCyclic(2)),
                           (1, Pruefer())]),
    ]


def _suite_double_dual(rng, count):
    cases = []
    for i, inv in enumerate(_pid_goldens()):
        cases.append(law_double_dual(inv, case_id="double-dual/g%02d" % i))
    zz = Integers()
    five = PrimeIdeal(zz, [5])
    golden_objects = [
        TorsionObject(FreeComplex.unit(zz), five),
        TorsionObject(koszul(zz, [25]), five),
    ]
    ring = PolynomialRing(Rationals(), ("x", "y"))
    px = PrimeIdeal(ring, ["x"])
    seeds = ("x", "x^2", "x*y + x", "x*y - x")
    objects = list(golden_objects)
    while len(objects) < count:
        X, _ = rand_torsion_object(rng, px, seeds)
        objects.append(X)
    for i, X in enumerate(objects):
        cases.append(law_double_dual(X, case_id="double-dual/%03d" % i))
    return cases


def _suite_nu(rng, count):
    ring = PolynomialRing(Rationals(), ("x",))
    K = koszul(ring, ["x"])
    triples = [
        (FreeComplex.unit(ring), K, K),
        (K, K, K),
    ]
    bases = koszul_bases(ring, ("x", "x^2"))
    while len(triples) < count:
        triple = tuple(
            build_object(ring, rand_recipe(rng, steps=2, n_bases=2),
                         bases=bases, size_cap=4)
            for _ in range(3))
        triples.append(triple)
    return [law_nu(X, Y, Z, case_id="nu/%03d" % i)
            for i, (X, Y, Z) in enumerate(triples)]


def _suite_functional(rng, count):
    ring = PolynomialRing(Rationals(), ("x",))
    K = koszul(ring, ["x"])
    cases = [law_functional_compact_finite(
        K, [suspend(K, s) for s in (0, 1, -2)], case_id="functional/000")]
    bases = koszul_bases(ring, ("x", "x^2"))
    i = 1
    while len(cases) < count:
        X = build_object(ring, rand_recipe(rng, steps=2, n_bases=2),
                         bases=bases, size_cap=4)
        fam = [build_object(ring, rand_recipe(rng, steps=1, n_bases=2),
                            bases=bases, size_cap=4)
               for _ in range(rng.randint(1, 4))]
        cases.append(law_functional_compact_finite(
            X, fam, case_id="functional/%03d" % i))
        i += 1
    return cases


def _suite_kproj(rng, count):
    del rng, count
    base = PolynomialRing(Rationals(), ("x",))
    cases = []
    specs = [
        ("kproj/000", QuotientRing(base, ["x^2"]), "k", 12, "unbounded"),
        ("kproj/001", QuotientRing(base, ["x^2"]), "free", 12, "bounded"),
        ("kproj/002", QuotientRing(base, ["x^3"]), "k", 8, "unbounded"),
    ]
    for cid, ring, which, cutoff, expect in specs:
        if which == "k":
            M = ModulePresentation.cyclic(ring, ["x"])
        else:
            M = ModulePresentation.free(ring, 1)
        rep = kproj_demo(ring, M, M, cutoff)
        grew = rep.unbounded_witness()
        ok = grew if expect == "unbounded" else not grew
        witness = rep.to_dict()
        witness["expected"] = expect
        cases.append(LawCase(
            "kproj_demo", cid, "pass" if ok else "fail", witness,
            describe_instance(ring=ring, objects={"M": M})))
    return cases


def _suite_regularity(rng, count):
    del count
    ring = PolynomialRing(Rationals(), ("x", "y"))
    seeds = rng.randrange(1 << 30), rng.randrange(1 << 30)
    return [
        law_regularity_bound(PrimeIdeal(ring, ["x"]), 8, seed=seeds[0],
                             case_id="regularity/000"),
        law_regularity_bound(PrimeIdeal(Integers(), [5]), 8, seed=seeds[1],
                             case_id="regularity/001"),
    ]


_SUITE_FNS = {
    "tensor-compact": _suite_tensor_compact,
    "double-dual": _suite_double_dual,
    "nu": _suite_nu,
    "functional": _suite_functional,
    "kproj": _suite_kproj,
    "regularity": _suite_regularity,
}


@dataclass
class SuiteReport:
    seed: int
    suites: list
    cases: list

    @property
    def failed(self):
        return [c for c in self.cases if c.verdict == "fail"]

    @property
    def ok(self):
        return not self.failed

    def to_dict(self):
        return {
            "seed": self.seed,
            "suites": list(self.suites),
            "total": len(self.cases),
            "passed": sum(c.verdict == "pass" for c in self.cases),
            "skipped": sum(c.verdict == "skip" for c in self.cases),
            "failed": len(self.failed),
            "note": INVARIANT_NOTE,
            "cases": [c.to_dict() for c in self.cases],
        }


def run_suite(seed=0, suite=None, counts=None):
    """All suites (or one), deterministically from the seed; cases are
    merged in case-id order."""
    names = [suite] if suite else list(SUITES)
    for name in names:
        if name not in _SUITE_FNS:
            raise UsageError("unknown suite %r (pick from %s)"
                             % (name, ", ".join(SUITES)))
    eff = dict(_DEFAULT_COUNTS)
    eff.update(counts or {})
    cases = []
    for name in names:
        rng = random.Random("%s:%d" % (name, seed))
        cases.extend(_SUITE_FNS[name](rng, eff.get(name, 8)))
    cases.sort(key=lambda c: c.case_id)
    return SuiteReport(seed, names, cases)
