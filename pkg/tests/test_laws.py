import pytest

import random

from torsiondual.category import TorsionObject, is_dualisable
from torsiondual.complexes import FreeComplex, koszul, suspend
from torsiondual.errors import UsageError
from torsiondual.grobner import ModulePresentation
from torsiondual.laws import (
    KprojReport, LawCase, build_object, homology_signature, kproj_demo,
    law_double_dual, law_dual_tensor_compact, law_functional_compact_finite,
    law_nu, law_regularity_bound, perturbed_identity, rand_invariants,
    rand_module, rand_recipe, rand_thick_object, rand_torsion_object,
    rand_z_complex, rank_signature, run_suite, shrink_module, shrink_recipe,
    signature_sum, _truncate_above,
)
from torsiondual.linalg import Matrix, field_rank
from torsiondual.pidmodel import FinCyclic, LocalFree, Pruefer, \
    TorsionInvariants
from torsiondual.resolutions import resolve
from torsiondual.rings import (
    Integers, PolynomialRing, PrimeIdeal, QuotientRing, Rationals,
)
from torsiondual.complexes import hom_complex, tensor

QQ = Rationals()
ZZ = Integers()


def z_mod(m):
    return FreeComplex(ZZ, {-1: 1, 0: 1}, {-1: Matrix.from_rows(ZZ, [[m]])})


def qx():
    return PolynomialRing(QQ, ("x",))


def qxy():
    return PolynomialRing(QQ, ("x", "y"))


class TestSignatures:
    def test_koszul_homology_signature(self):
        K = koszul(qx(), ["x"])
        assert homology_signature(K) == {0: ("euclid", 0, ("x",))}
        assert rank_signature(K) == {0: ("euclid", 0, 1)}

    def test_torsion_length_counts_multiplicity(self):
        # H^0 = Z/12 and 12 = 2^2 * 3, three simple factors
        assert rank_signature(z_mod(12)) == {0: ("euclid", 0, 3)}

    def test_signature_sum(self):
        a = {0: ("euclid", 1, 2), 1: ("dim", 3)}
        b = {0: ("euclid", 0, 1)}
        assert signature_sum([a, b]) == {0: ("euclid", 1, 3), 1: ("dim", 3)}
        with pytest.raises(UsageError):
            signature_sum([{0: ("dim", 1)}, {0: ("euclid", 1, 0)}])


class TestDualTensorCompact:
    def test_golden_fin_pruefer(self):
        C = TorsionInvariants([(0, FinCyclic(1))])
        X = TorsionInvariants([(1, Pruefer())])
        case = law_dual_tensor_compact(C, X)
        assert case.verdict == "pass"
        assert case.witness["tensor_class"] == "Compact"

    def test_zero_is_compact(self):
        case = law_dual_tensor_compact(
            TorsionInvariants(), TorsionInvariants([(0, FinCyclic(2))]))
        assert case.verdict == "pass"

    def test_precondition_skip(self):
        C = TorsionInvariants([(0, Pruefer())])     # dualisable, not compact
        X = TorsionInvariants([(0, FinCyclic(1))])
        assert law_dual_tensor_compact(C, X).verdict == "skip"

    def test_object_route(self):
        five = PrimeIdeal(ZZ, [5])
        C = TorsionObject(koszul(ZZ, [5]), five)
        X = TorsionObject(FreeComplex.unit(ZZ), five)
        assert law_dual_tensor_compact(C, X).verdict == "pass"
        # the unit itself is not compact at a nonminimal prime: skipped
        assert law_dual_tensor_compact(X, X).verdict == "skip"

    def test_random_pid_pairs(self):
        rng = random.Random(11)
        for i in range(40):
            C = rand_invariants(rng, kinds=("fin",), max_pieces=3)
            X = rand_invariants(rng, kinds=("fin", "pruefer"), max_pieces=3)
            case = law_dual_tensor_compact(C, X, case_id="t/%d" % i)
            assert case.verdict == "pass", case.witness


class TestDoubleDual:
    def test_unit(self):
        x = TorsionObject(FreeComplex.unit(ZZ), PrimeIdeal(ZZ, [5]))
        case = law_double_dual(x)
        assert case.verdict == "pass"
        assert case.witness["betti"] == {"0": 1}

    def test_z25(self):
        x = TorsionObject(z_mod(25), PrimeIdeal(ZZ, [5]))
        case = law_double_dual(x)
        assert case.verdict == "pass"
        assert case.witness["betti"] == case.witness["betti_double_dual"]

    def test_pid_golden(self):
        assert law_double_dual(
            TorsionInvariants([(2, Pruefer())])).verdict == "pass"

    def test_skips(self):
        free = TorsionInvariants([(0, LocalFree(1))])
        assert law_double_dual(free).verdict == "skip"
        dual_numbers = QuotientRing(qx(), ["x^2"])
        k = ModulePresentation.cyclic(dual_numbers, ["x"])
        x = TorsionObject(k, PrimeIdeal(dual_numbers, ["x"]))
        assert law_double_dual(x, cutoff=4).verdict == "skip"

    def test_random_polynomial_objects(self):
        rng = random.Random(5)
        px = PrimeIdeal(qxy(), ["x"])
        seeds = ("x", "x^2", "x*y + x")
        for i in range(10):
            X, _ = rand_torsion_object(rng, px, seeds)
            case = law_double_dual(X, case_id="dd/%d" % i)
            assert case.verdict == "pass", case.witness


class TestNu:
    def test_unit_source(self):
        R = qx()
        K = koszul(R, ["x"])
        case = law_nu(FreeComplex.unit(R), K, K)
        assert case.verdict == "pass"
        assert case.witness["lhs"] == case.witness["rhs"]

    def test_koszul_triple(self):
        K = koszul(qx(), ["x"])
        case = law_nu(K, K, K)
        assert case.verdict == "pass"
        assert case.witness["lhs"]       # non-vacuous: homology is nonzero

    def test_random_triples(self):
        rng = random.Random(7)
        R = qx()
        from torsiondual.laws import koszul_bases
        bases = koszul_bases(R, ("x", "x^2"))
        for i in range(10):
            X, Y, Z = (build_object(R, rand_recipe(rng, steps=2, n_bases=2),
                                    bases=bases, size_cap=4)
                       for _ in range(3))
            assert law_nu(X, Y, Z, case_id="nu/%d" % i).verdict == "pass"


class TestFunctional:
    def test_single_member(self):
        K = koszul(qx(), ["x"])
        assert law_functional_compact_finite(K, [K]).verdict == "pass"

    def test_shifted_family(self):
        K = koszul(qx(), ["x"])
        fam = [suspend(K, s) for s in (0, 1, -2)]
        assert law_functional_compact_finite(K, fam).verdict == "pass"

    def test_family_size_limits(self):
        K = koszul(qx(), ["x"])
        with pytest.raises(UsageError):
            law_functional_compact_finite(K, [])
        with pytest.raises(UsageError):
            law_functional_compact_finite(K, [K] * 9)

    def test_coprime_torsion_aggregates(self):
        # hom(unit, Z/2 + Z/3) has H^0 = Z/6: one invariant factor against
        # two on the split side, equal only at composition-length level
        u = FreeComplex.unit(ZZ)
        case = law_functional_compact_finite(u, [z_mod(2), z_mod(3)])
        assert case.verdict == "pass"

    def test_random_families(self):
        rng = random.Random(13)
        R = qx()
        from torsiondual.laws import koszul_bases
        bases = koszul_bases(R, ("x", "x^2"))
        for i in range(8):
            X = build_object(R, rand_recipe(rng, steps=2, n_bases=2),
                             bases=bases, size_cap=4)
            fam = [build_object(R, rand_recipe(rng, steps=1, n_bases=2),
                                bases=bases, size_cap=4)
                   for _ in range(rng.randint(1, 4))]
            case = law_functional_compact_finite(X, fam, case_id="f/%d" % i)
            assert case.verdict == "pass", case.witness


def _regular_rep(payload, k):
    """Multiplication matrix of an element of Q[x]/(x^k) on basis 1..x^(k-1)."""
    from fractions import Fraction
    coeff = {e[0]: c for e, c in dict(payload).items()}
    return [[coeff.get(i - j, Fraction(0)) for j in range(k)]
            for i in range(k)]


def _kproj_table_by_field_ranks(ring, M, N, cutoff, k):
    """Independent route: flatten the tensor complex to Q-matrices via the
    regular representation and count dimensions by Gaussian rank."""
    depth = cutoff + 2
    one = FreeComplex.unit(ring)
    dM = _truncate_above(hom_complex(resolve(M, depth).resolution, one),
                         cutoff + 1)
    dN = _truncate_above(hom_complex(resolve(N, depth).resolution, one),
                         cutoff + 1)
    T = _truncate_above(tensor(dM, dN), cutoff + 1)
    ranks = {}
    for n in range(T.lo, T.hi):
        D = T.diff(n)
        rows = []
        for i in range(D.nrows):
            blocks = [_regular_rep(D.at(i, j), k) for j in range(D.ncols)]
            for r in range(k):
                rows.append([b[r][c] for b in blocks for c in range(k)])
        Q = Matrix(QQ, k * D.nrows, k * D.ncols, rows) if rows \
            else Matrix.zeros(QQ, 0, k * D.ncols)
        ranks[n] = field_rank(Q)
    out = {}
    for i in range(cutoff + 1):
        out[i] = k * T.rank(i) - ranks.get(i, 0) - ranks.get(i - 1, 0)
    return out


class TestKproj:
    def test_dual_numbers_growth(self):
        ring = QuotientRing(qx(), ["x^2"])
        k = ModulePresentation.cyclic(ring, ["x"])
        rep = kproj_demo(ring, k, k, 12)
        assert rep.table == {i: 1 for i in range(13)}
        assert rep.unbounded_witness()
        period, _ = rep.certificate
        assert period == 1

    def test_dual_numbers_against_field_ranks(self):
        ring = QuotientRing(qx(), ["x^2"])
        k_mod = ModulePresentation.cyclic(ring, ["x"])
        rep = kproj_demo(ring, k_mod, k_mod, 8)
        assert rep.table == _kproj_table_by_field_ranks(
            ring, k_mod, k_mod, 8, 2)

    def test_cubic_against_field_ranks(self):
        ring = QuotientRing(qx(), ["x^3"])
        k_mod = ModulePresentation.cyclic(ring, ["x"])
        rep = kproj_demo(ring, k_mod, k_mod, 6)
        assert rep.table == _kproj_table_by_field_ranks(
            ring, k_mod, k_mod, 6, 3)
        assert all(rep.table[i] for i in range(7))
        period, _ = rep.certificate
        assert period <= 2

    def test_free_module_is_bounded(self):
        ring = QuotientRing(qx(), ["x^2"])
        free = ModulePresentation.free(ring, 1)
        rep = kproj_demo(ring, free, free, 8)
        assert rep.table[0] == 2            # A itself, two-dimensional
        assert all(rep.table[i] == 0 for i in range(1, 9))
        assert not rep.unbounded_witness()

    def test_needs_hypersurface(self):
        with pytest.raises(UsageError):
            kproj_demo(qx(), ModulePresentation.free(qx(), 1), None, 4)


class TestRegularity:
    def test_polynomial_ring(self):
        case = law_regularity_bound(PrimeIdeal(qxy(), ["x"]), 12, seed=1)
        assert case.verdict == "pass"
        assert all(set(s) <= {-1, 0} for s in case.witness["supports"])

    def test_integers(self):
        case = law_regularity_bound(PrimeIdeal(ZZ, [5]), 12, seed=2)
        assert case.verdict == "pass"

    def test_needs_regular(self):
        ring = QuotientRing(qx(), ["x^2"])
        with pytest.raises(UsageError):
            law_regularity_bound(PrimeIdeal(ring, ["x"]), 3)


class TestGenerators:
    def test_z_complexes_are_valid_and_bounded(self):
        rng = random.Random(17)
        for _ in range(50):
            X = rand_z_complex(rng)       # constructor checks d^2 = 0
            assert X.lo >= -3 and X.hi <= 3
            assert all(X.rank(n) <= 3 for n in X.degrees())

    def test_invariants_kind_filter(self):
        rng = random.Random(3)
        for _ in range(20):
            inv = rand_invariants(rng, kinds=("fin",), min_pieces=1)
            assert {p.kind for _, p in inv.placed} == {"fin"}

    def test_perturbed_identity_commutes(self):
        X = koszul(ZZ, [5, 3])
        f = perturbed_identity(X, 5, h_seed=99)   # constructor validates
        assert f.src is X and f.tgt is X

    def test_build_deterministic(self):
        rng1, rng2 = random.Random(23), random.Random(23)
        r1 = rand_recipe(rng1)
        r2 = rand_recipe(rng2)
        assert r1 == r2
        assert build_object(ZZ, r1) == build_object(ZZ, r2)

    def test_thick_objects_dualisable(self):
        rng = random.Random(29)
        five = PrimeIdeal(ZZ, [5])
        for i in range(20):
            X, recipe = rand_thick_object(rng, five)
            verdict = is_dualisable(X)
            assert verdict.kind == "Dualisable", (i, recipe)

    def test_module_generator_rings(self):
        rng = random.Random(31)
        m = rand_module(rng, qxy())
        assert m.ambient_rank <= 3
        with pytest.raises(UsageError):
            rand_module(rng, QQ)


class TestShrinking:
    def test_recipe_shrink_is_minimal(self):
        # every step of the core recipe is needed to reach rank 4; the
        # trailing suspension is dead weight and should get dropped
        recipe = [("base", 0), ("suspend", 0, -1), ("sum", 1, 1),
                  ("suspend", 2, 2), ("sum", 3, 3), ("suspend", 4, 1)]

        def still_fails(steps):
            return build_object(ZZ, steps).total_rank() >= 4

        assert still_fails(recipe)
        small = shrink_recipe(recipe, still_fails)
        assert still_fails(small)
        assert len(small) < len(recipe)
        for i in range(len(small)):
            assert not still_fails(small[:i] + small[i + 1:])

    def test_module_shrink(self):
        rel = Matrix.from_rows(ZZ, [[10, 3, 0], [0, 7, 2]])
        pres = ModulePresentation(ZZ, 2, rel)

        def still_fails(p):
            return any(p.relations.at(i, j) % 5 == 0 and p.relations.at(i, j)
                       for i in range(p.relations.nrows)
                       for j in range(p.relations.ncols))

        small = shrink_module(pres, still_fails)
        assert still_fails(small)
        assert small.relations.ncols == 1
        assert small.ambient_rank == 1


class TestSuite:
    def test_full_run_passes(self):
        rep = run_suite(seed=0)
        assert rep.ok
        assert [c.case_id for c in rep.cases] == \
            sorted(c.case_id for c in rep.cases)

    def test_deterministic(self):
        a = run_suite(seed=4, suite="tensor-compact").to_dict()
        b = run_suite(seed=4, suite="tensor-compact").to_dict()
        assert a == b

    def test_counts_override(self):
        rep = run_suite(seed=1, suite="tensor-compact",
                        counts={"tensor-compact": 5})
        assert len(rep.cases) == 5

    def test_unknown_suite(self):
        with pytest.raises(UsageError):
            run_suite(suite="nonesuch")

    def test_report_shape(self):
        d = run_suite(seed=2, suite="nu").to_dict()
        assert d["failed"] == 0
        assert d["total"] == d["passed"] + d["skipped"]
        case = d["cases"][0]
        assert {"case", "law", "verdict", "note", "witness_digest"} \
            <= set(case)

    def test_failing_case_carries_manifest(self):
        case = LawCase("demo", "demo/0", "fail", {"lhs": 1},
                       {"ring": {"kind": "integers"}})
        out = case.to_dict()
        assert out["manifest"] == {"ring": {"kind": "integers"}}
        assert "witness" in out
