import pytest

from torsiondual.complexes import ChainMap, FreeComplex, cone, direct_sum, homology, koszul
from torsiondual.errors import InconsistentPrimeError, UsageError
from torsiondual.grobner import ModulePresentation
from torsiondual.linalg import Matrix
from torsiondual.resolutions import (
    Finite, PeriodicInfinite, UnknownAtCutoff, betti_at_prime,
    default_cutoff, finiteness_decision, normalise_columns, resolve,
)
from torsiondual.rings import (
    Integers, PolynomialRing, PrimeIdeal, QuotientRing, Rationals,
)

QQ = Rationals()
ZZ = Integers()


def dual_numbers():
    A = PolynomialRing(QQ, ("x",))
    return QuotientRing(A, [A.el("x^2")])


class TestResolve:
    def test_principal_ideal(self):
        A = PolynomialRing(QQ, ("x", "y"))
        pres = ModulePresentation.cyclic(A, [A.el("x")])
        res = resolve(pres, 5)
        assert res.complete
        F = res.resolution
        assert F.amplitude() == (-1, 0)
        assert F.rank(-1) == 1 and F.rank(0) == 1

    def test_residue_field_of_dual_numbers(self):
        R = dual_numbers()
        pres = ModulePresentation.cyclic(R, [R.el("x")])
        res = resolve(pres, 4)
        assert not res.complete
        F = res.resolution
        assert F.amplitude() == (-4, 0)
        assert all(F.rank(n) == 1 for n in range(-4, 1))
        # every differential is multiplication by the class of x
        for n in range(-4, 0):
            assert R.fmt(F.diff(n).at(0, 0)) == "x"
        # resolution is exact strictly between the ends
        h = homology(F)
        assert h.summand(-1).is_zero()
        assert h.summand(-2).is_zero()
        assert not h.summand(0).is_zero()

    def test_free_module(self):
        A = PolynomialRing(QQ, ("x", "y"))
        res = resolve(ModulePresentation.free(A, 2), 3)
        assert res.complete
        assert res.resolution.amplitude() == (0, 0)
        assert res.resolution.rank(0) == 2

    def test_complex_resolves_to_itself(self):
        X = koszul(ZZ, [2, 3])
        res = resolve(X, 5)
        assert res.complete and res.resolution == X
        assert res.witness.src == X and res.witness.tgt == X

    def test_cutoff_validation(self):
        with pytest.raises(UsageError):
            resolve(ModulePresentation.cyclic(ZZ, [4]), -1)
        with pytest.raises(UsageError):
            resolve(koszul(ZZ, [2, 3]), -5)

    def test_witness_commutes_onto_relations(self):
        A = PolynomialRing(QQ, ("x", "y"))
        pres = ModulePresentation.cyclic(A, [A.el("x^2"), A.el("x*y")])
        res = resolve(pres, 5)
        assert res.complete
        w = res.witness
        got = res.resolution.diff(-1).mul(w.comp(-1))
        assert got == pres.relations

    def test_two_step_regular(self):
        A = PolynomialRing(QQ, ("x", "y"))
        pres = ModulePresentation.cyclic(A, [A.el("x^2"), A.el("x*y")])
        res = resolve(pres, 5)
        F = res.resolution
        assert F.amplitude() == (-2, 0)
        assert F.rank(-2) == 1


class TestBetti:
    def test_hyperplane_module(self):
        A = PolynomialRing(QQ, ("x", "y"))
        pres = ModulePresentation.cyclic(A, [A.el("x")])
        p = PrimeIdeal(A, [A.el("x")])
        assert betti_at_prime(pres, p, 5) == {0: 1, -1: 1}

    def test_unit_module(self):
        A = PolynomialRing(QQ, ("x", "y"))
        pres = ModulePresentation.free(A, 1)
        for gens in (["x"], ["x", "y"]):
            p = PrimeIdeal(A, [A.el(g) for g in gens])
            assert betti_at_prime(pres, p, 5) == {0: 1}

    def test_z_mod_25(self):
        p5 = PrimeIdeal(ZZ, [ZZ.el(5)])
        pres = ModulePresentation.cyclic(ZZ, [25])
        assert betti_at_prime(pres, p5, 5) == {0: 1, -1: 1}
        X = FreeComplex(ZZ, {-1: 1, 0: 1}, {-1: Matrix.from_rows(ZZ, [[25]])})
        assert betti_at_prime(X, p5, 5) == {0: 1, -1: 1}

    def test_away_from_support(self):
        # Z/25 at (3): 25 is invertible mod 3, no Betti at all
        p3 = PrimeIdeal(ZZ, [ZZ.el(3)])
        pres = ModulePresentation.cyclic(ZZ, [25])
        assert betti_at_prime(pres, p3, 5) == {}

    def test_additive_on_sums(self):
        p5 = PrimeIdeal(ZZ, [ZZ.el(5)])
        X = FreeComplex(ZZ, {-1: 1, 0: 1}, {-1: Matrix.from_rows(ZZ, [[5]])})
        Y = FreeComplex(ZZ, {0: 1, 1: 1}, {0: Matrix.from_rows(ZZ, [[25]])})
        bx = betti_at_prime(X, p5, 5)
        by = betti_at_prime(Y, p5, 5)
        bs = betti_at_prime(direct_sum(X, Y), p5, 5)
        for n in set(bx) | set(by):
            assert bs.get(n, 0) == bx.get(n, 0) + by.get(n, 0)

    def test_quasi_iso_invariance(self):
        p5 = PrimeIdeal(ZZ, [ZZ.el(5)])
        X = FreeComplex(ZZ, {-1: 1, 0: 1}, {-1: Matrix.from_rows(ZZ, [[5]])})
        Z = koszul(ZZ, [7])
        padded = direct_sum(X, cone(ChainMap.identity(Z)))
        assert betti_at_prime(padded, p5, 5) == betti_at_prime(X, p5, 5)

    def test_truncated_table_omits_boundary(self):
        R = dual_numbers()
        pres = ModulePresentation.cyclic(R, [R.el("x")])
        p = PrimeIdeal(R, [R.el("x")])
        table = betti_at_prime(pres, p, 4)
        assert table == {0: 1, -1: 1, -2: 1, -3: 1}

    def test_inconsistent_prime_surfaces(self):
        A = PolynomialRing(QQ, ("x", "y"))
        X = FreeComplex(A, {0: 1, 1: 2},
                        {0: Matrix.from_rows(A, [["x"], ["y"]])})
        bad = PrimeIdeal(A, [A.el("x*y")])
        with pytest.raises(InconsistentPrimeError):
            betti_at_prime(X, bad, 3)


class TestDecision:
    def test_periodic_dual_numbers(self):
        R = dual_numbers()
        pres = ModulePresentation.cyclic(R, [R.el("x")])
        p = PrimeIdeal(R, [R.el("x")])
        d = finiteness_decision(pres, p, 4)
        assert isinstance(d, PeriodicInfinite)
        assert d.period == 1 and d.onset == 0

    def test_periodic_cubic(self):
        A = PolynomialRing(QQ, ("x",))
        R = QuotientRing(A, [A.el("x^3")])
        pres = ModulePresentation.cyclic(R, [R.el("x")])
        p = PrimeIdeal(R, [R.el("x")])
        d = finiteness_decision(pres, p, 6)
        assert isinstance(d, PeriodicInfinite)
        assert d.period <= 2

    def test_finite_z(self):
        p5 = PrimeIdeal(ZZ, [ZZ.el(5)])
        d = finiteness_decision(ModulePresentation.cyclic(ZZ, [25]), p5, 5)
        assert isinstance(d, Finite)
        assert d.total == 2

    def test_acyclic_complex(self):
        p5 = PrimeIdeal(ZZ, [ZZ.el(5)])
        X = cone(ChainMap.identity(koszul(ZZ, [2])))
        d = finiteness_decision(X, p5, 5)
        assert isinstance(d, Finite)
        assert d.total == 0

    def test_regular_always_finite(self):
        A = PolynomialRing(QQ, ("x", "y"))
        pres = ModulePresentation.cyclic(A, [A.el("x^2"), A.el("x*y")])
        p = PrimeIdeal(A, [A.el("x")])
        d = finiteness_decision(pres, p)
        assert isinstance(d, Finite)
        assert d.table == {0: 1, -1: 1}

    def test_default_cutoffs(self):
        A = PolynomialRing(QQ, ("x", "y"))
        assert default_cutoff(A, 0) == 6
        assert default_cutoff(dual_numbers(), 0) == 8


class TestNormalisation:
    def test_columns_sorted_and_monic(self):
        A = PolynomialRing(QQ, ("x", "y"))
        M = Matrix.from_rows(A, [["2*y", "3*x"]])
        N = normalise_columns(M)
        cols = sorted(A.fmt(N.at(0, j)) for j in range(2))
        assert cols == ["x", "y"]

    def test_integer_sign(self):
        M = Matrix.from_rows(ZZ, [[-2, 4], [6, -8]])
        N = normalise_columns(M)
        for j in range(2):
            first = next(N.at(i, j) for i in range(2) if N.at(i, j))
            assert first > 0
