import warnings

import numpy as np
import pytest

from conftest import schrodinger_residual
from ptscarf import (
    Branch,
    DomainClass,
    JacobiArgs,
    NotOnPTLine,
    NotRealPhase,
    NotSpectralSingularity,
    RecurrenceDegenerate,
    ScarfParams,
    eigenfunction_broken,
    eigenfunction_energy,
    eigenfunction_sample,
    eigenfunction_ss,
    eigenvalues_complex,
    eigenvalues_real,
    jacobi,
    jacobi_recurrence,
    normalizable_broken_levels,
    potential_general,
    susy_ladder_check,
)

PLINE = ScarfParams(A=1.0, B=1.5, C=0.5, alpha=1.0)
PSS = ScarfParams(A=2.0, B=2.5, C=0.7, alpha=1.0)


class TestJacobi:
    @pytest.mark.parametrize("a,b,z", [(0.5, 0.5, 0.1), (-2j, -11, 0.3j), (3 + 1j, -0.5, 2.0)])
    def test_order_zero(self, a, b, z):
        assert jacobi(JacobiArgs(0, a, b, z)) == 1.0 + 0.0j

    @pytest.mark.parametrize("a,b,z", [(1.5, -0.5, 0.3), (-2j, -11, 0.3j), (2 - 1j, 1j, -0.7)])
    def test_order_one_closed_form(self, a, b, z):
        want = (a + 1) + (a + b + 2) * (z - 1) / 2
        assert jacobi(JacobiArgs(1, a, b, z)) == pytest.approx(want, rel=1e-14)

    def test_resonance_regression_value(self):
        got = jacobi(JacobiArgs(5, -2j, -11, 0.3j))
        assert got == pytest.approx(25.695057031250002 - 71.60422442708334j, rel=1e-14)

    @pytest.mark.parametrize("n", [2, 5, 9, 15])
    @pytest.mark.parametrize("a", [-30.0, -11.0, -3.5, 0.0, 2.0 - 1j])
    @pytest.mark.parametrize("b", [-30.0, -7.0, 0.5, -2j])
    @pytest.mark.parametrize("z", [-5.0, -0.3, 0.0, 1.0, 0.3j, 2.0 + 2.0j])
    def test_sum_matches_recurrence(self, n, a, b, z):
        args = JacobiArgs(n, a, b, z)
        try:
            rec = jacobi_recurrence(args)
        except RecurrenceDegenerate:
            return  # sum form is authoritative on the degenerate set
        direct = jacobi(args)
        assert abs(direct - rec) <= 1e-10 * max(1.0, abs(direct))

    def test_recurrence_degenerate_raises(self):
        with pytest.raises(RecurrenceDegenerate):
            jacobi_recurrence(JacobiArgs(3, -3.0, 0.0, 0.5))
        # the sum form stays finite there
        assert np.isfinite(jacobi(JacobiArgs(3, -3.0, 0.0, 0.5)).real)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            JacobiArgs(-1, 0.0, 0.0, 0.0)


class TestRealLadders:
    def test_unbroken_branch_one(self):
        sr = eigenvalues_real(ScarfParams(A=2.0, B=1.0, alpha=1.0), Branch.One)
        assert sr.pairs() == [(0, -4.0 + 0.0j), (1, -1.0 + 0.0j)]
        assert sr.domain is DomainClass.SusyUnbroken
        assert all(e.E.imag == 0.0 for e in sr.entries)

    def test_unbroken_branch_two(self):
        sr = eigenvalues_real(ScarfParams(A=2.0, B=1.0, alpha=1.0), Branch.Two)
        assert sr.pairs() == [(0, -0.25 + 0.0j)]

    def test_domain_one_corrected_ladder_starts_at_one(self):
        sr = eigenvalues_real(ScarfParams(A=-2.0, B=1.0, alpha=1.0), Branch.One)
        assert sr.pairs() == [(1, -1.0 + 0.0j)]

    def test_domain_two_empty_auto(self):
        sr = eigenvalues_real(ScarfParams(A=1.0, B=0.0, alpha=1.0), Branch.Two)
        assert sr.entries == ()
        assert sr.domain is DomainClass.SusyBrokenII

    def test_domain_two_single_corrected_level(self):
        sr = eigenvalues_real(ScarfParams(A=1.0, B=-1.0, alpha=1.0), Branch.Two)
        assert sr.pairs() == [(1, -0.25 + 0.0j)]

    def test_explicit_nmax_domain_one(self):
        sr = eigenvalues_real(ScarfParams(A=-2.0, B=1.0, alpha=1.0), Branch.One, n_max=2)
        assert sr.pairs() == [(0, -4.0 + 0.0j), (1, -1.0 + 0.0j), (2, 0.0 + 0.0j)]
        assert [e.beyond_cutoff for e in sr.entries] == [True, False, True]

    def test_explicit_nmax_domain_two(self):
        # corrected-branch values -(nu + n alpha)^2 throughout; neither index
        # satisfies the bound condition at (1, 0), so both entries are flagged
        sr = eigenvalues_real(ScarfParams(A=1.0, B=0.0, alpha=1.0), Branch.Two, n_max=1)
        assert sr.pairs() == [(0, -0.25 + 0.0j), (1, -0.25 + 0.0j)]
        assert [e.beyond_cutoff for e in sr.entries] == [True, True]

    def test_exceptional_merge(self):
        pa = ScarfParams(A=1.0, B=2.0, alpha=2.0)
        one = eigenvalues_real(pa, Branch.One)
        two = eigenvalues_real(pa, Branch.Two)
        assert one.pairs() == two.pairs() == [(0, -1.0 + 0.0j)]

    def test_requires_real_phase(self):
        with pytest.raises(NotRealPhase):
            eigenvalues_real(PLINE, Branch.One)

    def test_pt_branches_rejected(self):
        with pytest.raises(ValueError):
            eigenvalues_real(ScarfParams(A=2.0, B=1.0, alpha=1.0), Branch.PlusPT)

    def test_bound_energies_skip_flagged(self):
        sr = eigenvalues_real(ScarfParams(A=-2.0, B=1.0, alpha=1.0), Branch.One, n_max=2)
        assert sr.bound_energies() == [-1.0 + 0.0j]


class TestComplexLadders:
    def test_ground_pair(self):
        plus, minus = eigenvalues_complex(PLINE, n_max=0)
        assert plus.entries[0].E == -0.75 + 1.0j
        assert minus.entries[0].E == -0.75 - 1.0j

    def test_ladder_values(self):
        plus, _ = eigenvalues_complex(PLINE, n_max=2)
        assert plus.energies() == [-0.75 + 1.0j, 0.25 + 0.0j, -0.75 - 1.0j]

    def test_bitwise_conjugate_structure(self):
        plus, minus = eigenvalues_complex(PSS, n_max=4)
        for ep, em in zip(plus.entries, minus.entries):
            assert ep.E.real == em.E.real
            assert ep.E.imag == -em.E.imag

    def test_coalescence_iff_on_singularity(self):
        p = ScarfParams(A=2.0, B=2.5, C=0.5, alpha=1.0)
        plus, minus = eigenvalues_complex(p, n_max=4)
        for n in range(5):
            gap = abs(plus.entries[n].E - minus.entries[n].E)
            if n == 2:  # A = n alpha
                assert gap <= 1e-12
                assert plus.entries[n].E == pytest.approx(0.25 + 0.0j, abs=1e-12)
            else:
                assert gap > 1e-12

    def test_requires_pt_line(self):
        with pytest.raises(NotOnPTLine):
            eigenvalues_complex(ScarfParams(A=1.0, B=2.0, C=0.5, alpha=1.0), n_max=1)
        with pytest.raises(NotOnPTLine):
            eigenvalues_complex(ScarfParams(A=1.0, B=1.5, alpha=1.0), n_max=1)

    def test_normalizable_count(self):
        assert normalizable_broken_levels(PLINE) == 1
        assert normalizable_broken_levels(PSS) == 2
        assert normalizable_broken_levels(ScarfParams(A=0.0, B=0.5, C=0.7, alpha=1.0)) == 0
        assert normalizable_broken_levels(ScarfParams(A=-1.0, B=-0.5, C=0.7, alpha=1.0)) == 0


class TestBrokenEigenfunctions:
    def test_origin_is_one(self):
        assert eigenfunction_broken(PLINE, 0, 1, 0.0) == pytest.approx(1.0 + 0.0j, abs=1e-15)

    @pytest.mark.parametrize("x", [-1.0, 0.5])
    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_pt_pair_relation(self, x, n):
        lhs = eigenfunction_broken(PSS, n, 1, x)
        rhs = np.conj(eigenfunction_broken(PSS, n, -1, -x))
        assert lhs == pytest.approx(rhs, abs=1e-13 * max(1.0, abs(lhs)))

    @pytest.mark.parametrize("n", [0, 1])
    def test_decay_at_window_edge(self, n):
        xs = np.linspace(-12.0, 12.0, 241)
        vals = np.abs([eigenfunction_broken(PSS, n, 1, x) for x in xs])
        assert vals[0] < 1e-3 * vals.max()
        assert vals[-1] < 1e-3 * vals.max()

    def test_energy_pairing(self):
        plus, minus = eigenvalues_complex(PSS, n_max=3)
        for n in range(4):
            assert eigenfunction_energy(PSS, n, 1) == minus.entries[n].E
            assert eigenfunction_energy(PSS, n, -1) == plus.entries[n].E

    def test_schrodinger_residual_spot(self):
        E = eigenfunction_energy(PLINE, 0, 1)
        rel = schrodinger_residual(
            lambda x: eigenfunction_broken(PLINE, 0, 1, x),
            lambda x: potential_general(PLINE, 1, x),
            E,
            window=12.0,
        )
        assert rel < 1e-6

    def test_requires_pt_line(self):
        with pytest.raises(NotOnPTLine):
            eigenfunction_broken(ScarfParams(A=1.0, B=2.0, C=0.5, alpha=1.0), 0, 1, 0.0)

    def test_sign_validation(self):
        with pytest.raises(ValueError):
            eigenfunction_broken(PLINE, 0, 2, 0.0)


class TestSingularityEigenfunctions:
    def test_requires_singularity(self):
        with pytest.raises(NotSpectralSingularity):
            eigenfunction_ss(PSS, 1, 1, 0.0)

    def test_low_order_one_sided(self):
        p = ScarfParams(A=4.0, B=5.0, C=7.0, alpha=2.0)
        xs = np.linspace(-4.0, 4.0, 801)
        vals = np.abs([eigenfunction_ss(p, 2, 1, x) for x in xs])
        left = vals[xs <= -1.0].mean()
        right = vals[xs >= 1.0].mean()
        assert left > 10.0 * right

    def test_high_order_localized_at_origin(self):
        p = ScarfParams(A=24.0, B=25.0, C=7.0, alpha=2.0)
        xs = np.linspace(-4.0, 4.0, 801)
        vals = np.abs([eigenfunction_ss(p, 12, 1, x) for x in xs])
        assert abs(xs[int(np.argmax(vals))]) <= (xs[1] - xs[0]) / 2

    def test_c_flip_mirrors(self):
        p = ScarfParams(A=4.0, B=5.0, C=7.0, alpha=2.0)
        q = ScarfParams(A=4.0, B=5.0, C=-7.0, alpha=2.0)
        for x in (-1.5, -0.25, 0.8):
            assert eigenfunction_ss(q, 2, 1, x) == pytest.approx(
                np.conj(eigenfunction_ss(p, 2, 1, -x)), abs=1e-12
            )

    def test_schrodinger_residual_spot(self):
        rel = schrodinger_residual(
            lambda x: eigenfunction_ss(PSS, 2, 1, x),
            lambda x: potential_general(PSS, 1, x),
            PSS.C ** 2,
            window=12.0,
        )
        assert rel < 1e-6


class TestEigenfunctionSample:
    def test_sup_normalization(self):
        xs = np.linspace(-5.0, 5.0, 101)
        fs = eigenfunction_sample(PLINE, 0, 1, xs, normalize="sup")
        assert np.max(np.abs(np.asarray(fs.values))) == pytest.approx(1.0, abs=1e-14)

    def test_auto_form_picks_singularity(self):
        xs = np.linspace(-2.0, 2.0, 41)
        auto = eigenfunction_sample(PSS, 2, 1, xs)
        direct = np.array([eigenfunction_ss(PSS, 2, 1, x) for x in xs])
        assert np.max(np.abs(np.asarray(auto.values) - direct)) < 1e-12

    def test_normalize_validation(self):
        with pytest.raises(ValueError):
            eigenfunction_sample(PLINE, 0, 1, np.linspace(-1, 1, 5), normalize="l2")


class TestSusyLadder:
    def test_single_level_pair(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = susy_ladder_check(ScarfParams(A=0.6, B=0.2, alpha=1.0), Branch.One,
                                    k=1, N=800)
        assert len(rep.minus_levels) == 1
        assert rep.minus_levels[0] == pytest.approx(-0.36, abs=1e-6)
        assert all(e.real >= -1e-6 for e in rep.plus_levels)
        assert rep.passed

    def test_zero_superpotential_edge(self):
        rep = susy_ladder_check(ScarfParams(A=0.0, B=0.0, alpha=1.0), Branch.One,
                                k=1, N=800)
        assert rep.minus_levels == () and rep.plus_levels == ()
        assert rep.passed

    def test_requires_real_phase(self):
        with pytest.raises(NotRealPhase):
            susy_ladder_check(PLINE, Branch.One, k=1)

    def test_requires_nonnegative_parameter(self):
        with pytest.raises(ValueError):
            susy_ladder_check(ScarfParams(A=-1.0, B=0.2, alpha=1.0), Branch.One, k=1)
