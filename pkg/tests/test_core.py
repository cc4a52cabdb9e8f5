import numpy as np
import pytest

from ptscarf import (
    Branch,
    BranchUnavailable,
    FieldSample,
    OpticsMap,
    ScarfParams,
    energy_from_incidence,
    permittivity,
    potential_general,
    potential_minus_from_w,
    potential_plus_from_w,
    potential_pt,
    refractive_index,
    refractive_index_profile,
    superpotential,
    superpotential_derivative,
)

P21 = ScarfParams(A=2.0, B=1.0, alpha=1.0)
PLINE = ScarfParams(A=1.0, B=1.5, C=0.5, alpha=1.0)


class TestParams:
    def test_alpha_positive(self):
        with pytest.raises(ValueError):
            ScarfParams(A=1.0, B=1.0, alpha=0.0)
        with pytest.raises(ValueError):
            ScarfParams(A=1.0, B=1.0, alpha=-2.0)

    def test_finite_fields(self):
        with pytest.raises(ValueError):
            ScarfParams(A=float("nan"), B=1.0, alpha=1.0)
        with pytest.raises(ValueError):
            ScarfParams(A=1.0, B=float("inf"), alpha=1.0)

    def test_nu_and_lines(self):
        assert P21.nu == 0.5
        assert PLINE.on_pt_line()
        assert not P21.on_pt_line()
        assert ScarfParams(A=1.0, B=-0.5, alpha=1.0).on_isospectral_line()
        assert not PLINE.on_isospectral_line()

    def test_c_defaults_to_zero(self):
        assert ScarfParams(A=1.0, B=1.0, alpha=1.0).C == 0.0


class TestPotentialPT:
    def test_origin_value(self):
        assert potential_pt(P21, 0.0) == -7.0 + 0.0j

    def test_decay(self):
        assert abs(potential_pt(P21, 30.0)) < 1e-10
        assert abs(potential_pt(P21, -30.0)) < 1e-10

    @pytest.mark.parametrize("x", [0.3, 1.7])
    def test_pt_symmetry(self, x):
        assert potential_pt(P21, x) == pytest.approx(
            np.conj(potential_pt(P21, -x)), abs=1e-12
        )

    def test_ignores_c(self):
        with_c = ScarfParams(A=2.0, B=1.0, C=0.9, alpha=1.0)
        xs = np.linspace(-2.0, 2.0, 7)
        assert np.allclose(potential_pt(with_c, xs), potential_pt(P21, xs), atol=0)

    def test_vector_evaluation(self):
        xs = np.linspace(-1.0, 1.0, 5)
        vals = potential_pt(P21, xs)
        assert vals.shape == xs.shape
        assert vals[2] == potential_pt(P21, 0.0)


class TestPotentialGeneral:
    def test_reduces_to_pt_when_c_zero(self):
        xs = np.linspace(-3.0, 3.0, 11)
        for sign in (1, -1):
            assert np.max(np.abs(potential_general(P21, sign, xs) - potential_pt(P21, xs))) < 1e-14

    def test_origin_on_line(self):
        # even term only: A(A+alpha) - (C+iB)^2 + C-cross terms collapse to -3.75
        assert potential_general(PLINE, 1, 0.0) == pytest.approx(-3.75 + 0.0j, abs=1e-14)

    def test_both_signs_agree_on_line(self):
        xs = np.linspace(-4.0, 4.0, 17)
        d = np.abs(potential_general(PLINE, 1, xs) - potential_general(PLINE, -1, xs))
        assert np.max(d) < 1e-12

    def test_pt_symmetric_on_line(self):
        xs = np.linspace(0.1, 4.0, 9)
        v_pos = potential_general(PLINE, 1, xs)
        v_neg = potential_general(PLINE, 1, -xs)
        assert np.max(np.abs(v_pos - np.conj(v_neg))) < 1e-12

    def test_pt_violated_off_line(self):
        p = ScarfParams(A=2.0, B=1.0, C=0.5, alpha=1.0)
        xs = np.linspace(0.1, 4.0, 21)
        viol = np.abs(potential_general(p, 1, xs) - np.conj(potential_general(p, 1, -xs)))
        assert np.max(viol) >= 1e-6

    def test_sign_validation(self):
        with pytest.raises(ValueError):
            potential_general(PLINE, 0, 0.0)


class TestSuperpotential:
    def test_branch_one_origin(self):
        assert superpotential(P21, Branch.One, 0.0) == pytest.approx(1.0j, abs=1e-15)

    def test_branch_two_origin(self):
        assert superpotential(P21, Branch.Two, 0.0) == pytest.approx(2.5j, abs=1e-15)

    def test_branch_one_asymptote(self):
        assert superpotential(P21, Branch.One, 40.0) == pytest.approx(2.0 + 0.0j, abs=1e-10)

    def test_pt_branches_origin(self):
        assert superpotential(PLINE, Branch.PlusPT, 0.0) == pytest.approx(0.5 + 1.5j, abs=1e-15)
        assert superpotential(PLINE, Branch.MinusPT, 0.0) == pytest.approx(-0.5 + 1.5j, abs=1e-15)

    def test_pt_branches_need_c(self):
        with pytest.raises(BranchUnavailable):
            superpotential(P21, Branch.PlusPT, 0.0)
        with pytest.raises(BranchUnavailable):
            superpotential(P21, Branch.MinusPT, 0.0)

    @pytest.mark.parametrize("branch", [Branch.One, Branch.Two])
    @pytest.mark.parametrize("x", [-1.3, 0.2, 0.9])
    def test_derivative_matches_finite_difference(self, branch, x):
        h = 1e-6
        fd = (superpotential(P21, branch, x + h) - superpotential(P21, branch, x - h)) / (2 * h)
        assert superpotential_derivative(P21, branch, x) == pytest.approx(fd, abs=1e-7)


class TestPartnerPotentials:
    def test_minus_equals_pt_closed_form(self):
        xs = np.linspace(-3.0, 3.0, 13)
        for branch in (Branch.One, Branch.Two):
            v = np.array([potential_minus_from_w(P21, branch, x) for x in xs])
            assert np.max(np.abs(v - potential_pt(P21, xs))) < 1e-12

    def test_minus_equals_pt_fd_route(self):
        got = potential_minus_from_w(P21, Branch.One, 0.4, h=1e-5)
        assert got == pytest.approx(potential_pt(P21, 0.4), abs=1e-8)

    def test_zero_superpotential(self):
        free = ScarfParams(A=0.0, B=0.0, alpha=1.0)
        assert potential_minus_from_w(free, Branch.One, 0.7) == pytest.approx(0.0, abs=1e-15)

    def test_plus_is_shape_invariant_shift(self):
        # V_+(A, B) and V_pt(A - alpha, B) coincide once both vanish at infinity
        shifted = ScarfParams(A=1.0, B=1.0, alpha=1.0)
        xs = np.linspace(-3.0, 3.0, 13)
        v = np.array([potential_plus_from_w(P21, Branch.One, x) for x in xs])
        assert np.max(np.abs(v - potential_pt(shifted, xs))) < 1e-12


class TestOptics:
    def test_energy_examples(self):
        assert energy_from_incidence(OpticsMap(k0=1.0, eps_b=1.0, theta=0.0)) == pytest.approx(1.0)
        assert energy_from_incidence(OpticsMap(k0=2.0, eps_b=2.25, theta=0.0)) == pytest.approx(9.0)

    def test_energy_monotone_in_angle(self):
        thetas = np.linspace(0.0, 1.4, 8)
        es = [energy_from_incidence(OpticsMap(k0=2.0, eps_b=2.25, theta=t)) for t in thetas]
        assert all(a > b for a, b in zip(es, es[1:]))

    def test_optics_validation(self):
        with pytest.raises(ValueError):
            OpticsMap(k0=0.0, eps_b=1.0, theta=0.0)
        with pytest.raises(ValueError):
            OpticsMap(k0=1.0, eps_b=-1.0, theta=0.0)
        with pytest.raises(ValueError):
            OpticsMap(k0=1.0, eps_b=1.0, theta=2.0)

    def test_permittivity_origin(self):
        o = OpticsMap(k0=10.0, eps_b=2.25, theta=0.0)
        assert permittivity(P21, o, 0.0) == pytest.approx(2.25 + 0.07, abs=1e-12)

    def test_index_squares_to_permittivity(self):
        o = OpticsMap(k0=10.0, eps_b=2.25, theta=0.0)
        n0 = refractive_index(P21, o, 0.0)
        assert n0 * n0 == pytest.approx(2.32 + 0.0j, abs=1e-12)

    def test_index_regression_value(self):
        o = OpticsMap(k0=2.0, eps_b=1.2, theta=0.0)
        assert refractive_index(P21, o, 0.0).real == pytest.approx(1.7175564037317668, abs=1e-12)

    @pytest.mark.parametrize("x", [0.9, -0.9])
    def test_index_pt_symmetric(self, x):
        o = OpticsMap(k0=10.0, eps_b=2.25, theta=0.0)
        assert refractive_index(P21, o, x) == pytest.approx(
            np.conj(refractive_index(P21, o, -x)), abs=1e-12
        )

    def test_index_profile_matches_pointwise(self):
        o = OpticsMap(k0=10.0, eps_b=2.25, theta=0.0)
        xs = np.linspace(-2.0, 2.0, 21)
        prof = refractive_index_profile(P21, o, xs)
        assert isinstance(prof, FieldSample)
        direct = np.array([refractive_index(P21, o, x) for x in xs])
        assert np.max(np.abs(np.asarray(prof.values) - direct)) < 1e-12


class TestFieldSample:
    def test_rejects_decreasing(self):
        with pytest.raises(ValueError):
            FieldSample(xs=np.array([0.0, -1.0, -2.0]), values=np.zeros(3, dtype=complex))

    def test_rejects_nonuniform(self):
        with pytest.raises(ValueError):
            FieldSample(xs=np.array([0.0, 1.0, 3.0]), values=np.zeros(3, dtype=complex))

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            FieldSample(xs=np.array([0.0, 1.0]), values=np.zeros(3, dtype=complex))
