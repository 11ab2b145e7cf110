import unittest
import warnings

import numpy as np

from src.enums import ChiMethod
from src.exceptions import (
    ConvergenceWarning,
    DegeneracyWarning,
    DegenerateGroundStateError,
    InvalidParametersError,
)
from src.fidelity import (
    ChiEstimate,
    chi,
    chi_overlap,
    chi_overlap_family,
    chi_perturbative,
    convergence_order,
    default_delta,
    fidelity_overlap,
    perturbative_sum,
    sweep_curve,
)
from src.fidelity.susceptibility import _infidelity
from src.model import BandedSpinMatrix, ModelParams, build_driving, build_hamiltonian
from src.solver import full_spectrum, ground_state


class TestChiEstimate(unittest.TestCase):
    def test_negative_value_is_rejected(self):
        with self.assertRaises(InvalidParametersError):
            ChiEstimate(-1.0, ChiMethod.OVERLAP)

    def test_flag(self):
        self.assertEqual(ChiEstimate(1.0, ChiMethod.OVERLAP).flag, "")
        self.assertEqual(
            ChiEstimate(1.0, ChiMethod.OVERLAP, converged=False).flag, "unconverged"
        )


class TestFidelityOverlap(unittest.TestCase):
    def test_equal_fields_give_one(self):
        self.assertEqual(fidelity_overlap(ModelParams(16, 0.5, 0.5), 0.7, 0.7), 1.0)

    def test_bounded_and_symmetric(self):
        params = ModelParams(32, 0.5, 1.0)
        forward = fidelity_overlap(params, 1.2, 1.6)
        backward = fidelity_overlap(params, 1.6, 1.2)
        self.assertAlmostEqual(forward, backward, places=14)
        self.assertGreaterEqual(forward, 0.0)
        self.assertLess(forward, 1.0)

    def test_small_step_is_quadratic(self):
        params = ModelParams(16, 0.5, 1.5)
        exact = chi_perturbative(params).value
        d = 1e-3
        F = fidelity_overlap(params, 1.5 - d / 2, 1.5 + d / 2)
        self.assertAlmostEqual(2 * (1 - F) / d**2, exact, delta=1e-3 * exact)

    def test_ground_state_sign_does_not_matter(self):
        M1 = build_hamiltonian(ModelParams(24, 0.3, 1.2))
        M2 = build_hamiltonian(ModelParams(24, 0.3, 1.3))
        a, b = ground_state(M1).vector, ground_state(M2).vector
        expected = 1 - abs(a @ b)
        for first, second in ((a, b), (-a, b), (a, -b), (-a, -b)):
            with self.subTest(signs=(first[-1] > 0, second[-1] > 0)):
                self.assertAlmostEqual(_infidelity(first, second), expected, delta=1e-13)


class TestEstimatorsAgree(unittest.TestCase):
    def test_perturbative_and_overlap(self):
        for N in (4, 8, 16, 64, 256):
            for gamma in (-0.5, 0.0, 0.5):
                for h in (0.2, 0.5, 0.8, 1.5, 2.0):
                    params = ModelParams(N, gamma, h)
                    with self.subTest(N=N, gamma=gamma, h=h), warnings.catch_warnings():
                        warnings.simplefilter("ignore", DegeneracyWarning)
                        exact = chi_perturbative(params).value
                        overlap = chi_overlap(params).value
                        self.assertLess(abs(overlap - exact) / exact, 1e-6)

    def test_auto_method_switches_at_dense_cap(self):
        params = ModelParams(64, 0.5, 1.5)
        self.assertEqual(chi(params).method, ChiMethod.PERTURBATIVE)
        self.assertEqual(chi(params, dense_cap=32).method, ChiMethod.OVERLAP)


class TestChiLimits(unittest.TestCase):
    def test_symmetric_phase_large_field(self):
        # chi_F -> 0 as h grows
        values = [chi(ModelParams(128, 0.5, h)).value for h in (1.5, 3.0, 6.0)]
        self.assertTrue(values[0] > values[1] > values[2] > 0)

    def test_broken_phase_is_extensive(self):
        small = chi(ModelParams(512, 0.0, 0.5)).value
        large = chi(ModelParams(2048, 0.0, 0.5)).value
        self.assertAlmostEqual(large / small, 4.0, delta=0.1)

    def test_chi_is_nonnegative_at_zero_field(self):
        self.assertGreaterEqual(chi(ModelParams(64, 0.3, 0.0)).value, 0.0)

    def test_doublet_is_warned_not_refused(self):
        params = ModelParams(256, 0.0, 0.3)
        with self.assertWarns(DegeneracyWarning):
            estimate = chi_overlap(params)
        self.assertGreater(estimate.value, 0)


class TestPerturbativeSum(unittest.TestCase):
    def test_commuting_driving_gives_zero(self):
        H = build_hamiltonian(ModelParams(10, 0.0, 0.5))
        self.assertLess(perturbative_sum(full_spectrum(H), H), 1e-20)

    def test_within_sector_degeneracy_is_refused(self):
        # two equal levels in the even sector
        M = BandedSpinMatrix(np.array([0.0, 5.0, 0.0]), np.zeros(1))
        spectrum = full_spectrum(M)
        with self.assertRaises(DegenerateGroundStateError):
            perturbative_sum(spectrum, build_driving(ModelParams(2, 0.0, 0.0)), 0, 1e-10)


class TestOverlapFamily(unittest.TestCase):
    def test_commuting_family_has_zero_susceptibility(self):
        # H(h) = H_0 + h * H_0: the ground vector never moves
        H0 = build_hamiltonian(ModelParams(12, 0.5, 1.5))

        def family(h):
            return BandedSpinMatrix((1 + h) * H0.diag, (1 + h) * H0.offdiag2)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            estimate = chi_overlap_family(family, 0.5, 1e-3)
        self.assertLess(estimate.value, 1e-6)

    def test_nonpositive_delta(self):
        with self.assertRaises(InvalidParametersError):
            chi_overlap(ModelParams(8, 0.0, 1.5), delta_h=0.0)

    def test_window_must_stay_in_domain(self):
        with self.assertRaises(InvalidParametersError):
            chi_overlap(ModelParams(8, 0.0, 1e-6), delta_h=1e-4)


class TestStepControl(unittest.TestCase):
    def test_default_delta(self):
        self.assertEqual(default_delta(0.5), 1e-4)
        self.assertEqual(default_delta(0.99), 1e-5)
        self.assertEqual(default_delta(1.04), 1e-5)

    def test_symmetric_estimator_is_second_order(self):
        order = convergence_order(ModelParams(32, 0.5, 1.5), (0.08, 0.04, 0.02))
        self.assertAlmostEqual(order, 2.0, delta=0.15)

    def test_ladder_must_be_geometric(self):
        with self.assertRaises(InvalidParametersError):
            convergence_order(ModelParams(32, 0.5, 1.5), (0.08, 0.05, 0.02))


class TestSweepCurve(unittest.TestCase):
    def test_overlap_above_dense_cap(self):
        curve = sweep_curve(8, 0.5, [0.5, 1.0, 1.5], dense_cap=4)
        self.assertEqual(len(curve.samples), 3)
        self.assertTrue(all(s.estimate is not None for s in curve.samples))
        self.assertEqual(curve.samples[0].estimate.method, ChiMethod.OVERLAP)

    def test_failed_points_are_recorded(self):
        curve = sweep_curve(8, 0.5, [0.0, 0.5], dense_cap=4)
        self.assertIsNone(curve.samples[0].estimate)
        self.assertTrue(curve.samples[0].flag.startswith("error"))
        self.assertTrue(np.isnan(curve.samples[0].value))
        self.assertEqual(len(curve.valid().samples), 1)

    def test_grid_must_ascend(self):
        with self.assertRaises(InvalidParametersError):
            sweep_curve(8, 0.5, [0.5, 0.4])

    def test_single_peak_below_critical_field(self):
        hs = np.linspace(0.5, 1.5, 41)
        curve = sweep_curve(256, 0.5, hs)
        peak = hs[int(np.argmax(curve.values))]
        self.assertLess(peak, 1.0)
        self.assertGreater(peak, 0.8)
