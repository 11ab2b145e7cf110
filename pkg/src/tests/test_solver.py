import unittest

import numpy as np

from src.enums import Parity, SolverMethod
from src.exceptions import DenseCapExceededError, InvalidParametersError
from src.model import BandedSpinMatrix, DickeBasis, ModelParams, build_hamiltonian
from src.solver import (
    full_spectrum,
    gap,
    ground_state,
    lowest_energies,
    relative_residual,
    sector_ground_state,
)
from src.solver.eigensolver import canonical_sign, sector_lowest


class TestGroundState(unittest.TestCase):
    def test_matches_dense_diagonalisation(self):
        for N, gamma, h in ((8, 0.5, 0.3), (9, -0.5, 1.5), (64, 0.0, 0.9)):
            with self.subTest(N=N, gamma=gamma, h=h):
                M = build_hamiltonian(ModelParams(N, gamma, h))
                pair = ground_state(M)
                dense = np.linalg.eigvalsh(M.to_dense())[0]
                self.assertAlmostEqual(pair.energy, dense, delta=1e-10 * max(1, abs(dense)))
                self.assertLess(pair.residual, 1e-12)
                self.assertAlmostEqual(np.linalg.norm(pair.vector), 1.0, places=12)

    def test_vector_lives_in_one_sector(self):
        M = build_hamiltonian(ModelParams(10, 0.5, 2.0))
        pair = ground_state(M)
        other = M.sector(Parity(1 - int(pair.parity)))
        np.testing.assert_array_equal(other.restrict(pair.vector), 0.0)

    def test_symmetric_phase_ground_state_is_polarized(self):
        M = build_hamiltonian(ModelParams(16, 0.5, 3.0))
        pair = ground_state(M)
        self.assertEqual(pair.parity, Parity.of_index(16))
        self.assertGreater(pair.vector[-1], 0.9)
        self.assertFalse(pair.degenerate)

    def test_broken_phase_doublet_prefers_polarized_sector(self):
        M = build_hamiltonian(ModelParams(256, 0.0, 0.2))
        pair = ground_state(M)
        self.assertTrue(pair.degenerate)
        self.assertEqual(pair.parity, Parity.of_index(256))
        self.assertFalse(pair.sector_degenerate)

    def test_ground_state_is_unique_from_the_critical_point_up(self):
        for N in (16, 64, 256):
            for gamma in (-0.5, 0.0, 0.5, 0.8):
                for h in (1.0, 1.2, 2.0, 5.0):
                    with self.subTest(N=N, gamma=gamma, h=h):
                        M = build_hamiltonian(ModelParams(N, gamma, h))
                        pair = ground_state(M)
                        self.assertFalse(pair.degenerate)
                        self.assertGreater(gap(M), pair.guard)

    def test_within_sector_gap_stays_open(self):
        for N in (16, 64, 256):
            for gamma in (-0.5, 0.0, 0.5, 0.8):
                for h in np.linspace(0.05, 3.0, 25):
                    with self.subTest(N=N, gamma=gamma, h=h):
                        pair = ground_state(build_hamiltonian(ModelParams(N, gamma, h)))
                        self.assertGreater(pair.sector_gap, pair.guard)

    def test_sector_ground_states_cross_below_sqrt_gamma(self):
        # exact level crossings between the two parity sectors for h < sqrt(gamma)
        splittings = []
        for h in np.linspace(0.01, 0.95, 400):
            M = build_hamiltonian(ModelParams(16, 0.5, h))
            even, odd = (sector_ground_state(s) for s in M.split_sectors())
            splitting = even.energy - odd.energy
            if abs(splitting) > max(even.guard, odd.guard):
                splittings.append((h, splitting))
        flips = [h for (h, a), (_, b) in zip(splittings, splittings[1:]) if a * b < 0]
        self.assertGreaterEqual(len(flips), 5)
        self.assertLess(max(flips), np.sqrt(0.5))

    def test_rayleigh_quotients_bound_the_ground_energy(self):
        M = build_hamiltonian(ModelParams(40, 0.3, 0.8))
        energy = ground_state(M).energy
        rng = np.random.default_rng(11)
        for v in rng.standard_normal((20, M.dimension)):
            self.assertGreaterEqual((v @ M.matvec(v)) / (v @ v), energy - 1e-12)

    def test_sign_is_canonical(self):
        v = canonical_sign(np.array([0.1, -0.9, 0.3]))
        np.testing.assert_array_equal(v, [-0.1, 0.9, -0.3])

    def test_krylov_agrees_with_tridiagonal(self):
        M = build_hamiltonian(ModelParams(200, 0.5, 0.7))
        for sector in M.split_sectors():
            with self.subTest(parity=sector.label):
                direct = sector_ground_state(sector, method=SolverMethod.TRIDIAGONAL)
                krylov = sector_ground_state(sector, method=SolverMethod.KRYLOV)
                self.assertAlmostEqual(direct.energy, krylov.energy, delta=1e-9)
                self.assertAlmostEqual(abs(direct.vector @ krylov.vector), 1.0, places=8)

    def test_relative_residual_of_exact_pair(self):
        M = build_hamiltonian(ModelParams(12, 0.2, 1.1))
        energies, vectors = np.linalg.eigh(M.to_dense())
        self.assertLess(relative_residual(M, energies[0], vectors[:, 0]), 1e-13)
        self.assertGreater(relative_residual(M, energies[0] + 1.0, vectors[:, 0]), 0.01)

    def test_nonpositive_tol_is_rejected(self):
        sector = build_hamiltonian(ModelParams(8, 0.0, 1.0)).sector(Parity.EVEN)
        with self.assertRaises(InvalidParametersError):
            sector_lowest(sector, tol=0.0)


class TestSpectrum(unittest.TestCase):
    def test_full_spectrum_matches_dense(self):
        M = build_hamiltonian(ModelParams(11, -0.2, 0.6))
        spectrum = full_spectrum(M)
        np.testing.assert_allclose(
            spectrum.energies, np.linalg.eigvalsh(M.to_dense()), atol=1e-11
        )
        np.testing.assert_allclose(
            spectrum.vectors.T @ spectrum.vectors, np.eye(M.dimension), atol=1e-12
        )

    def test_full_spectrum_rebuilds_the_matrix(self):
        for N, gamma, h in ((8, 0.5, 0.3), (33, -0.4, 1.0), (64, 0.2, 1.7)):
            with self.subTest(N=N):
                M = build_hamiltonian(ModelParams(N, gamma, h))
                spectrum = full_spectrum(M)
                rebuilt = (spectrum.vectors * spectrum.energies) @ spectrum.vectors.T
                np.testing.assert_allclose(rebuilt, M.to_dense(), atol=1e-11 * M.norm_inf())

    def test_spectrum_is_even_in_the_field(self):
        for N, gamma, h in ((12, 0.3, 0.7), (15, -0.5, 1.4)):
            with self.subTest(N=N):
                params = ModelParams(N, gamma, h)
                M = build_hamiltonian(params)
                m = DickeBasis(N).m_values
                # -2 h m on the diagonal becomes +2 h m
                reflected = BandedSpinMatrix(M.diag + 4 * h * m, M.offdiag2)
                np.testing.assert_allclose(
                    full_spectrum(reflected).energies, full_spectrum(M).energies, atol=1e-11
                )

    def test_parities_label_the_vectors(self):
        M = build_hamiltonian(ModelParams(6, 0.4, 0.4))
        spectrum = full_spectrum(M)
        for n, parity in enumerate(spectrum.parities):
            other = M.sector(Parity(1 - int(parity)))
            np.testing.assert_array_equal(other.restrict(spectrum.vectors[:, n]), 0.0)

    def test_dense_cap(self):
        M = build_hamiltonian(ModelParams(64, 0.0, 1.0))
        with self.assertRaises(DenseCapExceededError):
            full_spectrum(M, dense_cap=32)

    def test_lowest_energies(self):
        M = build_hamiltonian(ModelParams(20, 0.5, 1.5))
        levels = lowest_energies(M, 3)
        dense = np.linalg.eigvalsh(M.to_dense())[:3]
        np.testing.assert_allclose([e for e, _ in levels], dense, atol=1e-11)

    def test_diagonal_matrix(self):
        M = BandedSpinMatrix(np.array([3.0, 1.0, 2.0]), np.zeros(1))
        self.assertEqual(ground_state(M).energy, 1.0)
        self.assertEqual(gap(M), 1.0)


class TestGap(unittest.TestCase):
    def test_symmetric_phase_gap_approaches_harmonic_value(self):
        # 2 sqrt((h-1)(h-gamma)) at h = 2, gamma = 0.5
        value = gap(build_hamiltonian(ModelParams(2048, 0.5, 2.0)))
        self.assertAlmostEqual(value, 2 * np.sqrt(1.5), delta=5e-3)

    def test_broken_phase_doublet_closes_the_full_gap(self):
        M = build_hamiltonian(ModelParams(512, 0.0, 0.5))
        self.assertLess(gap(M), 1e-8)
        # the harmonic mode sits above the doublet, inside one sector
        self.assertAlmostEqual(gap(M, within_sector=True), 2 * np.sqrt(0.75), delta=0.02)

    def test_within_sector_gap_at_zero_field(self):
        N = 100
        value = gap(build_hamiltonian(ModelParams(N, 0.0, 0.0)), within_sector=True)
        self.assertAlmostEqual(value, 2 * (N - 1) / N, delta=0.02)

    def test_large_size_gaps(self):
        N = 2**14
        symmetric = gap(build_hamiltonian(ModelParams(N, 0.5, 2.0)))
        self.assertLess(abs(symmetric - 2 * np.sqrt(1.5)) / (2 * np.sqrt(1.5)), 0.01)
        zero_field = gap(build_hamiltonian(ModelParams(N, 0.0, 0.0)), within_sector=True)
        self.assertLess(abs(zero_field - 2) / 2, 0.01)
