import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state
from orthosearch.bloch import (
    bloch_to_state,
    discrete_fs_length,
    efficiencies,
    fs_path_length,
    geodesic_length,
    geodesic_path,
    geodesic_state,
    geodesic_time,
    larmor_residual,
    spectral_norm,
    state_to_bloch,
    uzdin_bloch,
)
from orthosearch.errors import DegenerateOverlap, DimensionMismatch, EmptyTrajectory
from orthosearch.hamiltonians import build_opt, build_uzdin, uzdin_state
from orthosearch.linalg import fidelity, ket
from orthosearch.propagator import PropagationConfig, Trajectory, evolve_timedep, stationary_trajectory

UZDIN_LENGTH = 3.3295836107826755


@pytest.fixture(scope="module")
def uzdin_traj():
    return evolve_timedep(build_uzdin(1.0, 1.0), ket(0), PropagationConfig(dt=1e-4))


unit_vectors = st.tuples(st.floats(0, math.pi), st.floats(-math.pi, math.pi)).map(
    lambda a: np.array([math.sin(a[0]) * math.cos(a[1]), math.sin(a[0]) * math.sin(a[1]), math.cos(a[0])])
)


class TestBlochVectors:
    @pytest.mark.parametrize(
        "psi, a",
        [
            (ket(0), (0, 0, 1)),
            (np.array([1, 1]) / math.sqrt(2), (1, 0, 0)),
            (uzdin_state(1.0, 1.0, math.pi / 4), (math.sqrt(0.5), math.sqrt(0.5), 0)),
        ],
    )
    def test_examples(self, psi, a):
        np.testing.assert_allclose(state_to_bloch(psi), a, atol=1e-15)

    def test_analytic_matches_state(self):
        for t in np.linspace(0, 2, 9):
            np.testing.assert_allclose(uzdin_bloch(2.0, 3.0, t), state_to_bloch(uzdin_state(2.0, 3.0, t)), atol=1e-14)

    def test_qubit_only(self):
        with pytest.raises(DimensionMismatch):
            state_to_bloch(ket(0, 3))

    @given(unit_vectors)
    @settings(max_examples=100, deadline=None)
    def test_round_trip(self, a):
        np.testing.assert_allclose(state_to_bloch(bloch_to_state(a)), a, atol=1e-12)

    def test_fidelity_relation(self, rng):
        for _ in range(200):
            a, b = random_state(rng), random_state(rng)
            assert fidelity(a, b) == pytest.approx((1 + state_to_bloch(a) @ state_to_bloch(b)) / 2, abs=1e-12)


class TestGeodesics:
    def test_lengths(self):
        assert geodesic_length(ket(0), ket(0)) == 0.0
        assert geodesic_length(ket(0), ket(1)) == pytest.approx(math.pi)
        assert geodesic_length(ket(0), np.array([1, 1]) / math.sqrt(2)) == pytest.approx(math.pi / 2)

    def test_endpoints(self, rng):
        a, b = random_state(rng, 3), random_state(rng, 3)
        assert fidelity(geodesic_state(a, b, 0.0), a) == pytest.approx(1.0, abs=1e-14)
        assert fidelity(geodesic_state(a, b, math.pi), b) == pytest.approx(1.0, abs=1e-14)

    def test_normalized_along_path(self, rng):
        a, b = random_state(rng, 4), random_state(rng, 4)
        path = geodesic_path(a, b, 101)
        np.testing.assert_allclose(np.linalg.norm(path, axis=1), 1.0, atol=1e-14)

    @pytest.mark.parametrize("c", [0.3, 0.6, 1 / math.sqrt(2)])
    def test_discrete_length(self, c):
        b = np.array([c, math.sqrt(1 - c * c) * np.exp(0.3j)])
        assert discrete_fs_length(geodesic_path(ket(0), b)) == pytest.approx(2 * math.acos(c), abs=1e-6)

    def test_orthogonal_needs_phase(self):
        with pytest.raises(DegenerateOverlap):
            geodesic_state(ket(0), ket(1), 0.4)
        assert discrete_fs_length(geodesic_path(ket(0), ket(1), phase=0.0)) == pytest.approx(math.pi, abs=1e-6)

    def test_time_parameter(self):
        np.testing.assert_allclose(geodesic_time([0.0, math.pi / 2, math.pi]), [0.0, 0.5, 1.0], atol=1e-15)
        assert np.all(np.diff(geodesic_time(np.linspace(0, math.pi, 50))) > 0)


class TestPathLength:
    def test_stationary_antipodal(self):
        h = build_opt(ket(0), ket(1), 1.0)
        tr = stationary_trajectory(h, ket(0), math.pi / 2)
        assert fs_path_length(tr) == pytest.approx(math.pi, abs=1e-12)

    def test_uzdin(self, uzdin_traj):
        s = fs_path_length(uzdin_traj)
        assert s == pytest.approx(UZDIN_LENGTH, abs=1e-6)
        assert s > math.pi

    def test_empty(self):
        tr = Trajectory(np.array([0.0]), np.array([ket(0)]), np.array([1.0]))
        with pytest.raises(EmptyTrajectory):
            fs_path_length(tr)

    def test_not_shorter_than_geodesic(self, uzdin_traj):
        assert fs_path_length(uzdin_traj) >= geodesic_length(uzdin_traj.states[0], uzdin_traj.final) - 1e-8


class TestEfficiencies:
    def test_stationary(self):
        h = build_opt(ket(0), ket(1), 1.0)
        rep = efficiencies(stationary_trajectory(h, ket(0), math.pi / 2), h)
        assert rep.geodesic_efficiency == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(rep.speed_efficiency_profile, 1.0, atol=1e-12)

    def test_uzdin(self, uzdin_traj):
        rep = efficiencies(uzdin_traj, build_uzdin(1.0, 1.0))
        assert rep.geodesic_efficiency == pytest.approx(math.pi / UZDIN_LENGTH, abs=1e-6)
        np.testing.assert_allclose(rep.speed_efficiency_profile, 1.0, atol=1e-6)
        assert np.all(rep.speed_efficiency_profile <= 1 + 1e-9)

    def test_spectral_norm_ignores_trace(self):
        assert spectral_norm(np.diag([5.0, 3.0])) == pytest.approx(1.0)


class TestLarmor:
    @pytest.mark.parametrize("omega0, nu0, tol", [(1.0, 0.0, 1e-12), (1.0, 1.0, 1e-10), (2.0, 3.0, 1e-10)])
    def test_residual(self, omega0, nu0, tol):
        assert larmor_residual(omega0, nu0, np.linspace(0, math.pi / 2, 1000)) < tol

    def test_detects_wrong_field(self):
        assert larmor_residual(1.0, 1.0, np.linspace(0, 1, 10)) < 1e-10
        with pytest.raises(ValueError):
            larmor_residual(1.0, 1.0, [0.0, 1.0])
