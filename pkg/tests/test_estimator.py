import numpy as np
import pytest

from subspace_perturb.bounds import delta_of, epsilon_of, projection_bound
from subspace_perturb.errors import (
    DimensionMismatch,
    EchelonDegenerate,
    IdentifiabilityFailure,
    IndexOutOfRange,
    RankDeficient,
)
from subspace_perturb.estimator import (
    ProjectionSet,
    build_normal_matrix,
    echelon_alpha,
    estimate_subspace,
    lift,
    noiseless_projections,
    restrict_rows,
)
from subspace_perturb.golden import PATTERN, U_FULL, U_PROJ, V_PROJ
from subspace_perturb.linalg import SubspaceBasis, chordal_distance, hyperplane_normal
from subspace_perturb.sampling import SamplingPattern, gen_omega1, gen_omega2
from subspace_perturb.synth import make_noisy_projections, stream

# Frozen regression values recomputed from the golden matrices (see README
# for why they differ from the shipped reference constants).
GOLDEN_SIGMA_B = 0.6277532060175656
GOLDEN_D_G = 0.2946508405509429


def golden_noisy_set():
    z_list = tuple(v - u for v, u in zip(V_PROJ, U_PROJ))
    return ProjectionSet(pattern=PATTERN, v_list=V_PROJ, u_list=U_PROJ, z_list=z_list)


class TestRestrictRows:
    def test_leading_rows(self):
        np.testing.assert_array_equal(
            restrict_rows(U_FULL, (0, 1, 2)), [[1, 1], [1, 2], [1, 3]]
        )

    def test_middle_rows(self):
        np.testing.assert_array_equal(
            restrict_rows(U_FULL, (1, 2, 3)), [[1, 2], [1, 3], [1, 4]]
        )

    def test_all_rows(self):
        np.testing.assert_array_equal(restrict_rows(U_FULL, range(5)), U_FULL)

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            restrict_rows(U_FULL, (0, 5))


class TestLift:
    def test_scatter(self):
        np.testing.assert_array_equal(
            lift([1.0, 0.0, 0.0], (2, 3, 4), 5), [0, 0, 1, 0, 0]
        )

    def test_norm_preserved(self):
        out = lift([0.6, 0.8], (0, 4), 5)
        np.testing.assert_array_equal(out, [0.6, 0, 0, 0, 0.8])
        assert np.linalg.norm(out) == pytest.approx(1.0)

    def test_round_trip(self):
        b = np.array([0.3, -0.5, 0.2])
        omega = (1, 3, 4)
        np.testing.assert_array_equal(lift(b, omega, 6)[list(omega)], b)

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lift([1.0, 2.0], (0, 1, 2), 5)

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            lift([1.0], (7,), 5)


class TestBuildNormalMatrix:
    def test_noiseless_structure(self):
        ps = ProjectionSet(pattern=PATTERN, v_list=U_PROJ, u_list=U_PROJ)
        A = build_normal_matrix(ps, use="noiseless").matrix
        assert A.shape == (5, 3)
        np.testing.assert_allclose(np.linalg.norm(A, axis=0), 1.0, atol=1e-12)
        mask = PATTERN.as_mask()
        assert np.all(A[mask == 0] == 0.0)
        # every column annihilates the full basis: ker A^T contains span(U)
        assert np.linalg.norm(A.T @ U_FULL) <= 1e-9

    def test_noisy_sigma_b(self):
        B = build_normal_matrix(golden_noisy_set(), use="observed").matrix
        assert B.shape == (5, 3)
        sigma = np.linalg.svd(B, compute_uv=False)[-1]
        assert sigma == pytest.approx(GOLDEN_SIGMA_B, rel=1e-9)

    def test_rank_deficient_reports_index(self):
        bad = (U_PROJ[0], np.array([[1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]), U_PROJ[2])
        ps = ProjectionSet(pattern=PATTERN, v_list=bad)
        with pytest.raises(RankDeficient) as err:
            build_normal_matrix(ps)
        assert err.value.index == 1

    def test_sign_alignment(self):
        ps = golden_noisy_set()
        A = build_normal_matrix(ps, use="noiseless").matrix
        B = build_normal_matrix(ps, use="observed").matrix
        assert np.all(np.sum(A * B, axis=0) >= 0)


class TestEstimateSubspace:
    def test_noiseless_recovery(self):
        ps = ProjectionSet(pattern=PATTERN, v_list=U_PROJ)
        est = estimate_subspace(build_normal_matrix(ps))
        truth = SubspaceBasis.from_span(U_FULL)
        assert chordal_distance(truth, est) <= 1e-9

    def test_noisy_distance(self):
        est = estimate_subspace(build_normal_matrix(golden_noisy_set()))
        truth = SubspaceBasis.from_span(U_FULL)
        assert chordal_distance(truth, est) == pytest.approx(GOLDEN_D_G, rel=1e-9)

    def test_kernel_residual(self):
        normal = build_normal_matrix(golden_noisy_set())
        est = estimate_subspace(normal)
        assert np.linalg.norm(normal.matrix.T @ est.basis) <= 1e-9

    def test_duplicated_projections_unidentifiable(self):
        pattern = SamplingPattern(m=5, r=2, omegas=((0, 1, 2), (0, 1, 2), (2, 3, 4)))
        ps = noiseless_projections(U_FULL, pattern)
        normal = build_normal_matrix(ps)
        # parallel duplicate columns: numerical rank 2 < 3 (checked directly)
        values = np.linalg.svd(normal.matrix, compute_uv=False)
        assert np.sum(values > 1e-10) == 2
        with pytest.raises(IdentifiabilityFailure) as err:
            estimate_subspace(normal)
        assert err.value.rank == 2

    def test_agreement_with_observations(self):
        rng = stream(2024, 0)
        U = rng.standard_normal((9, 3))
        pattern = gen_omega2(9, 3)
        ps = make_noisy_projections(U, pattern, 1e-4, stream(2024, 1))
        est = estimate_subspace(build_normal_matrix(ps))
        for om, v in zip(pattern.omegas, ps.v_list):
            restricted = SubspaceBasis.from_span(restrict_rows(est.basis, om))
            observed = SubspaceBasis.from_span(v)
            assert chordal_distance(restricted, observed) <= 1e-7

    def test_noiseless_exactness_random(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            m = int(rng.integers(3, 31))
            r = int(rng.integers(1, min(5, m - 1) + 1))
            gen = gen_omega1 if rng.integers(2) else gen_omega2
            U = rng.standard_normal((m, r))
            ps = noiseless_projections(U, gen(m, r))
            est = estimate_subspace(build_normal_matrix(ps))
            assert chordal_distance(SubspaceBasis.from_span(U), est) <= 1e-8

    def test_column_sign_invariance(self):
        normal = build_normal_matrix(golden_noisy_set())
        base_sigma = np.linalg.svd(normal.matrix, compute_uv=False)[-1]
        base_est = estimate_subspace(normal)
        for j in range(normal.matrix.shape[1]):
            flipped = normal.matrix.copy()
            flipped[:, j] *= -1
            alt = type(normal)(matrix=flipped, pattern=normal.pattern)
            sigma = np.linalg.svd(alt.matrix, compute_uv=False)[-1]
            assert sigma == pytest.approx(base_sigma, abs=1e-12)
            assert chordal_distance(base_est, estimate_subspace(alt)) <= 1e-12


class TestEchelonAlpha:
    def test_already_echelon(self):
        np.testing.assert_allclose(
            echelon_alpha(np.array([[1.0, 0.0], [0.0, 1.0], [5.0, 7.0]])), [5, 7]
        )

    def test_hand_eliminated(self):
        # column ops on [[1,1],[1,2],[1,3]] give [I; (-1, 2)]; the null vector
        # (-1, 2, -1) checks out against both columns: -1+2-1 = -1+4-3 = 0
        alpha = echelon_alpha(np.array([[1.0, 1.0], [1.0, 2.0], [1.0, 3.0]]))
        np.testing.assert_allclose(alpha, [-1, 2], atol=1e-12)

    def test_null_vector_orthogonality(self):
        rng = np.random.default_rng(37)
        for _ in range(25):
            M = rng.standard_normal((5, 4))
            alpha = echelon_alpha(M)
            a_prime = np.concatenate([alpha, [-1.0]])
            assert np.linalg.norm(M.T @ a_prime) <= 1e-9 * np.linalg.norm(M)

    def test_matches_hyperplane_normal_up_to_sign(self):
        rng = np.random.default_rng(41)
        for _ in range(25):
            M = rng.standard_normal((4, 3))
            a_prime = np.concatenate([echelon_alpha(M), [-1.0]])
            a_unit = a_prime / np.linalg.norm(a_prime)
            b = hyperplane_normal(M)
            assert min(np.linalg.norm(a_unit - b), np.linalg.norm(a_unit + b)) <= 1e-9

    def test_degenerate_leading_block(self):
        with pytest.raises(EchelonDegenerate):
            echelon_alpha(np.array([[1.0, 2.0], [2.0, 4.0], [1.0, 1.0]]))


class TestProjectionSet:
    def test_consistency_check(self):
        with pytest.raises(ValueError):
            ProjectionSet(
                pattern=PATTERN,
                v_list=V_PROJ,
                u_list=U_PROJ,
                z_list=tuple(np.zeros((3, 2)) for _ in range(3)),
            )

    def test_shape_check(self):
        with pytest.raises(DimensionMismatch):
            ProjectionSet(pattern=PATTERN, v_list=(np.eye(3),) * 3)

    def test_count_check(self):
        with pytest.raises(DimensionMismatch):
            ProjectionSet(pattern=PATTERN, v_list=U_PROJ[:2])


class TestPerturbationDiagnostics:
    def test_normal_error_and_frobenius_gap(self):
        # after sign alignment each column error obeys eps*sqrt(2r)/delta and
        # the whole matrix gap obeys eps*sqrt(2r(m-r))/delta
        rng = np.random.default_rng(43)
        for _ in range(40):
            m = int(rng.integers(5, 12))
            r = int(rng.integers(1, 4))
            gen = gen_omega1 if rng.integers(2) else gen_omega2
            pattern = gen(m, r)
            U = rng.standard_normal((m, r))
            noise = 10.0 ** rng.uniform(-6, -2)
            ps = make_noisy_projections(U, pattern, noise, stream(int(rng.integers(1 << 31)), 1, 0))
            eps = epsilon_of(ps.z_list)
            delta = delta_of(ps.v_list)
            per_col = projection_bound(eps, delta, r)
            A = build_normal_matrix(ps, use="noiseless").matrix
            B = build_normal_matrix(ps, use="observed").matrix
            col_errors = np.linalg.norm(A - B, axis=0)
            assert np.all(col_errors <= per_col + 1e-12)
            assert np.linalg.norm(A - B) <= eps * np.sqrt(2 * r * (m - r)) / delta + 1e-12
