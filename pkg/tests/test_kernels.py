import numpy as np
import pytest

from ratlogdet.kernels import KernelSpec, build_covariance, kernel_value, sample_index_points
from ratlogdet.linalg import NotPositiveDefinite, Rng, cholesky


class TestSampleIndexPoints:
    def test_shape(self):
        pts = sample_index_points(3, 2, Rng(0))
        assert pts.shape == (3, 2)

    def test_moments(self):
        pts = sample_index_points(10**5, 1, Rng(1)).ravel()
        stderr = 1.0 / np.sqrt(pts.size)
        assert abs(pts.mean()) <= 3 * stderr
        # var of sample variance ~ 2/n for normals
        assert abs(pts.var() - 1.0) <= 3 * np.sqrt(2.0 / pts.size)

    def test_determinism(self):
        np.testing.assert_array_equal(
            sample_index_points(10, 3, Rng(7)), sample_index_points(10, 3, Rng(7))
        )

    def test_single_scalar(self):
        assert sample_index_points(1, 1, Rng(2)).shape == (1, 1)

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            sample_index_points(0, 1, Rng(0))


class TestKernelValue:
    def test_at_zero_distance(self):
        for fam in ("rbf", "matern52"):
            spec = KernelSpec(fam, amplitude=1.5)
            assert kernel_value(spec, [0.3, 0.4], [0.3, 0.4]) == pytest.approx(1.5**2)

    def test_rbf_unit_distance(self):
        spec = KernelSpec("rbf")
        assert kernel_value(spec, [0.0], [1.0]) == pytest.approx(0.6065306597, abs=1e-10)

    def test_matern_unit_distance(self):
        spec = KernelSpec("matern52")
        expected = (1 + np.sqrt(5) + 5 / 3) * np.exp(-np.sqrt(5))
        assert expected == pytest.approx(0.5239941088, abs=1e-10)
        assert kernel_value(spec, [0.0], [1.0]) == pytest.approx(expected, rel=1e-14)

    def test_symmetry_exact(self):
        spec = KernelSpec("matern52")
        rng = Rng(3)
        x, y = rng.normal(4), rng.normal(4)
        assert kernel_value(spec, x, y) == kernel_value(spec, y, x)

    def test_bounded_by_amplitude_squared(self):
        for fam in ("rbf", "matern52"):
            spec = KernelSpec(fam, amplitude=2.0)
            rng = Rng(5)
            for _ in range(50):
                x, y = rng.normal(3), rng.normal(3)
                v = kernel_value(spec, x, y)
                assert 0 < v < 4.0

    def test_monotone_decay(self):
        grid = np.linspace(0.0, 5.0, 200)
        for fam in ("rbf", "matern52"):
            spec = KernelSpec(fam)
            vals = [kernel_value(spec, [0.0], [r]) for r in grid]
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            kernel_value(KernelSpec(), [0.0], [0.0, 1.0])


class TestBuildCovariance:
    def test_single_point(self):
        spec = KernelSpec("rbf", amplitude=2.0, jitter=1e-3)
        K = build_covariance(spec, np.zeros((1, 1)))
        assert K.shape == (1, 1)
        assert K[0, 0] == pytest.approx(4.0 + 1e-3)

    def test_duplicate_points_identical_rows(self):
        spec = KernelSpec("rbf", jitter=0.0)
        pts = np.array([[0.5], [0.5], [1.5]])
        K = build_covariance(spec, pts)
        np.testing.assert_allclose(K[0], K[1])

    def test_jittered_rbf_is_spd(self):
        spec = KernelSpec("rbf", jitter=1e-6)
        pts = sample_index_points(100, 1, Rng(4))
        cholesky(build_covariance(spec, pts))  # must not raise

    def test_matches_scalar_kernel(self):
        spec = KernelSpec("matern52", jitter=1e-4)
        pts = sample_index_points(20, 3, Rng(9))
        K = build_covariance(spec, pts)
        for i in range(0, 20, 5):
            for j in range(0, 20, 7):
                expected = kernel_value(spec, pts[i], pts[j]) + (1e-4 if i == j else 0.0)
                assert K[i, j] == pytest.approx(expected, abs=1e-10)

    def test_exact_symmetry(self):
        spec = KernelSpec("rbf")
        pts = sample_index_points(50, 5, Rng(10))
        K = build_covariance(spec, pts)
        np.testing.assert_array_equal(K, K.T)

    @pytest.mark.slow
    @pytest.mark.parametrize("family", ["rbf", "matern52"])
    @pytest.mark.parametrize("d", [1, 5])
    def test_spd_across_seeds(self, family, d):
        spec = KernelSpec(family, jitter=1e-6)
        for seed in range(100):
            pts = sample_index_points(500, d, Rng(seed))
            try:
                cholesky(build_covariance(spec, pts))
            except NotPositiveDefinite:
                pytest.fail(f"{family} d={d} seed={seed} not SPD at jitter 1e-6")
