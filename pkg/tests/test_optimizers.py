"""Unit tests for the derivative-free optimizers."""

import numpy as np
import pytest

from qocavqe.optimizers import OptimizerConfig, minimize


def bowl(x):
    return float(np.sum(x**2))


class TestConfig:
    def test_defaults(self):
        cfg = OptimizerConfig()
        assert cfg.method == "cobyla"
        assert cfg.max_evals == 100_000
        assert cfg.rho_begin == 0.5
        assert cfg.rho_end == 1e-6

    def test_validation(self):
        with pytest.raises(ValueError):
            OptimizerConfig(max_evals=0)
        with pytest.raises(ValueError):
            OptimizerConfig(rho_begin=1e-7, rho_end=1e-6)
        with pytest.raises(ValueError):
            OptimizerConfig(method="bfgs")


class TestCobyla:
    def test_quadratic_bowl_from_ones(self):
        # Standard sanity oracle: minimum at the origin.
        res = minimize(bowl, np.array([1.0, 1.0]), OptimizerConfig(max_evals=500))
        assert np.linalg.norm(res.x) <= 1e-4
        assert res.n_evals <= 500

    def test_shifted_anisotropic_quadratic(self):
        rng = np.random.default_rng(3)
        mat = rng.normal(size=(8, 8))
        quad = mat.T @ mat + np.eye(8)
        center = rng.normal(size=8)

        def f(x):
            d = x - center
            return float(d @ quad @ d)

        res = minimize(f, np.zeros(8), OptimizerConfig(max_evals=20000))
        assert np.linalg.norm(res.x - center) <= 1e-3

    def test_budget_respected_and_best_returned(self):
        calls = []

        def f(x):
            calls.append(x.copy())
            return bowl(x)

        res = minimize(f, np.ones(5), OptimizerConfig(max_evals=37))
        assert len(calls) == 37
        assert res.n_evals == 37
        assert res.status == "max_evals"
        assert res.fun == min(bowl(x) for x in calls)

    def test_nan_objective_aborts(self):
        def f(x):
            return np.nan if x[0] > 0.4 else bowl(x)

        with pytest.raises(FloatingPointError, match="non-finite"):
            minimize(f, np.zeros(2), OptimizerConfig(max_evals=100))

    def test_deterministic(self):
        rng = np.random.default_rng(4)
        mat = rng.normal(size=(6, 6))
        quad = mat.T @ mat + np.eye(6)

        def f(x):
            return float(x @ quad @ x + np.sin(x).sum())

        a = minimize(f, np.ones(6), OptimizerConfig(max_evals=2000))
        b = minimize(f, np.ones(6), OptimizerConfig(max_evals=2000))
        assert a.fun == b.fun
        np.testing.assert_array_equal(a.x, b.x)

    def test_monotone_best(self):
        seen = []

        def f(x):
            value = bowl(x)
            seen.append(value)
            return value

        res = minimize(f, np.ones(3), OptimizerConfig(max_evals=500))
        running = np.minimum.accumulate(seen)
        assert res.fun == running[-1]


class TestNelderMead:
    def test_bowl(self):
        res = minimize(
            bowl,
            np.array([1.0, 1.0]),
            OptimizerConfig(method="nelder-mead", max_evals=2000),
        )
        assert np.linalg.norm(res.x) <= 1e-5

    def test_escapes_coordinate_saddle(self):
        # f has a stationary point at the origin with descent only along
        # the diagonal; linear models see zero gradient here.
        def f(x):
            return float((x[0] - x[1]) ** 2 - (x[0] + x[1]) ** 2 + (x @ x) ** 2 / 4)

        res = minimize(
            f, np.zeros(2), OptimizerConfig(method="nelder-mead", max_evals=2000)
        )
        assert res.fun < -0.9  # well below f(0) = 0

    def test_budget(self):
        res = minimize(
            bowl, np.ones(4), OptimizerConfig(method="nelder-mead", max_evals=25)
        )
        assert res.n_evals == 25
