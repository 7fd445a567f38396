import statistics
from dataclasses import replace

import pytest

from ratlogdet.bench import RunConfig, build_matrix, trial_seed
from ratlogdet.estimators import estimate_logdet
from ratlogdet.linalg import cholesky_logdet


def paired_errors(kernel, d, n, algorithms, trials, seed_base=0, value_index=0):
    """Signed estimate errors per algorithm over shared (matrix, probe) seeds."""
    errors = {a: [] for a in algorithms}
    for j in range(trials):
        seed = trial_seed(seed_base, value_index, j)
        cfg = RunConfig(kernel_family=kernel, n=n, d=d, seed=seed)
        M = build_matrix(cfg)
        exact = cholesky_logdet(M)
        for a in algorithms:
            est = estimate_logdet(M, replace(cfg, algorithm=a).estimator_config())
            errors[a].append(est.value - exact)
    return errors


def median_abs(values):
    return statistics.median(abs(v) for v in values)


@pytest.fixture(scope="session")
def matern_d5_errors():
    """20 paired seeds on Matérn-5/2, d=5, n=2000, default config."""
    return paired_errors("matern52", 5, 2000, ("r1", "r3", "slq"), trials=20)


@pytest.fixture(scope="session")
def rbf_d_sweep_errors():
    """Paired r3/SLQ errors at d in {1, 5, 20}, RBF, n=2000, 20 seeds."""
    return {
        d: paired_errors("rbf", d, 2000, ("r3", "slq"), trials=20, value_index=i)
        for i, d in enumerate((1, 5, 20))
    }


@pytest.fixture(scope="session")
def baseline_errors():
    """Paired r1/r3 errors for both kernel families at d=1, n=1000, 20 seeds."""
    return {
        kernel: paired_errors(kernel, 1, 1000, ("r1", "r3"), trials=20)
        for kernel in ("rbf", "matern52")
    }


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running statistical or benchmark test")
