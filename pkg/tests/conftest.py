import numpy as np
import pytest

from wiener.domain_maps import sqrt_star_theta
from wiener.fourier_quad import synthesize
from wiener.modal import BasisKind, ModalCoefficients


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def weighted_test_function(rng, level, K):
    """f = sqrt*(w^(level)) times a random degree-K Psi^(level) series, with its generating coefficients.

    Such f has finite psi expansions for every integer parameter up to ``level``.
    """
    p = ModalCoefficients.from_natural(BasisKind.Psi, level, random_complex(rng, 2 * K + 1))

    def f(theta):
        return sqrt_star_theta(level, theta) * synthesize(p, theta)

    return f, p


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
