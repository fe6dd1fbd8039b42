import numpy as np
import pytest  # type: ignore
from scipy.special import gammaln  # type: ignore

from orthoplex.errors import QuadratureError
from orthoplex.util import log_integrate


def test_polynomial_exact():
    # int_0^2 x^3 dx = 4
    value = log_integrate(lambda x: 3 * np.log(x), 0.0, 2.0)
    assert value == pytest.approx(np.log(4.0), rel=1e-12)


def test_huge_exponent():
    # int_0^1 e^{n x} dx = (e^n - 1)/n, far beyond the float range for n = 5000
    n = 5000
    value = log_integrate(lambda x: n * x, 0.0, 1.0)
    assert value == pytest.approx(n - np.log(n), rel=1e-12)


def test_sharp_peak_with_breakpoint():
    # Gaussian of width 1e-3 centered off the panel grid
    n = 1e6
    value = log_integrate(lambda x: -0.5 * n * (x - 0.1234) ** 2, -1.0, 1.0, [0.1234])
    assert value == pytest.approx(0.5 * np.log(2 * np.pi / n), abs=1e-10)


def test_beta_integral():
    # int_0^1 x^a (1-x)^b dx = B(a+1, b+1)
    a, b = 30, 70
    value = log_integrate(lambda x: a * np.log(x) + b * np.log1p(-x), 0.0, 1.0)
    exact = gammaln(a + 1) + gammaln(b + 1) - gammaln(a + b + 2)
    assert value == pytest.approx(exact, abs=1e-10)


def test_empty_interval():
    with pytest.raises(QuadratureError):
        log_integrate(lambda x: x, 1.0, 1.0)


def test_budget_exceeded():
    with pytest.raises(QuadratureError):
        log_integrate(
            lambda x: np.where(x < 0.3, 0.0, 50.0), 0.0, 1.0, max_panels=20
        )


def test_nan_integrand():
    with pytest.raises(QuadratureError):
        log_integrate(lambda x: np.full_like(x, np.nan), 0.0, 1.0)
