import numpy as np
import pytest  # type: ignore
from scipy.special import gammaln  # type: ignore

from orthoplex.errors import ValidationError
from orthoplex.model import (
    MacroTotals,
    ModelPoint,
    closed_form_log_Z_center,
    entropy_interior,
    entropy_lower_bound,
    entropy_n,
    log_partition_interior,
    log_Z,
    log_Z_boundary,
    log_Z_interior,
    log_Z_totals,
)
from orthoplex.util import log_integrate


@pytest.mark.parametrize(
    "n,m,rho,expected",
    [(2, 0.0, 1.0, 1.0), (3, 0.0, 1.0, 4.5), (4, 0.0, 1.0, 20.0), (3, 1.0, 1.0, 4.5)],
)
def test_small_exact_values(n, m, rho, expected) -> None:
    assert log_Z(n, ModelPoint(m, rho)).value == pytest.approx(expected, rel=1e-12)


def test_hand_evaluated_off_center() -> None:
    # n = 3, X = 2, Y = 1: 1/2 (3 Y + 3 X) = 4.5 for any split with N = 3
    assert log_Z(3, ModelPoint(1 / 3, 1.0)).value == pytest.approx(4.5, rel=1e-12)
    # n = 4, X = 3, Y = 1: 1/2 (4 * 1/2 + 6 * 3 + 4 * 9/2) = 19
    assert log_Z(4, ModelPoint(0.5, 1.0)).value == pytest.approx(19.0, rel=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 10, 57, 400])
@pytest.mark.parametrize("rho", [0.5, 1.0, 3.0])
def test_closed_form_center(n, rho) -> None:
    exact = log_Z_interior(n, ModelPoint(0.0, rho)).log_value
    assert closed_form_log_Z_center(n, rho).log_value == pytest.approx(exact, rel=1e-12)


def test_symmetry() -> None:
    for n in [3, 10, 100]:
        p = ModelPoint(0.37, 1.2)
        assert log_Z(n, p).log_value == pytest.approx(
            log_Z(n, p.reflect()).log_value, rel=1e-13
        )


def test_boundary() -> None:
    assert log_Z_boundary(5, 2.0).log_value == pytest.approx(
        4 * np.log(2.0) - gammaln(5), rel=1e-14
    )
    with pytest.raises(ValidationError):
        log_Z_boundary(5, 0.0)
    with pytest.raises(ValidationError):
        log_Z_interior(5, ModelPoint(1.0, 1.0))


def test_totals_dispatch() -> None:
    assert log_Z_totals(MacroTotals(0.0, 4.0, 4)).value == pytest.approx(20.0)
    assert log_Z_totals(MacroTotals(3.0, 3.0, 3)).value == pytest.approx(4.5)
    # interior Z_3(M, N) = 3 N / 2
    assert log_Z_totals(MacroTotals(0.2, 1.0, 3)).value == pytest.approx(1.5)


@pytest.mark.parametrize("n", [1, 0, 2.5, True])
def test_invalid_size(n) -> None:
    with pytest.raises(ValidationError):
        log_Z(n, ModelPoint(0.0, 1.0))


def test_large_n_finite() -> None:
    value = log_Z(100000, ModelPoint(0.3, 1.0)).log_value
    assert np.isfinite(value)
    assert value / 100000 == pytest.approx(1 + np.log(1 + np.sqrt(0.91)), abs=1e-3)


@pytest.mark.parametrize("n", range(3, 16))
def test_magnetization_integral(n) -> None:
    # int_{-1}^{1} Z_n(M, 1) dM = (2^n - 2) / (n - 1)!
    value = log_integrate(
        lambda x: log_partition_interior(n, x / n, 1.0 / n), -1.0, 1.0
    )
    exact = np.log(2.0 ** n - 2) - gammaln(n)
    assert value == pytest.approx(exact, rel=1e-8)


def test_vectorized_matches_scalar() -> None:
    m = np.array([-0.5, 0.0, 0.25])
    rho = np.array([1.0, 2.0, 0.5])
    values = entropy_interior(20, m, rho)
    assert values.shape == (3,)
    for mi, ri, v in zip(m, rho, values):
        assert v == pytest.approx(entropy_n(20, ModelPoint(mi, ri)), rel=1e-14)


def test_entropy_converges() -> None:
    grid = np.linspace(-0.8, 0.8, 33)
    limit = 1 + np.log(1 + np.sqrt(1 - grid ** 2))
    errors = [
        np.max(np.abs(entropy_interior(n, grid, 1.0) - limit))
        for n in [100, 200, 400, 800, 1600]
    ]
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 0.05


def test_lower_bound() -> None:
    for n in [3, 10, 200]:
        for m in [-0.5, 0.0, 0.7]:
            p = ModelPoint(m, 1.0)
            assert entropy_lower_bound(n, p) <= entropy_n(n, p) + 1e-14
