import numpy as np
import pytest  # type: ignore

from orthoplex.bessel import AngularEntropy, log_K, log_Z_bessel
from orthoplex.errors import ValidationError
from orthoplex.model import ModelPoint, log_Z_interior
from orthoplex.thermo import limiting_entropy


@pytest.mark.parametrize("n", [3, 5, 10, 20, 40])
def test_matches_exact_partition(n: int) -> None:
    for rho in np.linspace(0.5, 2.0, 5):
        for fraction in np.linspace(-0.8, 0.8, 5):
            point = ModelPoint(float(fraction * rho), float(rho))
            exact = log_Z_interior(n, point).log_value
            bessel = log_Z_bessel(n, point).log_value
            assert abs(np.expm1(bessel - exact)) < 1e-6, (n, point)


def test_two_sites() -> None:
    assert log_Z_bessel(2, ModelPoint(0.0, 1.0)).log_value == pytest.approx(
        0.0, abs=1e-9
    )


def test_log_K_small() -> None:
    # K_2 = 4 / (e pi^2)
    assert log_K(2) == pytest.approx(np.log(4 / (np.e * np.pi ** 2)), rel=1e-12)


def test_log_K_settles() -> None:
    limit = 1 - 0.5 * np.log(2) - 2 * np.log(np.pi)
    assert log_K(10 ** 6) == pytest.approx(limit, abs=1e-5)


def test_angular_entropy_on_axis() -> None:
    for m in (-0.6, 0.0, 0.3):
        value = AngularEntropy(m)(0.0, 0.0)
        assert value == pytest.approx(limiting_entropy(ModelPoint(m, 1.0)), rel=1e-12)
    a, b = AngularEntropy(0.2, 1.0).amplitudes
    assert a * a + b * b == pytest.approx(1.0)
    assert a * a - b * b == pytest.approx(0.2)


def test_boundary_rejected() -> None:
    with pytest.raises(ValidationError):
        log_Z_bessel(10, ModelPoint(1.0, 1.0))
