import numpy as np
import pytest  # type: ignore

from orthoplex.errors import ValidationError
from orthoplex.model import ModelPoint
from orthoplex.thermo import (
    FieldParams,
    ensemble_map,
    entropy_slice,
    entropy_slice_derivative,
    grand_entropy,
    grand_partition_finite,
    inverse_map,
    limiting_entropy,
    limiting_entropy_sqrt_form,
)


@pytest.fixture
def points():
    rng = np.random.default_rng(11)
    rho = rng.uniform(0.2, 3.0, size=20)
    t = rng.uniform(-0.95, 0.95, size=20)
    return [ModelPoint(float(x * r), float(r)) for x, r in zip(t, rho)]


@pytest.mark.parametrize("beta,mu", [(0.0, 0.0), (1.0, 1.0), (-2.0, 1.0)])
def test_invalid_fields(beta, mu) -> None:
    with pytest.raises(ValidationError):
        FieldParams(beta, mu)
    assert grand_entropy((beta, mu)) == np.inf


def test_grand_entropy() -> None:
    assert grand_entropy(FieldParams(0.0, 1.0)) == pytest.approx(np.log(2))
    assert grand_entropy((0.5, 1.0)) == pytest.approx(np.log(1 / 1.5 + 1 / 0.5))


def test_positive_probability() -> None:
    params = FieldParams(0.5, 1.0)
    assert params.positive_probability == pytest.approx((1 / 1.5) / params.q)
    assert FieldParams(0.0, 3.0).positive_probability == 0.5


def test_grand_partition_small() -> None:
    # n = 2: q^2 - a^-2 - b^-2 = 2 / (a b)
    params = FieldParams(0.3, 1.0)
    exact = np.log(2 / (1.3 * 0.7))
    assert grand_partition_finite(2, params).log_value == pytest.approx(exact)


def test_grand_partition_against_interior_integral() -> None:
    # n = 3: Z_3(M, N) = 3N/2 on |M| < N, so the Laplace transform is
    # 3 (a + b) / (a^2 b^2)
    a, b = 1.3, 0.7
    params = FieldParams((a - b) / 2, (a + b) / 2)
    exact = np.log(3 * (a + b) / (a * a * b * b))
    assert grand_partition_finite(3, params).log_value == pytest.approx(exact)


def test_grand_partition_rate() -> None:
    params = FieldParams(-0.4, 0.9)
    n = 100000
    assert grand_partition_finite(n, params).log_value / n == pytest.approx(
        grand_entropy(params), rel=1e-12
    )


def test_limiting_entropy_center() -> None:
    assert limiting_entropy(ModelPoint(0.0, 1.0)) == pytest.approx(1 + np.log(2))


def test_limiting_entropy_forms_agree(points) -> None:
    for p in points:
        assert limiting_entropy(p) == pytest.approx(
            limiting_entropy_sqrt_form(p), rel=1e-12
        )


def test_limiting_entropy_boundary() -> None:
    assert limiting_entropy(ModelPoint(1.0, 1.0), extend_boundary=True) == 1.0
    assert limiting_entropy(ModelPoint(-1.0, 1.0), extend_boundary=True) == 1.0
    with pytest.raises(ValidationError):
        limiting_entropy(ModelPoint(1.0, 1.0))
    with pytest.raises(ValidationError):
        limiting_entropy(ModelPoint(2.0, 2.0), extend_boundary=True)


def test_ensemble_map_center() -> None:
    params = ensemble_map(ModelPoint(0.0, 1.0))
    assert params.beta == 0.0
    assert params.mu == pytest.approx(1.0)


def test_ensemble_map_round_trip(points) -> None:
    for p in points:
        back = inverse_map(ensemble_map(p))
        assert back.m == pytest.approx(p.m, abs=1e-10)
        assert back.rho == pytest.approx(p.rho, abs=1e-10)


def test_ensemble_map_sign() -> None:
    # positive magnetization needs a negative field
    assert ensemble_map(ModelPoint(0.5, 1.0)).beta < 0
    assert ensemble_map(ModelPoint(-0.5, 1.0)).beta > 0


def test_entropy_slice() -> None:
    assert entropy_slice(0.0) == pytest.approx(1 + np.log(2))
    assert np.all(entropy_slice(np.array([-1.0, 1.0])) == 1.0)
    with pytest.raises(ValidationError):
        entropy_slice(1.5)


def test_entropy_slice_derivative() -> None:
    m = np.linspace(-0.95, 0.95, 39)
    h = 1e-6
    numeric = (entropy_slice(m + h) - entropy_slice(m - h)) / (2 * h)
    assert np.allclose(entropy_slice_derivative(m), numeric, atol=1e-7)


def test_entropy_slice_strictly_concave() -> None:
    m = np.arange(-0.99, 0.99 + 1e-9, 1e-3)
    s = entropy_slice(m)
    assert np.all(s[:-2] - 2 * s[1:-1] + s[2:] < 0)
