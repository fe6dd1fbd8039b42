import numpy as np
import pytest  # type: ignore

from orthoplex.errors import BoundaryMaximumError, ClassificationError, DomainError
from orthoplex.interaction import (
    CurieWeiss,
    Expression,
    Linear,
    Zero,
    analyze_maximizers,
    classify,
    classify_type,
    curie_weiss_maximizer,
    derivative_sign_check,
    find_global_maxima,
    limiting_mixture,
    log_C_k,
    parse_expression,
    psi,
    psi_derivative,
    psi_supremum,
    rate_function,
)
from orthoplex.thermo import half_constrained_entropy


def _entropy_slice(m: float) -> float:
    return 1 + np.log1p(np.sqrt(1 - m * m))


def test_psi_values() -> None:
    assert psi(Zero(), 0.0) == pytest.approx(1 + np.log(2))
    assert psi(Zero(), 1.0) == pytest.approx(1.0)
    assert psi(CurieWeiss(1.0), 0.5) == pytest.approx(0.125 + _entropy_slice(0.5))
    with pytest.raises(DomainError):
        psi(Zero(), 1.5)


def test_psi_derivatives_at_center() -> None:
    assert psi_derivative(Zero(), 0.0, 1) == pytest.approx(0.0, abs=1e-20)
    assert psi_derivative(Zero(), 0.0, 2) == pytest.approx(-0.5, rel=1e-12)
    assert psi_derivative(Zero(), 0.0, 4) == pytest.approx(-2.25, rel=1e-12)
    assert psi_derivative(CurieWeiss(0.4), 0.0, 2) == pytest.approx(-0.1, rel=1e-10)
    with pytest.raises(DomainError):
        psi_derivative(Zero(), 1.0, 1)


@pytest.mark.parametrize("beta_j", [0.2, 0.4])
def test_curie_weiss_high_temperature(beta_j: float) -> None:
    (record,) = analyze_maximizers(CurieWeiss(beta_j))
    assert record.m_star == pytest.approx(0.0, abs=1e-9)
    assert record.type_k == 1
    assert record.deriv_2k == pytest.approx(beta_j - 0.5, rel=1e-8)
    assert curie_weiss_maximizer(beta_j) == 0.0


@pytest.mark.parametrize("beta_j", [0.75, 1.0, 2.0])
def test_curie_weiss_low_temperature(beta_j: float) -> None:
    g = CurieWeiss(beta_j)
    records = analyze_maximizers(g)
    expected = curie_weiss_maximizer(beta_j)
    assert [r.m_star for r in records] == pytest.approx(
        [-expected, expected], rel=1e-9
    )
    assert all(r.type_k == 1 for r in records)
    assert records[0].weight_W == pytest.approx(records[1].weight_W, rel=1e-9)
    assert records[0].psi_value == pytest.approx(records[1].psi_value, rel=1e-12)

    mix = limiting_mixture(g, records)
    assert mix.maximal_type == 1
    assert mix.weights == pytest.approx([0.5, 0.5], rel=1e-9)
    assert mix.components[0].params.beta == pytest.approx(
        -mix.components[1].params.beta, rel=1e-9
    )
    assert not mix.excluded


def test_curie_weiss_maximizer_value() -> None:
    assert curie_weiss_maximizer(1.0) == pytest.approx(0.7861513778, rel=1e-9)
    w = np.sqrt(1 - curie_weiss_maximizer(1.0) ** 2)
    assert w * (1 + w) == pytest.approx(1.0)


def test_critical_curie_weiss_is_type_two() -> None:
    g = CurieWeiss(0.5)
    c = classify(g, 0.0)
    assert c.k == 2
    assert c.m_star == pytest.approx(0.0, abs=1e-12)
    assert c.deriv_2k == pytest.approx(-2.25, rel=1e-10)
    assert classify_type(g, 0.0) == 2
    with pytest.raises(ClassificationError):
        classify_type(g, 0.0, k_max=1)


def test_zero_interaction_weight() -> None:
    (record,) = analyze_maximizers(Zero())
    assert record.type_k == 1
    assert record.deriv_2k == pytest.approx(-0.5, rel=1e-10)
    assert record.weight_W == pytest.approx(2 * np.pi ** 1.5 / np.e, rel=1e-10)
    assert np.exp(log_C_k(0.0, 1)) == pytest.approx(
        np.pi * np.sqrt(2 * np.pi) / np.e, rel=1e-12
    )
    assert record.psi_value == pytest.approx(1 + np.log(2))


def test_log_C_k_symmetric() -> None:
    for k in (1, 2, 3):
        assert log_C_k(0.3, k) == pytest.approx(log_C_k(-0.3, k), rel=1e-12)


def test_boundary_maximum() -> None:
    with pytest.raises(BoundaryMaximumError) as info:
        find_global_maxima(Linear(-1000.0), tol_value=1e-3)
    assert info.value.location == 1.0


def test_expression_matches_polynomial() -> None:
    expr = Expression(parse_expression("0.5*m^2"))
    (a, b) = analyze_maximizers(expr)
    (c, d) = analyze_maximizers(CurieWeiss(1.0))
    assert [a.m_star, b.m_star] == pytest.approx([c.m_star, d.m_star], rel=1e-7)
    assert a.weight_W == pytest.approx(c.weight_W, rel=1e-6)


def test_derivative_sign_check() -> None:
    for g in (Zero(), CurieWeiss(1.0), CurieWeiss(0.4)):
        for record in analyze_maximizers(g):
            check = derivative_sign_check(g, record)
            assert check.ok
            assert set(check.derivatives) == set(check.steps)


def test_rate_function() -> None:
    g = Zero()
    assert rate_function(g, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert rate_function(g, 0.4) == pytest.approx(0.042638, abs=1e-6)
    assert rate_function(g, 0.5) == pytest.approx(
        np.log(2) - np.log1p(np.sqrt(0.75)), rel=1e-10
    )
    assert rate_function(g, 1.0) == pytest.approx(np.log(2), rel=1e-10)
    assert rate_function(g, 1.5) == float("inf")

    values = rate_function(g, np.array([-2.0, -0.4, 0.4]))
    assert values[0] == float("inf")
    assert values[1] == pytest.approx(values[2])


def test_rate_function_vanishes_at_maximizers() -> None:
    g = CurieWeiss(1.0)
    supremum = psi_supremum(g)
    for record in analyze_maximizers(g):
        value = rate_function(g, record.m_star, supremum)
        assert value == pytest.approx(0.0, abs=1e-12)
    assert rate_function(g, 0.0, supremum) > 0


def test_maximizer_next_to_the_edge() -> None:
    # psi' vanishes at w (1 + w) = 1/100, inside the last grid cell
    g = Linear(-100.0)
    (m_star,) = find_global_maxima(g)
    assert m_star == pytest.approx(0.99995098, rel=1e-7)
    assert psi(g, m_star) > psi(g, 1.0)
    assert rate_function(g, 1.0) > 1e-3
    assert rate_function(g, m_star) == pytest.approx(0.0, abs=1e-9)

    (record,) = analyze_maximizers(g)
    assert record.type_k == 1
    assert record.m_star == pytest.approx(m_star, rel=1e-12)

    (mirrored,) = find_global_maxima(Linear(100.0))
    assert mirrored == pytest.approx(-m_star, rel=1e-9)


def test_field_selects_one_maximizer() -> None:
    (m_star,) = find_global_maxima(CurieWeiss(1.0, h=0.1))
    assert 0 < m_star < 1
    assert m_star > curie_weiss_maximizer(1.0)
    (mirrored,) = find_global_maxima(CurieWeiss(1.0, h=-0.1))
    assert mirrored == pytest.approx(-m_star, rel=1e-9)


def test_linear_mixture_matches_tilted_entropy() -> None:
    value, argmax = half_constrained_entropy(1.0)
    mix = limiting_mixture(Linear(1.0))
    (component,) = mix.components
    assert component.weight == pytest.approx(1.0)
    assert component.m_star == pytest.approx(argmax, rel=1e-7)
    assert psi_supremum(Linear(1.0)) == pytest.approx(value, rel=1e-10)


@pytest.mark.parametrize(
    "g", [Zero(), CurieWeiss(1.0), CurieWeiss(0.4, h=0.2), Linear(-100.0)]
)
def test_rate_function_positive_off_maximizers(g) -> None:
    maximizers = find_global_maxima(g)
    supremum = psi_supremum(g)
    points = np.random.default_rng(7).uniform(-1.0, 1.0, 200)
    away = [
        m for m in points if min(abs(m - m_star) for m_star in maximizers) > 1e-3
    ]
    assert len(away) >= 100
    assert np.all(rate_function(g, np.array(away[:100]), supremum) > 0)
