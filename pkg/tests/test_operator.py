import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from betajacobi.errors import DomainError
from betajacobi.operator import (
    CaseTag,
    OperatorConfig,
    Polynomial,
    classify,
    evaluate,
    evaluate_grid,
    monomial_image,
    operator_matrix,
)

from conftest import X_GRID, grid_configs


@pytest.mark.parametrize(
    "alpha, beta, tag",
    [
        (-1, -1, CaseTag.BOTH_MINUS_ONE),
        (0, 0, CaseTag.REGULAR),
        (-1, 0.5, CaseTag.ALPHA_MINUS_ONE),
        (0.5, -1, CaseTag.BETA_MINUS_ONE),
        (-1 + 5e-13, -1 - 5e-13, CaseTag.BOTH_MINUS_ONE),
    ],
)
def test_classify(alpha, beta, tag):
    params = classify(alpha, beta)
    assert params.case_tag is tag
    if tag is CaseTag.BOTH_MINUS_ONE:
        assert params.alpha == -1.0 and params.beta == -1.0


@pytest.mark.parametrize("alpha, beta", [(-1.1, 0), (0, -2), (float("nan"), 0)])
def test_classify_domain(alpha, beta):
    with pytest.raises(DomainError):
        classify(alpha, beta)


def test_config_requires_n_at_least_two():
    with pytest.raises(DomainError):
        OperatorConfig.make(1, 0, 0)
    with pytest.raises(DomainError):
        OperatorConfig.make(2.5, 0, 0)


def test_polynomial_trims_and_limits_degree():
    assert Polynomial([1, 2, 0, 0]).degree == 1
    assert Polynomial([0, 0]).degree == 0
    with pytest.raises(DomainError):
        Polynomial(np.ones(66))


def test_boundary_dispatch_does_not_integrate():
    calls = []

    def f(t):
        calls.append(t)
        return 7.0 + t

    cfg = OperatorConfig.make(5, -1, -1)
    assert evaluate(cfg, f, 0.0) == 7.0
    assert evaluate(cfg, f, 1.0) == 8.0
    assert calls == [0.0, 1.0]
    assert evaluate(OperatorConfig.make(5, -1, 2), f, 0.0) == 7.0
    assert evaluate(OperatorConfig.make(5, 2, -1), f, 1.0) == 8.0


@pytest.mark.parametrize("n", [2, 7, 40])
def test_case_one_preserves_linear(n):
    cfg = OperatorConfig.make(n, -1, -1)
    np.testing.assert_allclose(evaluate_grid(cfg, lambda t: t, X_GRID), X_GRID, atol=1e-14)


def test_constants_preserved_everywhere():
    for cfg in grid_configs():
        vals = evaluate_grid(cfg, lambda t: np.ones_like(np.asarray(t, dtype=float)), X_GRID)
        np.testing.assert_allclose(vals, 1.0, atol=1e-12)


def test_case_two_endpoint_integral_branch():
    # alpha = -1, beta = 0.5 at x = 1 integrates against Beta(n, 1.5); mean n / (n + 1.5)
    cfg = OperatorConfig.make(4, -1, 0.5)
    assert evaluate(cfg, lambda t: t, 1.0) == pytest.approx(4 / 5.5, abs=1e-14)


def test_near_singular_falls_back_with_warning():
    cfg = OperatorConfig.make(2, -1, 0)
    with pytest.warns(RuntimeWarning):
        assert evaluate(cfg, lambda t: 3.0 + t, 1e-10) == 3.0


def test_continuity_near_boundary_case_one():
    cfg = OperatorConfig.make(10, -1, -1)
    f = lambda t: np.abs(np.asarray(t) - 0.3)  # Lipschitz-1
    assert abs(evaluate(cfg, f, 1e-6, tol=1e-10) - f(0.0)) < 1e-2


def test_x_domain():
    with pytest.raises(DomainError):
        evaluate(OperatorConfig.make(3, 0, 0), np.exp, 1.5)


def test_monomial_images():
    cfg = OperatorConfig.make(6, 0.3, 1.2)
    assert monomial_image(cfg, 0) == Polynomial([1.0])
    n = 6
    cfg1 = OperatorConfig.make(n, -1, -1)
    x = 0.37
    assert monomial_image(cfg1, 2)(x) == pytest.approx(n * x * (n * x + 1) / (n * (n + 1)), rel=1e-14)
    a = 1.7
    cfg2 = OperatorConfig.make(n, a, -1)
    expected = (n * x + a + 1) * (n * x + a + 2) / ((n + a + 1) * (n + a + 2))
    assert monomial_image(cfg2, 2)(x) == pytest.approx(expected, rel=1e-14)


def test_monomial_image_large_n_no_overflow():
    p = monomial_image(OperatorConfig.make(10**6, 0.5, 0.5), 60)
    assert np.all(np.isfinite(p.coeffs))
    assert p(1.0) == pytest.approx(
        math.exp(sum(math.log((1e6 + 1.5 + i) / (1e6 + 3 + i)) for i in range(60))), rel=1e-12
    )


def test_operator_matrix_examples():
    cfg = OperatorConfig.make(4, 0.5, 2.0)
    assert operator_matrix(cfg, 0).entries.tolist() == [[1.0]]
    M = operator_matrix(OperatorConfig.make(4, -1, -1), 3).entries
    np.testing.assert_allclose(M[1], [0, 1, 0, 0], atol=1e-15)
    M = operator_matrix(cfg, 6).entries
    assert np.all(np.triu(M, 1) == 0)
    assert M[0, 0] == 1.0


def test_operator_matrix_matches_quadrature():
    for cfg in grid_configs():
        matrix = operator_matrix(cfg, 2)
        image = matrix.apply(Polynomial([0, 0, 1]))
        assert image(0.3) == pytest.approx(evaluate(cfg, lambda t: t**2, 0.3, 1e-12), abs=1e-10)


@pytest.mark.parametrize("cfg", grid_configs(), ids=str)
def test_quadrature_formula_agreement(cfg):
    for k in range(9):
        image = monomial_image(cfg, k)
        quad = evaluate_grid(cfg, lambda t: np.asarray(t) ** k, X_GRID)
        np.testing.assert_allclose(quad, image(X_GRID), rtol=0, atol=1e-9)


@given(
    st.integers(min_value=2, max_value=60),
    st.sampled_from([-1.0, -0.5, 0.0, 1.0, 2.5]),
    st.sampled_from([-1.0, -0.5, 0.0, 1.0, 2.5]),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
)
@settings(max_examples=60, deadline=None)
@pytest.mark.filterwarnings("ignore:Beta parameter:RuntimeWarning")
def test_positivity(n, a, b, x, c):
    cfg = OperatorConfig.make(n, a, b)
    assert evaluate(cfg, lambda t: (np.asarray(t) - c) ** 2 * np.exp(t), x) >= -1e-12
