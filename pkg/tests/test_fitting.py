"""Exact Newton fitting: recovery, onsets, refusals.

Oracles are closed-form tables: n(n+1)/2 (degree 2, coefficients 1/2),
a planted bivariate quadratic, and non-polynomial tables that must be
refused rather than force-fitted.
"""

import math
from fractions import Fraction

import pytest

from functorlab.errors import ConfigurationError, ContractViolation
from functorlab.fitting import FittedPolynomial, fit_polynomial
from functorlab.grid import GridBox


def test_box_validation():
    with pytest.raises(ContractViolation):
        GridBox((3,), (1,))
    with pytest.raises(ContractViolation):
        GridBox((0, 0), (2, 2), shell=0)
    box = GridBox((1, 1), (2, 3))
    assert len(box.points()) == 6
    assert box.shell_floor() == (1, 2)


def test_hilbert_samuel_table():
    box = GridBox((1,), (10,), shell=2)
    table = {(n,): n * (n + 1) // 2 for n in range(1, 11)}
    fit = fit_polynomial(table, box, 2)
    assert fit is not None
    assert fit.total_degree == 2
    assert fit.coeffs[(2,)] == Fraction(1, 2)
    assert fit.coeffs[(1,)] == Fraction(1, 2)
    assert fit.onset == (1,)
    assert fit.evaluate((12,)) == 78
    assert len(fit.validated) == 10


def test_cap_above_true_degree_still_exact():
    box = GridBox((1,), (10,), shell=1)
    table = {(n,): n * (n + 1) // 2 for n in range(1, 11)}
    fit = fit_polynomial(table, box, 4)
    assert fit.total_degree == 2
    assert fit.coeffs[(2,)] == Fraction(1, 2)


def test_constant_table_degree_zero():
    box = GridBox((0,), (6,))
    fit = fit_polynomial({(n,): 7 for n in range(7)}, box, 1)
    assert fit.total_degree == 0
    assert fit.evaluate((100,)) == 7
    assert fit.to_string() == "7"


def test_bivariate_recovery():
    box = GridBox((1, 1), (6, 6), shell=1)
    poly = lambda a, b: a * b + 3 * a + 1
    table = {(a, b): poly(a, b) for a in range(1, 7) for b in range(1, 7)}
    fit = fit_polynomial(table, box, 2)
    assert fit is not None
    assert fit.total_degree == 2
    assert fit.coeffs == {(1, 1): 1, (1, 0): 3, (0, 0): 1}
    assert fit.onset == (1, 1)


def test_late_onset():
    box = GridBox((1,), (9,), shell=1)
    table = {(n,): (2 * n if n >= 3 else 99) for n in range(1, 10)}
    fit = fit_polynomial(table, box, 1)
    assert fit is not None
    assert fit.onset == (3,)
    assert set(fit.validated) == {(n,) for n in range(3, 10)}


def test_non_polynomial_is_refused():
    box = GridBox((1,), (8,), shell=1)
    table = {(n,): 2 ** n for n in range(1, 9)}
    assert fit_polynomial(table, box, 2) is None


def test_infinite_inside_grid_raises():
    box = GridBox((1,), (6,), shell=1)
    table = {(n,): 5 for n in range(1, 7)}
    table[(4,)] = math.inf
    with pytest.raises(ContractViolation):
        fit_polynomial(table, box, 1)


def test_infinite_below_onset_tolerated():
    box = GridBox((0,), (8,), shell=1)
    table = {(n,): 3 * n for n in range(9)}
    table[(0,)] = math.inf
    fit = fit_polynomial(table, box, 1)
    assert fit.onset == (1,)


def test_box_too_small_for_cap():
    box = GridBox((1,), (4,), shell=1)
    table = {(n,): n for n in range(1, 5)}
    with pytest.raises(ConfigurationError):
        fit_polynomial(table, box, 5)


def test_rendering_and_serialization():
    fit = FittedPolynomial(
        2, {(2, 0): Fraction(1, 2), (0, 1): Fraction(-3)}, onset=(1, 1)
    )
    s = fit.to_string()
    assert "1/2*n1^2" in s and "-3*n2" in s
    d = fit.as_dict()
    assert d["total_degree"] == 2
    assert d["onset"] == [1, 1]
    assert {"exponents": [2, 0], "numerator": 1, "denominator": 2} in d["coefficients"]
