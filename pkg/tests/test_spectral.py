from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdiag.algebra import AlgebraModel, Element, fk_det
from subdiag.cli.suites import random_outer_polynomial
from subdiag.factor import FactorizationError, outer_factor_scalar, wilson_factor

from strategies import seeds


def _coefs(h, top):
    return np.array([h.coef(k)[0, 0] for k in range(top + 1)])


def test_scalar_golden():
    # |1 - z/2|^2 = 5/4 - cos(theta); the outer h with |h| = w is (1 - z/2)^2
    m = AlgebraModel.torus(1, 2, 65)
    w = Element(m, {-1: -0.5, 0: 1.25, 1: -0.5})
    res = outer_factor_scalar(w)
    assert np.abs(_coefs(res.h, 2) - [1.0, -1.0, 0.25]).max() <= 1e-12
    assert math.isclose(fk_det(w), 1.0, rel_tol=1e-12)
    assert res.outer_gap <= 1e-12


def test_scalar_boundary_zero():
    # w = 2 + 2 cos(theta) = |1 + z|^2 vanishes at theta = pi
    m = AlgebraModel.torus(1, 1, 2**16 + 1)
    res = outer_factor_scalar(Element(m, {-1: 1.0, 0: 2.0, 1: 1.0}))
    assert np.abs(_coefs(res.h, 2) - [1.0, 2.0, 1.0]).max() <= 1e-4


def test_scalar_rejects_bad_weights():
    m = AlgebraModel.torus(1, 1, 33)
    with pytest.raises(FactorizationError):
        outer_factor_scalar(Element(m, {-1: 1.0, 0: 0.5, 1: 1.0}))
    with pytest.raises(FactorizationError):
        outer_factor_scalar(Element(m, {0: 0.0}))
    with pytest.raises(ValueError):
        outer_factor_scalar(Element.identity(AlgebraModel.torus(2, 1)))


def test_wilson_scalar_matches_outer():
    m = AlgebraModel.torus(1, 2, 65)
    q = Element(m, {0: 3.0, 1: 1.0})
    res = wilson_factor(q.H @ q)
    assert res.converged
    assert np.abs(_coefs(res.h, 1) - [3.0, 1.0]).max() <= 1e-8


@settings(max_examples=25)
@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_wilson_random(seed, n, deg):
    model = AlgebraModel.torus(n, 2 * deg, 129)
    q = random_outer_polynomial(model, np.random.default_rng(seed), deg)
    res = wilson_factor(q.H @ q)
    assert res.residual <= 1e-8
    assert res.outer_gap <= 1e-6
    assert res.analytic_defect <= 1e-8
