from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from subdiag.algebra import AlgebraModel, Element, in_A, random_element
from subdiag.algebra.random import haar_unitary
from subdiag.factor import FactorizationError, SingularOperatorError, arveson_factor

from strategies import matrix_models, seeds


def test_golden_two_by_two():
    # x = [[0, 1], [1, 0]]: QR gives u = x, a = identity
    m = AlgebraModel.full_flag(2)
    x = Element(m, [[0, 1], [1, 0]])
    u, a = arveson_factor(x)
    assert u == x
    assert a == Element.identity(m)


def test_upper_triangular_input_is_fixed_up_to_phase():
    m = AlgebraModel.full_flag(3)
    x = Element(m, [[2, 1, 0], [0, -3, 1j], [0, 0, 1j]])
    u, a = arveson_factor(x)
    assert np.allclose(np.abs(np.diagonal(u.matrix)), 1.0)
    assert np.all(np.diagonal(a.matrix).real > 0)
    assert np.allclose(np.diagonal(a.matrix).imag, 0.0)


@given(matrix_models(), seeds)
def test_residuals(model, seed):
    x = random_element(model, "M", seed)
    res = arveson_factor(x)
    assert res.residuals.worst() <= 1e-10
    assert in_A(res.analytic) and in_A(res.analytic_inverse)
    assert np.allclose(res.unitary.matrix @ res.analytic.matrix, x.matrix, atol=1e-10)


@given(matrix_models(), seeds)
def test_unitary_input_gives_identity(model, seed):
    rng = np.random.default_rng(seed)
    res = arveson_factor(Element(model, haar_unitary(rng, model.n)))
    assert np.abs(res.analytic.matrix - np.eye(model.n)).max() <= 1e-10


def test_rejects_singular_and_torus():
    m = AlgebraModel.full_flag(2)
    with pytest.raises(SingularOperatorError):
        arveson_factor(Element(m, [[1, 1], [1, 1]]))
    with pytest.raises((FactorizationError, ValueError)):
        arveson_factor(Element.identity(AlgebraModel.torus(2, 1)))
