from __future__ import annotations

import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subdiag.algebra import AlgebraModel, DegreeGrowthWarning, Element, Kind, ModelMismatch, random_element

from strategies import seeds, torus_models


def test_model_validation():
    with pytest.raises(ValueError):
        AlgebraModel.matrix_block([])
    with pytest.raises(ValueError):
        AlgebraModel.matrix_block([1, 0])
    with pytest.raises(ValueError):
        AlgebraModel.torus(2, 4, 15)  # needs K >= 17
    with pytest.raises(ValueError):
        AlgebraModel.torus(2, 4, 18)  # K must be odd
    assert AlgebraModel.torus(2, 4).num_nodes == 17
    assert AlgebraModel.torus(1, 3).kind is Kind.TORUS_SCALAR


def test_flag_structure():
    m = AlgebraModel.matrix_block([1, 2])
    assert m.n == 3
    expected_a = np.array([[1, 1, 1], [0, 1, 1], [0, 1, 1]], dtype=bool)
    assert np.array_equal(m.a_mask, expected_a)
    assert m.dim_A == 7
    assert AlgebraModel.full_flag(4).dim_A == 10
    assert AlgebraModel.degenerate(3).dim_A == 9


def test_coordinate_values():
    m = AlgebraModel.torus(1, 2)
    z = Element.coordinate(m)
    assert np.allclose(z.values()[:, 0, 0], np.exp(1j * m.thetas))
    assert np.allclose(z(0.3), np.exp(0.3j))


@given(torus_models(), seeds, seeds)
def test_product_is_convolution(model, s1, s2):
    x = random_element(model, "M", s1)
    y = random_element(model, "M", s2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegreeGrowthWarning)
        xy = x @ y
    theta = 0.7
    assert np.allclose(xy(theta), x(theta) @ y(theta), atol=1e-10)


def test_degree_growth_promotes_grid():
    m = AlgebraModel.torus(1, 2)  # K = 9, band 4
    z2 = Element(m, {2: 1.0})
    with pytest.warns(DegreeGrowthWarning):
        z6 = z2 @ z2 @ z2
    assert z6.degree == 6
    assert z6.model.band >= 6
    assert np.isclose(z6(0.4)[0, 0], np.exp(2.4j))


def test_adjoint_and_inverse():
    m = AlgebraModel.torus(2, 1, 33)
    x = Element(m, {0: 3 * np.eye(2), 1: [[1, 0.5], [0, 1]]})
    assert np.allclose(x.H(0.2), x(0.2).conj().T)
    inv = x.inv()
    assert np.allclose(inv.values() @ x.values(), np.eye(2), atol=1e-12)


def test_model_mismatch():
    a = Element.identity(AlgebraModel.full_flag(2))
    b = Element.identity(AlgebraModel.torus(2, 1))
    with pytest.raises(ModelMismatch):
        a + b
    assert a != b


def test_equality_is_tolerant():
    m = AlgebraModel.full_flag(2)
    a = Element(m, np.eye(2))
    assert a == Element(m, np.eye(2) + 1e-14)
    assert a != Element(m, np.eye(2) + 1e-9)


@given(st.sampled_from(["M", "A", "A0", "D", "positive_invertible"]), seeds)
def test_random_element_is_deterministic(cls, seed):
    m = AlgebraModel.torus(2, 3)
    x = random_element(m, cls, seed)
    y = random_element(m, cls, seed)
    assert np.array_equal(x.coefficients, y.coefficients)
