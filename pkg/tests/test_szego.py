from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subdiag.algebra import AlgebraModel, Element, fk_det, in_A, phi, random_element
from subdiag.factor import szego_factor
from subdiag.factor.szego import split_count

from strategies import matrix_models, seeds


def test_split_count():
    assert split_count(2, 2) == 1
    assert split_count(1, 2) == 2
    assert split_count(0.5, 0.5) == 4
    assert split_count(0.3, 4) == 7
    assert split_count(math.inf, 2) == 1


@given(matrix_models(), seeds, st.sampled_from([(2.0, 2.0), (0.5, 0.5), (1.0, 3.0), (0.4, math.inf)]))
def test_matrix_residuals(model, seed, pq):
    w = random_element(model, "M", seed)
    res = szego_factor(w, *pq)
    assert res.residuals.worst() <= 1e-8
    assert in_A(res.analytic)
    # phase convention: positive diagonal blocks
    d = phi(res.analytic).matrix
    assert np.allclose(d, d.conj().T, atol=1e-10)
    assert np.linalg.eigvalsh(d).min() > 0


def test_n4_splitting_matches_single_step():
    w = random_element(AlgebraModel.full_flag(3), "M", 7)
    one = szego_factor(w, 2.0, 2.0)
    four = szego_factor(w, 0.5, 0.5)
    assert four.info["splits"] == 4
    assert np.allclose(one.analytic.matrix, four.analytic.matrix, atol=1e-10)
    assert np.allclose(one.unitary.matrix, four.unitary.matrix, atol=1e-10)


def test_torus_positive_weight():
    m = AlgebraModel.torus(2, 2)
    w = random_element(m, "positive_invertible", 3)
    res = szego_factor(w, 2.0, 2.0, nodes=129)
    assert res.analytic.model.num_nodes == 129
    assert res.residuals.worst() <= 1e-8
    # |h| = w, so Delta(h) = Delta(w)
    assert math.isclose(fk_det(res.analytic), fk_det(w), rel_tol=1e-8)


def test_torus_scalar_outer_input():
    m = AlgebraModel.torus(1, 1, 33)
    x = Element(m, {0: 2.0, 1: 1.0})
    u, h = szego_factor(x)
    assert np.allclose(h.values(), x.values(), atol=1e-10)
    assert np.allclose(u.values(), 1.0, atol=1e-10)


def test_rejects_bad_exponent():
    with pytest.raises(ValueError):
        szego_factor(Element.identity(AlgebraModel.full_flag(2)), 0.0, 2.0)
