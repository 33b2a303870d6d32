from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdiag.algebra import AlgebraModel, Element, in_A, random_element
from subdiag.cli.suites import random_root_polynomial
from subdiag.factor import FactorizationError, riesz_factor
from subdiag.factor.riesz import conjugate_exponent

from strategies import matrix_models, seeds

TRIPLES = [(1.0, 2.0, 2.0), (0.5, 1.0, 1.0), (2.0 / 3.0, 1.0, 2.0)]


def test_conjugate_exponent():
    assert conjugate_exponent(2, 2) == 1
    assert conjugate_exponent(1, 2) == pytest.approx(2 / 3)
    assert conjugate_exponent(math.inf, 3) == 3
    with pytest.raises(ValueError, match="exponent mismatch"):
        conjugate_exponent(2, 2, p=0.5)


@settings(max_examples=20)
@given(matrix_models(), seeds, st.sampled_from(TRIPLES), st.sampled_from([1e-1, 1e-2, 1e-3]))
def test_eps_pathway_matrix(model, seed, pqr, eps):
    p, q, r = pqr
    x = random_element(model, "A", seed)
    res = riesz_factor(x, q, r, eps, p=p)
    assert res.reconstruction <= 1e-8
    assert res.product <= res.norm_x + eps + 1e-8
    assert in_A(res.y, tol=1e-8) and in_A(res.z, tol=1e-8)


@settings(max_examples=20)
@given(matrix_models(), seeds, st.sampled_from(TRIPLES))
def test_outer_pathway_attains(model, seed, pqr):
    p, q, r = pqr
    x = random_element(model, "A", seed)
    res = riesz_factor(x, q, r, p=p, pathway="outer")
    assert abs(res.slack) <= 1e-6 * res.norm_x
    y, z = res
    assert np.allclose(y.matrix @ z.matrix, x.matrix, atol=1e-8 * np.abs(x.matrix).max())


@settings(max_examples=8)
@given(seeds, st.sampled_from(TRIPLES))
def test_torus_scalar(seed, pqr):
    p, q, r = pqr
    model = AlgebraModel.torus(1, 4)
    x = random_root_polynomial(model, np.random.default_rng(seed))
    res = riesz_factor(x, q, r, 1e-2, p=p, nodes=1025)
    assert res.reconstruction <= 1e-8
    assert res.slack <= 1e-2 + 1e-8
    assert max(res.membership_y, res.membership_z) <= 1e-6
    res = riesz_factor(x, q, r, p=p, pathway="outer", nodes=1025)
    assert abs(res.slack) <= 1e-6 * res.norm_x


def test_infinite_exponent_is_trivial():
    x = random_element(AlgebraModel.full_flag(3), "A", 1)
    res = riesz_factor(x, math.inf, 2.0)
    assert res.pathway == "trivial"
    assert res.z == x


def test_rejections():
    m = AlgebraModel.full_flag(2)
    with pytest.raises(FactorizationError):
        riesz_factor(Element(m, [[1, 0], [1, 1]]), 2, 2)
    with pytest.raises(FactorizationError):
        riesz_factor(Element(m, np.diag([1.0, 0.0])), 2, 2, pathway="outer")
    with pytest.raises(ValueError):
        riesz_factor(Element.identity(m), 2, 2, eps=0.0)
    # the eps pathway handles Delta(x) = 0
    res = riesz_factor(Element(m, np.diag([1.0, 0.0])), 2, 2, eps=1e-2)
    assert res.product <= res.norm_x + 1e-2 + 1e-8
