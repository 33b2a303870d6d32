"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from subdiag.algebra import AlgebraModel, random_element

seeds = st.integers(min_value=0, max_value=2**32 - 1)

flags = st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=3)


@st.composite
def matrix_models(draw):
    return AlgebraModel.matrix_block(draw(flags))


@st.composite
def torus_models(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    degree = draw(st.integers(min_value=0, max_value=4))
    return AlgebraModel.torus(n, degree)


models = st.one_of(matrix_models(), torus_models())


@st.composite
def elements(draw, cls="M", model_strategy=models):
    model = draw(model_strategy)
    return random_element(model, cls, draw(seeds))
