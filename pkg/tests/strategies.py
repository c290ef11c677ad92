import random

from hypothesis import strategies as st

from msk import sampling
from msk.exterior import AlternatingTensor

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
rngs = seeds.map(random.Random)

small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def tensors(draw, max_dim=5, max_degree=4, covariant=True):
    n = draw(st.integers(1, max_dim))
    k = draw(st.integers(0, min(n, max_degree)))
    comps = draw(st.dictionaries(
        st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True).map(lambda x: tuple(sorted(x))),
        small_rationals, max_size=6))
    return AlternatingTensor(n, k, covariant, comps)


@st.composite
def charts_and_forms(draw, max_dim=4, max_coeff_degree=3):
    rng = draw(rngs)
    n = draw(st.integers(1, max_dim))
    ch = sampling.chart(n)
    k = draw(st.integers(0, n))
    return ch, sampling.form(rng, ch, k, max_degree=max_coeff_degree)


@st.composite
def polynomials(draw, nvars=3, max_degree=3):
    rng = draw(rngs)
    return sampling.polynomial(rng, nvars, max_degree, terms=4)
