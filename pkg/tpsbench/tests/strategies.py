"""
Hypothesis strategies shared by the property tests.
"""

from hypothesis import strategies as st

from tpsbench.app.domain.algebra.basis import BasisIndex, Element
from tpsbench.app.domain.exactnum import GaussianRational, ZERO

# Small numerators and denominators keep exact elimination cheap
small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussian_rationals = st.builds(GaussianRational, small_fractions, small_fractions)
nonzero_gaussian_rationals = gaussian_rationals.filter(bool)
small_integers = st.integers(min_value=-3, max_value=3)


def elements(families=("L",), alphas=(ZERO,), i_range=(-3, 3), max_size=3):
    """Elements with at most max_size terms drawn from the given families and group parts."""
    indices = st.builds(
        BasisIndex,
        st.sampled_from(families),
        st.sampled_from(alphas),
        st.integers(min_value=i_range[0], max_value=i_range[1]),
    )
    return st.dictionaries(indices, nonzero_gaussian_rationals, min_size=1, max_size=max_size).map(Element)
