from fractions import Fraction

from hypothesis import strategies as st

from hypersum.exact import Poly
from hypersum.termlang import TermSpec

small_int = st.integers(min_value=-6, max_value=6)


@st.composite
def polys(draw, max_degree=6, nonzero=False):
    cs = draw(st.lists(small_int, min_size=0, max_size=max_degree + 1))
    p = Poly(cs)
    if nonzero and p.is_zero():
        p = Poly([draw(st.integers(1, 6))])
    return p


@st.composite
def rational_polys(draw, max_degree=4):
    cs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                       min_size=1, max_size=max_degree + 1))
    p = Poly(cs)
    return p if p else Poly([1])


GEOMETRIC = [Fraction(v) for v in ("1", "-1", "2", "-2", "1/2", "-1/2", "3", "2/3")]
RISING = [Fraction(v) for v in ("1/2", "3/2", "2", "3", "-1/2", "1/3", "5/3", "-3")]


@st.composite
def term_specs(draw):
    p = draw(polys(max_degree=3, nonzero=True))
    z = draw(st.sampled_from(GEOMETRIC))
    factors = []
    for base in draw(st.lists(st.sampled_from(RISING), max_size=2, unique=True)):
        e = draw(st.sampled_from([-1, 1]))
        if base <= 0 and base.denominator == 1:
            e = 1
        factors.append((base, e))
    fact = draw(st.integers(-2, 2))
    return TermSpec(p, z, tuple(factors), fact)
