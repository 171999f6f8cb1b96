from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from sptri.matrix import Mat, sym

settings.register_profile("sptri", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("sptri")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero = rationals.filter(lambda x: x != 0)
symmetric = st.builds(sym, rationals, rationals, rationals)
gl2 = st.builds(lambda a, b, c, d: Mat([[a, b], [c, d]]), rationals, rationals, rationals, rationals).filter(
    lambda m: m.det() != 0)
lower = st.builds(lambda a, b, d: Mat([[a, 0], [b, d]]), nonzero, rationals, nonzero)
