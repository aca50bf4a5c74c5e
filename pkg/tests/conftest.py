import numpy as np
from hypothesis import HealthCheck, settings, strategies as st

from enrichcat.linalg import FpMatrix

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

primes = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, p=None, max_dim=4, rows=None, cols=None):
    p = draw(primes) if p is None else p
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return FpMatrix(p, np.array(entries, dtype=np.int64).reshape(r, c))
