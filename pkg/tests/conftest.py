import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tensorspec.exact import GaussianRational

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gqs = st.builds(GaussianRational, rationals, rationals)
nonzero_gqs = gqs.filter(lambda z: not z.is_zero())


@st.composite
def ratios(draw):
    """``q`` with ``0 < |q|^2 < 1``."""
    q = draw(
        st.builds(
            GaussianRational,
            st.fractions(min_value=-1, max_value=1, max_denominator=9),
            st.fractions(min_value=-1, max_value=1, max_denominator=9),
        )
    )
    if q.is_zero() or not q.abs_sq() < 1:
        q = GaussianRational(Fraction(1, 2))
    return q


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
