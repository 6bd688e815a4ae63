from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from bianchi import Bracket, Covector, GaussianRational, GroupElement, Matrix3, SymForm

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-100, 100), st.integers(1, 100))
gaussians = st.builds(lambda a, b: GaussianRational(a, b) + 0, rationals, rationals)


def covectors(scalars=rationals):
    return st.tuples(scalars, scalars, scalars).map(Covector)


def symforms(scalars=rationals):
    def build(v):
        a, b, c, d, e, f = v
        return SymForm(((a, b, c), (b, d, e), (c, e, f)))
    return st.tuples(*[scalars] * 6).map(build)


def brackets(scalars=rationals):
    return st.tuples(*[scalars] * 9).map(Bracket)


def group_elements(scalars=rationals):
    rows = st.tuples(scalars, scalars, scalars)
    return (st.tuples(rows, rows, rows)
            .filter(lambda r: Matrix3(r).det() != 0)
            .map(GroupElement))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
