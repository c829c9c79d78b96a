import sys
from fractions import Fraction

from hypothesis import strategies as st

from artifact.arith import QuadElem

small_fracs = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
quads = st.builds(QuadElem, small_fracs, small_fracs)
nonzero_quads = quads.filter(lambda x: not x.is_zero())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
