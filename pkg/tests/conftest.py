import pytest
from hypothesis import strategies as st

from wimax_interleaver.permutation import ModulationScheme, make_params

MAX_NCPBS = 4608
ROW_COUNTS = (12, 16)


def all_valid_params(max_ncpbs=MAX_NCPBS, row_counts=ROW_COUNTS):
    for d in row_counts:
        for mod in ModulationScheme:
            step = d * mod.s
            for ncpbs in range(step, max_ncpbs + 1, step):
                yield make_params(mod, ncpbs, d)


@st.composite
def valid_params(draw, max_ncpbs=1152):
    d = draw(st.sampled_from(ROW_COUNTS))
    mod = draw(st.sampled_from(list(ModulationScheme)))
    step = d * mod.s
    groups = draw(st.integers(min_value=1, max_value=max_ncpbs // step))
    return make_params(mod, groups * step, d)


@pytest.fixture
def qpsk96():
    return make_params(ModulationScheme.QPSK, 96, 16)


@pytest.fixture
def qam16_192():
    return make_params(ModulationScheme.QAM16, 192, 16)


@pytest.fixture
def qam64_576():
    return make_params(ModulationScheme.QAM64, 576, 16)


# Acceptance criteria report: test_acceptance.py appends (criterion, passed, detail).
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}: {detail}")
