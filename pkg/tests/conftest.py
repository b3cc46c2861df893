import pytest
from hypothesis import settings

from spikelab.constructions import uniform, wheel, whirl, free_extension
from spikelab.matroid import direct_sum
from spikelab.spikes import make_spike, one_spike

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")


def _catalog():
    cat = {
        "U1,2": uniform(1, 2),
        "U1,3": uniform(1, 3),
        "U2,4": uniform(2, 4),
        "U2,5": uniform(2, 5),
        "U3,6": uniform(3, 6),
        "U0,2": uniform(0, 2),
        "U3,3": uniform(3, 3),
        "U1,2+U2,3": direct_sum(uniform(1, 2), uniform(2, 3)),
        "W3": wheel(3),
        "W^3": whirl(3),
        "W4": wheel(4),
        "W^4": whirl(4),
        "W5": wheel(5),
        "W^5": whirl(5),
        "1-spike(3)": one_spike(3)[0],
        "1-spike(5)": one_spike(5)[0],
        "freeext(W3)": free_extension(wheel(3)),
    }
    for t, r in [(2, 3), (2, 4), (2, 5), (3, 5)]:
        cat[f"{t}-spike({r})"] = make_spike(t, r)[0]
    return cat


CATALOG = _catalog()
SMALL = {k: v for k, v in CATALOG.items() if v.n <= 10}


@pytest.fixture(params=sorted(SMALL), scope="module")
def small_matroid(request):
    return SMALL[request.param]


@pytest.fixture(scope="session")
def spike25():
    return make_spike(2, 5)


@pytest.fixture(scope="session")
def spike37():
    return make_spike(3, 7)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
