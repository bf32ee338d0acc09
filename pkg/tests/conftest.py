from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hedgehog import Poly, make_ring

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# property suites run at least this many examples each
PROPERTY_EXAMPLES = 1000

RING_SPECS = ["Q", "Q(sqrt:-1)", "Q(sqrt:-7)", "Q(sqrt:2)", "Fp:7", "Fp:101", "Z2:5", "Z2:64"]
FIELD_SPECS = [s for s in RING_SPECS if not s.startswith("Z2")]
XYZ = ("X", "Y", "Z")


def elements(ring, bound: int = 30):
    small = st.integers(-bound, bound)
    if ring.kind in ("rationals", "quadratic-extension"):
        q = st.builds(Fraction, small, st.integers(1, bound))
        if ring.kind == "rationals":
            return q.map(ring)
        return st.tuples(q, q).map(
            lambda ab: ring(ab[0]) + ring(ab[1]) * ring.elem(ring.gen())
        )
    return st.integers(-(2**70), 2**70).map(ring)


def polys(ring, vars=XYZ, max_terms: int = 5, max_exp: int = 3):
    mono = st.tuples(*[st.integers(0, max_exp)] * len(vars))
    return st.dictionaries(mono, elements(ring, 9), max_size=max_terms).map(
        lambda d: Poly.from_dict(ring, vars, d)
    )


@st.composite
def ring_and(draw, make, specs=RING_SPECS):
    ring = make_ring(draw(st.sampled_from(specs)))
    return ring, draw(make(ring))


@pytest.fixture
def qi():
    return make_ring("Q(sqrt:-1)")


@pytest.fixture
def q7():
    return make_ring("Q(sqrt:-7)")


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
