import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cfinite.exactarith import MPoly
from cfinite.ratgf import ZPoly, gf_new

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_ints = st.integers(min_value=-5, max_value=5)
small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)
names = st.sampled_from(["a", "b", "c", "d", "k", "x"])


@st.composite
def mpolys(draw, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = {}
        for _ in range(draw(st.integers(0, 3))):
            mono[draw(names)] = draw(st.integers(1, max_exp))
        terms[tuple(sorted(mono.items()))] = draw(small_rationals)
    return MPoly(terms)


@st.composite
def numeric_gfs(draw, max_num=4, max_den=4, proper=False):
    dd = draw(st.integers(0 if not proper else 1, max_den))
    den = [1] + [draw(small_ints) for _ in range(dd)]
    if dd:
        den[dd] = den[dd] or 1
    nd = draw(st.integers(-1, min(max_num, dd - 1) if proper else max_num))
    num = [draw(small_ints) for _ in range(nd + 1)]
    return gf_new(ZPoly(num), ZPoly(den))


def random_gf(rng, max_num, max_den, proper=False, min_den=0):
    dd = rng.randint(max(min_den, 1 if proper else 0), max_den)
    den = [1] + [rng.randint(-4, 4) for _ in range(dd)]
    if dd and not den[dd]:
        den[dd] = rng.choice([-1, 1])
    top = min(max_num, dd - 1) if proper else max_num
    num = [rng.randint(-4, 4) for _ in range(rng.randint(0, top) + 1)] if top >= 0 else []
    return gf_new(ZPoly(num), ZPoly(den))


def as_fractions(p):
    """Coefficients of a numeric ZPoly as Fractions."""
    return [c.constant_value() for c in p.coeffs]


@pytest.fixture
def rng():
    return random.Random(20241014)


# acceptance reporting: one line per criterion in the terminal summary

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and report.passed):
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": []})
    if report.passed:
        entry["passed"] += 1
    elif report.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "FAIL" if entry["failed"] else "PASS"
        detail = f"{entry['passed']} passed"
        if entry["failed"]:
            detail += f", {len(entry['failed'])} failed: {', '.join(entry['failed'])}"
        terminalreporter.write_line(f"[{status}] criterion {number}: {entry['title']} ({detail})")
