import itertools

import pytest

from lyubeznik.cone import ConeInput
from lyubeznik.errors import EmptyScheme
from lyubeznik.ring import Ideal, PolyRingCtx


def ring(p, nvars):
    return PolyRingCtx.standard(p, nvars)


def cone(p, nvars, gens_fn=lambda x: []):
    R = ring(p, nvars)
    return ConeInput(R, Ideal(R, tuple(gens_fn(R.gens()))))


def squarefree_sweep(nvars=3, max_gens=3, p=2):
    """(generator exponent tuples, ConeInput or None if Proj is empty), every generator subset."""
    R = ring(p, nvars)
    monos = [m for m in itertools.product((0, 1), repeat=nvars) if any(m)]
    out = []
    for k in range(max_gens + 1):
        for gens in itertools.combinations(monos, k):
            try:
                c = ConeInput(R, Ideal(R, tuple(R.monomial(m) for m in gens)))
            except EmptyScheme:
                c = None
            out.append((gens, c))
    return out


def corpus():
    """(label, ConeInput) for the A1-A4 instances."""
    items = [
        ("A1 (x0) F2[x0,x1]", cone(2, 2, lambda x: [x[0]])),
        ("A1 (x0) F3[x0,x1,x2]", cone(3, 3, lambda x: [x[0]])),
    ]
    for p in (2, 3, 5):
        for n in range(3):
            items.append((f"A2 P^{n} F{p}", cone(p, n + 1)))
    items.append(("A3 (x0x1) F2", cone(2, 2, lambda x: [x[0] * x[1]])))
    for gens, c in squarefree_sweep():
        if c is not None:
            items.append((f"A4 {gens}", c))
    return items


@pytest.fixture(scope="session")
def a_corpus():
    return corpus()


# -- one summary line per acceptance criterion ---------------------------------

_CRITERIA: dict[str, list[bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_A"):
        key = name[len("test_"):].split("_")[0]
        _CRITERIA.setdefault(key, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k[1:])):
        results = _CRITERIA[key]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{key}: {status} ({sum(results)}/{len(results)} checks)")
