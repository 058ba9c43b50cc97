import pytest

from petridiag import _kernel, load_fixture


@pytest.fixture(scope="session")
def fig1():
    return load_fixture("fig1")


@pytest.fixture(params=sorted(_kernel.BACKENDS))
def backend(request, monkeypatch):
    """Run a test once per available search kernel."""
    monkeypatch.setattr(_kernel, "active", _kernel.BACKENDS[request.param])
    return request.param


def names(seqs):
    return {tuple(t.name for t in s) for s in seqs}


def expl_names(explanations):
    return {e.names for e in explanations}


_ACCEPTANCE = {}


def record(criterion, ok, detail):
    """Store one acceptance-criterion outcome for the terminal summary."""
    _ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
