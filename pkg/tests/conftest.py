import os

import pytest
from hypothesis import HealthCheck, settings

# the first call of each compiled kernel pays the numba compile time
settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def record(request):
    """``record(n, ok, detail)`` files one sub-check of acceptance criterion ``n``."""
    store = request.config.stash.setdefault(CRITERIA, {})

    def _record(n: int, ok: bool, detail: str) -> bool:
        store.setdefault(n, []).append((bool(ok), detail))
        return bool(ok)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(CRITERIA, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        checks = store[n]
        ok = all(c for c, _ in checks)
        failed = [d for c, d in checks if not c]
        detail = "; ".join(failed) if failed else "; ".join(d for _, d in checks)
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {detail}")
