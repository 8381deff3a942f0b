from __future__ import annotations

import sys

import pytest

from kfree import discverify

# Every field discriminant computed anywhere in the suite passes through
# discverify._check; keep a copy so the consistency criterion can re-check
# them with independent code.
DISC_LOG: list[tuple[int, int, dict[int, int]]] = []

_original_check = discverify._check


def _recording_check(res):
    DISC_LOG.append((res.field_disc.value, res.poly_disc,
                     {p: d.valuation for p, d in res.per_prime.items()}))
    _original_check(res)


discverify._check = _recording_check


@pytest.fixture
def disc_log():
    return DISC_LOG


def pytest_terminal_summary(terminalreporter):
    terminalreporter.write_line(f"field discriminants checked during the session: {len(DISC_LOG)}")
    module = sys.modules.get("test_acceptance")
    if module is not None and module.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in module.REPORT:
            terminalreporter.write_line(line)
