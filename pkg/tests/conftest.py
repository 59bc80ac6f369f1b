from functools import lru_cache

from stratalg.io import fixture_table
from stratalg.linalg import GF


@lru_cache(maxsize=None)
def table(name, prime=None):
    return fixture_table(name, GF(prime) if prime else None)


# criterion number -> (passed, description); filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {desc}")
