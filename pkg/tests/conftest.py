import time

import pytest

from volterra.report import ReportConfig, build_report


@pytest.fixture(scope="session")
def full_report():
    """Default-configuration report document, built once and shared.

    Returns ``(document, wall_seconds)`` so the acceptance gate can also check
    the runtime budget.
    """
    start = time.monotonic()
    doc = build_report(ReportConfig())
    return doc, time.monotonic() - start
