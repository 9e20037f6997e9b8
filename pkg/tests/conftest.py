import os

from hypothesis import HealthCheck, settings

# Quadrature-backed properties are slow per example; keep the default
# profile modest and deterministic so CI time stays bounded.
settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# --- suite wall-clock, the last part of acceptance criterion 9 -------------------

import time

SUITE_LIMIT_S = 300.0
_start = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    elapsed = time.perf_counter() - _start
    verdict = "PASS" if elapsed < SUITE_LIMIT_S else "FAIL"
    terminalreporter.write_line(
        f"criterion 9 (suite wall-clock): {verdict}  {elapsed:.1f} s (< {SUITE_LIMIT_S:.0f} s)")
