"""Shared fixtures: hermetic calibration cache, CLI runner, criterion summary."""

from __future__ import annotations

import os
import subprocess
import sys

import pytest
from hypothesis import settings

settings.register_profile("patinfo", deadline=None, max_examples=75)
settings.load_profile("patinfo")


@pytest.fixture(scope="session", autouse=True)
def _isolated_calibration_cache(tmp_path_factory):
    """Point PATINFO_CACHE at a per-session temp file so runs never touch
    the user's real cache and subprocesses inherit the same store."""
    path = tmp_path_factory.mktemp("cache") / "calibrations.json"
    previous = os.environ.get("PATINFO_CACHE")
    os.environ["PATINFO_CACHE"] = str(path)
    yield path
    if previous is None:
        os.environ.pop("PATINFO_CACHE", None)
    else:
        os.environ["PATINFO_CACHE"] = previous


@pytest.fixture(scope="session")
def cli():
    """Run the installed command-line entry point in a subprocess."""

    def run(*args: str, stdin: bytes | None = None) -> subprocess.CompletedProcess:
        proc = subprocess.run(
            [sys.executable, "-m", "patinfo", *args],
            input=stdin,
            capture_output=True,
            timeout=120,
        )
        return subprocess.CompletedProcess(
            proc.args,
            proc.returncode,
            proc.stdout.decode("utf-8"),
            proc.stderr.decode("utf-8"),
        )

    return run


_CRITERION_RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        num, name = marker.args
        _CRITERION_RESULTS[num] = (name, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERION_RESULTS):
        name, passed = _CRITERION_RESULTS[num]
        terminalreporter.write_line(
            f"criterion {num:2d}  {name}: {'PASS' if passed else 'FAIL'}"
        )
