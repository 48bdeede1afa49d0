from __future__ import annotations

import pytest

from ultrahom.tower import build_tower


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep every test away from the user's real cache directory
    monkeypatch.setenv("ULTRAHOM_CACHE", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def tower(tmp_path_factory):
    return build_tower(2, cache_dir=tmp_path_factory.mktemp("tower"))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
