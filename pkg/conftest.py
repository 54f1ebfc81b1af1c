import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full-size sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size sweep, run with --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def trace_dir(tmp_path, monkeypatch):
    """Empty trace directory; an exported AITGL_TRACE_DIR would override --out"""
    monkeypatch.delenv("AITGL_TRACE_DIR", raising=False)
    return tmp_path / "traces"


