import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("heatops", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("heatops")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criterion check")


def pytest_collection_modifyitems(config, items):
    # acceptance checks run last so criterion 10 can read the property counts
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")


@pytest.fixture
def announce(request):
    """Write a line straight to the terminal, bypassing capture."""
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def write(line: str) -> None:
        if reporter is not None:
            reporter.ensure_newline()
            reporter.write_line(line)
        else:
            print(line)
    return write
