import pytest


def pytest_addoption(parser):
    parser.addoption("--e7", action="store_true", default=False, help="include E7 modular data (slow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--e7"):
        return
    skip = pytest.mark.skip(reason="E7 modular data is opt-in; pass --e7")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def include_e7(request):
    return request.config.getoption("--e7")
