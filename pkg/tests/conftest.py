import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--heavy",
        action="store_true",
        default=False,
        help="run the long exact-girth instances",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--heavy"):
        return
    skip = pytest.mark.skip(reason="heavy instance, pass --heavy to run")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)
