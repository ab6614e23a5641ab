import pytest

from hyperwalk import presets


@pytest.fixture(scope="session")
def c4():
    return presets.c4_hypergroup()


@pytest.fixture(scope="session")
def z3():
    return presets.z3_hypergroup()


@pytest.fixture(scope="session")
def s3_classes():
    return presets.s3_class_hypergroup()


@pytest.fixture(scope="session")
def zlattice8():
    return presets.zlattice_hypergroup(8)
