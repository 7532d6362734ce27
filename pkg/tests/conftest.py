import pytest

from ambientkit.ambient.calculus import FlatModel, verify_sl2_commutator


def pytest_sessionstart(session):
    # every oracle test depends on the Laplacian sign convention
    model = FlatModel(3)
    if not verify_sl2_commutator(model, 1, model.constant()):
        pytest.exit("[Lap, Q] 1 != -2(n + 2): Laplacian sign convention is wrong", returncode=3)
