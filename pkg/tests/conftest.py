import pytest

from starkhhg import molecule as mol
from starkhhg import pulse as pls


@pytest.fixture(scope="session")
def co():
    return mol.preset("CO")


@pytest.fixture(scope="session")
def pulse2t():
    """Two-cycle 800 nm sine-carrier pulse at 0.071 au peak field."""
    return pls.LaserPulse.from_wavelength(800.0, 2.0, peak_field_au=0.071)
