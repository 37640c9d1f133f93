import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from csres import (
    PotentialModel,
    RadialBasisSpec,
    build_scaled_matrix,
    encode_gray,
)


@pytest.fixture(scope="session")
def schematic():
    return PotentialModel.schematic()


@pytest.fixture(scope="session")
def alpha_alpha():
    return PotentialModel.alpha_alpha()


@pytest.fixture(scope="session")
def small_gauss_basis():
    # five geometric Gaussians, the smallest case the quantum pipeline runs
    return RadialBasisSpec.gaussian(5, 1, 1.0, 4.0)


@pytest.fixture(scope="session")
def h5_matrix(small_gauss_basis, schematic):
    """5x5 rotated schematic matrix in the orthonormal basis (theta = 24 deg)."""
    return build_scaled_matrix(small_gauss_basis, schematic, 24.0).matrix


@pytest.fixture(scope="session")
def h5_gray(h5_matrix):
    return encode_gray(h5_matrix)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
