import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gngshape.image import BinaryImage


@pytest.fixture
def solid_square() -> BinaryImage:
    mask = np.zeros((60, 60), dtype=bool)
    mask[10:50, 10:50] = True
    return BinaryImage(mask)


@pytest.fixture
def solid_disk() -> BinaryImage:
    ys, xs = np.mgrid[0:80, 0:80]
    return BinaryImage((xs - 40.0) ** 2 + (ys - 40.0) ** 2 <= 28.0**2)
