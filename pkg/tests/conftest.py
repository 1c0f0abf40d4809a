import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from fractions import Fraction

import pytest

from satlat.fields import GF, QQ
from satlat.ring import QRing


@pytest.fixture
def qplane2():
    """Quantum plane yx = 2xy over QQ (x < y)."""
    return QRing(("x", "y"), QQ, {(0, 1): Fraction(2)})


@pytest.fixture
def qplane_minus1():
    """Quantum plane yx = -xy over QQ."""
    return QRing(("x", "y"), QQ, {(0, 1): Fraction(-1)})


@pytest.fixture
def kxy():
    """Commutative k[x, y] over QQ."""
    return QRing(("x", "y"), QQ)


@pytest.fixture
def badunion_ring():
    """Four variables, q12 = 2, q13 = q14 = 1/2, the rest commute."""
    return QRing(
        ("x1", "x2", "x3", "x4"),
        QQ,
        {(0, 1): Fraction(2), (0, 2): Fraction(1, 2), (0, 3): Fraction(1, 2)},
    )


@pytest.fixture
def qplane_gf5():
    """Quantum plane yx = 2xy over GF(5)."""
    return QRing(("x", "y"), GF(5), {(0, 1): 2})
