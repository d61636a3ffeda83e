import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from midpointlab.graphs import build_levels


@pytest.fixture(scope="session")
def levels2():
    """n0 = 2 hierarchy through level 6 (the acceptance scale)."""
    return build_levels(2, 6)


@pytest.fixture(scope="session")
def levels3():
    """n0 = 3 hierarchy through level 4."""
    return build_levels(3, 4)


@pytest.fixture(scope="session")
def example_pair(levels2):
    """The doubled-midpoint pair whose level-4 and level-5 distances agree."""
    from midpointlab.vertex import leaf, midpoint

    v = midpoint(leaf(0), leaf(1))
    a = midpoint(leaf(0), v)
    b = midpoint(v, leaf(1))
    x = midpoint(a, leaf(1))
    xp = midpoint(v, b)
    return x, xp
