import math

import pytest

from kleinian.groups import make_schottky_group, make_tangent_inversion_group, pair_rules
from kleinian.moebius import Circle


@pytest.fixture(scope="session")
def tangent4():
    s2 = math.sqrt(2.0)
    circles = [Circle(complex(s2, 0), 1.0), Circle(complex(0, s2), 1.0),
               Circle(complex(-s2, 0), 1.0), Circle(complex(0, -s2), 1.0)]
    gs = make_tangent_inversion_group(circles)
    return gs, pair_rules(gs)


@pytest.fixture(scope="session")
def schottky2():
    gs = make_schottky_group(
        Circle(-2 + 0j, 0.5), Circle(2 + 0j, 0.5),
        Circle(-2j, 0.5), Circle(2j, 0.5),
    )
    return gs, pair_rules(gs)
