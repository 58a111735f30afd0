"""Shared space builders for the test suite.

Random spaces use exactly representable breakpoints (integers) so that the
rational oracle replays the same inputs bit for bit.
"""

import random

import pytest
from hypothesis import strategies as st

from mdspline import MDSpace


def random_space(seed: int, max_breakpoints: int = 8, max_degree: int = 12) -> MDSpace:
    """Deterministic valid space: integer breakpoints, degrees >= 1."""
    rng = random.Random(seed)
    q = rng.randint(0, max_breakpoints)
    lo = rng.randint(-20, 20)
    knots = [lo]
    for _ in range(q + 1):
        knots.append(knots[-1] + rng.randint(1, 6))
    degrees = tuple(rng.randint(1, max_degree) for _ in range(q + 1))
    conts = tuple(rng.randint(0, min(degrees[i], degrees[i + 1]))
                  for i in range(q))
    return MDSpace.create((float(knots[0]), float(knots[-1])),
                          tuple(float(v) for v in knots[1:-1]), degrees, conts)


@pytest.fixture
def small_spaces():
    """A spread of hand-picked shapes: conventional, degree jumps both ways,
    C0 seams, single section."""
    return [
        MDSpace.create((0.0, 1.0), (), (3,), ()),
        MDSpace.create((0.0, 2.0), (1.0,), (2, 2), (1,)),
        MDSpace.create((0.0, 2.0), (1.0,), (2, 1), (1,)),
        MDSpace.create((0.0, 2.0), (1.0,), (1, 3), (1,)),
        MDSpace.create((2.0, 4.0), (3.0,), (2, 1), (0,)),
        MDSpace.create((0.0, 4.0), (1.0, 2.0, 3.0), (2, 2, 4, 3), (1, 2, 3)),
        MDSpace.create((0.0, 3.0), (1.0, 2.0), (4, 2, 3), (2, 1)),
    ]


@st.composite
def space_strategy(draw, max_breakpoints=3, max_degree=5):
    seed = draw(st.integers(min_value=0, max_value=10 ** 6))
    return random_space(seed, max_breakpoints, max_degree)
