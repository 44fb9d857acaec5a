import random
from fractions import Fraction

import pytest

from poissonkit import lie
from poissonkit.poly import MultiPoly
from poissonkit.poisson import PolyBivector, lie_poisson


@pytest.fixture
def sl2():
    return lie.sl2()


@pytest.fixture
def sl2_lp(sl2):
    return lie_poisson(sl2)


@pytest.fixture
def plane():
    """Constant symplectic bivector on the (x, y) plane."""
    return PolyBivector(("x", "y"), {(0, 1): MultiPoly.constant(("x", "y"), 1)})


def rand_poly(rng, variables, gens, max_terms=4, max_deg=2, coeff_bound=4):
    acc = MultiPoly.zero(variables)
    for _ in range(rng.randint(1, max_terms)):
        t = MultiPoly.constant(variables, Fraction(rng.randint(-coeff_bound, coeff_bound),
                                                   rng.randint(1, 3)))
        for _ in range(rng.randint(0, max_deg)):
            t = t * gens[rng.randint(0, len(gens) - 1)]
        acc = acc + t
    return acc


def rand_point(rng, n, scale=6, denom_power=2):
    return [Fraction(rng.randint(-scale, scale), 2 ** rng.randint(0, denom_power))
            for _ in range(n)]


@pytest.fixture
def rng():
    return random.Random(20240817)
