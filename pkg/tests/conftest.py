import random

import pytest

from rinehart import MuVector, QPStructure, Signature, natural_module
from rinehart.sampling import Sampler


@pytest.fixture
def sig11():
    return Signature(1, 1, True)


@pytest.fixture
def sig12():
    return Signature(1, 2, True)


@pytest.fixture
def sig22():
    return Signature(2, 2, True)


@pytest.fixture
def sampler():
    return Sampler(random.Random(20240601), deg=2)


@pytest.fixture
def structure12():
    """Tensor-module structure at (m, n) = (1, 2), natural module, a shift
    vector with a nonzero imaginary part."""
    from rinehart.scalars import Scalar
    from fractions import Fraction

    sig = Signature(1, 2, False)
    mu = MuVector(1, 2, [Scalar(Fraction(1, 2), Fraction(1, 3)),
                         Scalar(Fraction(-2, 3))] + [Scalar(0)] * 2)
    return QPStructure(sig, natural_module(1, 2), mu)
