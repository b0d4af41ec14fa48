"""Shared helpers for the test suite."""

import numpy as np
import pytest

from abelian_spectra import Group, GroupFunction, make_group


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)


def random_function(group: Group, rng: np.random.Generator) -> GroupFunction:
    values = rng.normal(size=group.size) + 1j * rng.normal(size=group.size)
    return GroupFunction(group, values)


def random_positive_type(group: Group, rng: np.random.Generator) -> GroupFunction:
    """A positive-type function with a uniformly positive transform."""
    from abelian_spectra import DualFunction, inverse_fourier

    spectrum = rng.uniform(0.5, 2.0, size=group.size)
    return inverse_fourier(DualFunction(group, spectrum.astype(complex)))


SMALL_ORDER_LISTS = [(1,), (2,), (3,), (4,), (5,), (2, 2), (2, 3), (2, 4), (2, 2, 2), (3, 3)]


@pytest.fixture(params=SMALL_ORDER_LISTS, ids=lambda o: "x".join(map(str, o)))
def small_group(request):
    return make_group(request.param)
