"""Shared fixtures: one mid-size regular graph with a valid partition.

Building the (2000, 666) instance once keeps the construction tests fast;
everything else constructs its own tiny graphs inline.
"""

import pytest

import irrstrength as ir
from irrstrength.partition import derive_params, resample_until_valid


def cycle(n):
    return ir.generate(ir.GraphFamilySpec("cycle", n=n))


def path(n):
    return ir.Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return ir.generate(ir.GraphFamilySpec("complete", n=n))


@pytest.fixture(scope="session")
def reg2000():
    return ir.generate(
        ir.GraphFamilySpec("random-regular", n=2000, d=666, seed=1)
    )


@pytest.fixture(scope="session")
def params2000():
    return derive_params(2000, 666, 0.1, 0.04)


@pytest.fixture(scope="session")
def part2000(reg2000, params2000):
    part, _used = resample_until_valid(reg2000, params2000, seed=1, budget=300)
    return part
