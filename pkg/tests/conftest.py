"""Shared fixtures: reference oracles and helpers used across test files."""

import pytest

from cardinal_scale import GeneratorSpec, make_oracle, standard_suite


@pytest.fixture
def linear_oracle():
    return make_oracle(GeneratorSpec.linear(1.0, 0.0))


@pytest.fixture
def power2_oracle():
    return make_oracle(GeneratorSpec.power(2.0))


@pytest.fixture
def suite_oracles():
    return {name: make_oracle(spec) for name, spec in standard_suite().items()}


@pytest.fixture
def flat_pwl_spec():
    # flat on [0.4, 0.6]; strictly increasing elsewhere
    return GeneratorSpec.piecewise_linear(
        [(0.0, 0.0), (0.4, 0.4), (0.6, 0.4), (1.0, 0.8)]
    )
