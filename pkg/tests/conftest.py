import numpy as np
import pytest

from fmgame import ModelParams

# Reference point with a wide fee gap: all three regimes show up on a k-sweep.
SET_A = ModelParams(theta=5.0, c=1.0, w_high=2.5, w_low=0.5, eta_cap=1.5, k=0.2)

# Subsidized variant with a narrower fee gap.
SET_B = ModelParams(theta=5.0, c=1.0, w_high=2.5, w_low=0.8, eta_cap=1.5, k=0.2, s=0.5)


@pytest.fixture
def set_a():
    return SET_A


@pytest.fixture
def set_b():
    return SET_B


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
