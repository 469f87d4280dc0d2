import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")


def rel_err(a, b) -> float:
    a = complex(a)
    b = complex(b)
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def ulp_diff(a: float, b: float) -> float:
    """Distance between two floats in units of the larger one's ulp."""
    scale = math.ulp(max(abs(a), abs(b), np.finfo(float).tiny))
    return abs(a - b) / scale


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
