import numpy as np
import pytest

from kickedspin import ModelParams

# beta for mu = theta = pi/2: 2 artanh(sin(pi/4)) = ln(3 + 2 sqrt(2))
BETA_CANONICAL = 1.762747174039086


@pytest.fixture
def canonical():
    """The reference parameter point used throughout: mu = theta = pi/2, phi = 0."""
    return ModelParams(mu=np.pi / 2, theta=np.pi / 2, phi=0.0)


@pytest.fixture
def generic():
    """A parameter point with alpha != 0 and no special symmetry."""
    return ModelParams(mu=2.0, theta=1.2, phi=0.7)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_params(rng, min_beta=0.0):
    """Random non-degenerate model parameters (rejection-sampled on beta)."""
    from kickedspin import alpha_beta

    while True:
        p = ModelParams(mu=rng.uniform(-3.0, 3.0),
                        theta=rng.uniform(0.05, np.pi - 0.05),
                        phi=rng.uniform(0.0, 2 * np.pi))
        _, beta = alpha_beta(p)
        if abs(beta) > min_beta:
            return p
