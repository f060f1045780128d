"""Shared fixtures: numeric settings, channel timeline rows, reference configs."""

import numpy as np
import pytest

from satoffload import NetworkConfig, QuadratureSpec, default_timeline


@pytest.fixture(scope="session")
def spec():
    return QuadratureSpec()

@pytest.fixture(scope="session")
def timeline():
    return default_timeline()

@pytest.fixture(scope="session")
def rows(timeline):
    """All channel states of the bundled 500-km pass timeline."""
    return list(timeline.states)

@pytest.fixture(scope="session")
def state0(timeline):
    return timeline.states[0]

@pytest.fixture(scope="session")
def state130(timeline):
    return timeline.states[-1]

@pytest.fixture(scope="session")
def sparse_cfg():
    """Sparse terrestrial deployment, mid-size constellation."""
    return NetworkConfig(r_s=500.0, n_sats=1000.0, b_intensity=0.3, p_sat_tx=8.0)

@pytest.fixture(scope="session")
def dense_cfg():
    """Dense terrestrial deployment, large constellation."""
    return NetworkConfig(r_s=500.0, n_sats=1e4, b_intensity=1.0, p_sat_tx=8.0)

@pytest.fixture
def rng():
    return np.random.default_rng(20250823)
