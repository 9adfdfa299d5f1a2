import numpy as np
import pytest

from sqzmet.core import PhysicalConfig


def random_config(rng: np.random.Generator, tau_range=(0.05, 5.0)) -> PhysicalConfig:
    """One generic parameter set; avoids the alpha endpoints where nothing
    depends on phi."""
    return PhysicalConfig(
        tau=float(rng.uniform(*tau_range)),
        temp=float(rng.choice([0.0, rng.uniform(0.05, 2.0)], p=[0.2, 0.8])),
        r=float(rng.choice([0.0, rng.uniform(0.05, 2.0)], p=[0.2, 0.8])),
        phi_sq=float(rng.uniform(0.0, 2.0 * np.pi)),
        mu=float(rng.uniform(0.0, 1.0)),
        alpha=float(rng.uniform(0.05, 0.995)),
        phi=float(rng.uniform(0.0, 2.0 * np.pi)),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260809)
