import pytest

import biphoton


@pytest.fixture(scope="session")
def gauss_model_grid():
    """Normalized double-Gaussian model at t = 0.5 with its default grid."""
    grid = biphoton.build_radial_grid(200, 0.0, biphoton.default_k_max(0.5))
    model = biphoton.normalize(
        biphoton.AmplitudeModel.from_b_sigma("gaussian", 0.5), grid
    )
    return model, grid


@pytest.fixture(scope="session")
def gauss_kernels(gauss_model_grid):
    """Angular sectors m = 0 .. 24 of the t = 0.5 double-Gaussian."""
    model, grid = gauss_model_grid
    return biphoton.angular_fourier(model, grid, 24, 512)


@pytest.fixture(scope="session")
def sinc_quarter():
    """Full decomposition of the sinc amplitude at t = 0.25 (default grid)."""
    return biphoton.decompose("sinc", 0.25)
