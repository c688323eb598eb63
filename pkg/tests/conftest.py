import numpy as np
import pytest

from curvemate import CurveSpec, build_curve, frenet_apparatus, integrate_frenet_ode


@pytest.fixture(scope="session")
def helix11():
    return build_curve(CurveSpec.helix(1.0, 1.0))


@pytest.fixture(scope="session")
def helix21():
    return build_curve(CurveSpec.helix(2.0, 1.0))


@pytest.fixture(scope="session")
def circle1():
    return build_curve(CurveSpec.circle(1.0))


@pytest.fixture(scope="session")
def helix11_data(helix11):
    return frenet_apparatus(helix11)


@pytest.fixture(scope="session")
def helix21_data(helix21):
    return frenet_apparatus(helix21)


@pytest.fixture(scope="session")
def circle1_data(circle1):
    return frenet_apparatus(circle1)


@pytest.fixture(scope="session")
def salkowski_fixture():
    """Constant curvature 1, linearly growing torsion."""
    return integrate_frenet_ode(1.0, lambda s: s, 4.0)


@pytest.fixture(scope="session")
def anti_salkowski_fixture():
    """Linearly growing curvature, constant torsion 1."""
    return integrate_frenet_ode(lambda s: s + 2.0, 1.0, 4.0)


@pytest.fixture(scope="session")
def salkowski_data(salkowski_fixture):
    return frenet_apparatus(salkowski_fixture)


@pytest.fixture(scope="session")
def anti_salkowski_data(anti_salkowski_fixture):
    return frenet_apparatus(anti_salkowski_fixture)


@pytest.fixture(scope="session")
def unit_sphere_fixture():
    """Prescribed-curvature curve on a unit sphere: 1/kappa = cos(0.5 s + 0.3)."""
    tau0, theta0 = 0.5, 0.3
    length = 0.9 * (np.pi / 2 - theta0) / tau0
    curve = integrate_frenet_ode(lambda s: 1.0 / np.cos(tau0 * s + theta0), tau0, length)
    return curve
