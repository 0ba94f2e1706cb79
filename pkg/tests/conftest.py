import os
import tempfile

os.environ.setdefault("FOGCLOUD_LOG_DIR", tempfile.mkdtemp(prefix="fogcloud-logs-"))

import numpy as np
import pytest

from core.model import Application, DataCenter, FogDevice, Scenario
from core.scenario_io import ScenarioManager
from modules.generator import GenSpec, generate

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def make_scenario(lam, v, s=(0.25,), t_max=(0.5,), tau=(1.0,), omega=(3e-8,), C=((20,), (20,)),
                  mu=((3.0,), (2.7,)), p_idle=((110.0,), (95.0,)), p_peak=((220.0,), (190.0,)),
                  pue=(1.13, 1.14), A=(1e5, 0.9e5), nu=(30.0, 35.0), B=(0.005, 0.005), L=None,
                  q_peak=None, S=None, h=None, T=3600.0) -> Scenario:
    """Escenario pequeño; los parámetros por centro de datos van en filas k"""
    lam = np.asarray(lam, dtype=float)
    v = np.asarray(v, dtype=float)
    N, J = lam.shape
    K = len(pue)
    L = np.full((N, K), 20.0) if L is None else np.asarray(L, dtype=float)
    q_peak = [470.0] * N if q_peak is None else q_peak
    S = [45.0] * N if S is None else S
    h = [1.0] * N if h is None else h

    apps = [Application(j + 1, s[j], t_max[j], tau[j], omega[j]) for j in range(J)]
    fogs = [FogDevice(i + 1, tuple(v[i]), 0.5 * q_peak[i], q_peak[i], S[i], h[i], tuple(lam[i]))
            for i in range(N)]
    dcs = [DataCenter(k + 1, tuple(C[k]), tuple(mu[k]), tuple(p_idle[k]), tuple(p_peak[k]), pue[k], A[k],
                      nu[k], B[k], tuple(L[:, k])) for k in range(K)]
    return Scenario(apps, fogs, dcs, T)


@pytest.fixture
def tiny_scenario():
    """N=2, J=1, K=2: cotas de fog 8 y 9 req/s, capacidades de nube 54 y ~46.3 req/s"""
    return make_scenario(lam=[[30.0], [20.0]], v=[[2.5], [2.75]], L=[[15.0, 30.0], [25.0, 12.0]])


@pytest.fixture
def two_app_scenario():
    """N=3, J=2, K=3 con los valores de referencia y capacidades reducidas"""
    return make_scenario(
        lam=[[40.0, 25.0], [55.0, 30.0], [35.0, 20.0]],
        v=[[2.5, 2.75], [3.0, 2.25], [2.625, 2.875]],
        s=(0.25, 0.5), t_max=(0.5, 0.6), tau=(1.0, 1.0), omega=(3e-8, 3e-8),
        C=((40, 30), (40, 30), (40, 30)),
        mu=((3.0, 2.625), (2.7, 2.4), (2.85, 2.25)),
        p_idle=((110.0, 100.0), (95.0, 90.0), (120.0, 100.0)),
        p_peak=((220.0, 200.0), (190.0, 180.0), (240.0, 200.0)),
        pue=(1.13, 1.14, 1.15), A=(1e5, 0.9e5, 0.8e5), nu=(30.0, 35.0, 40.0), B=(0.005, 0.005, 0.005),
        L=[[12.0, 25.0, 38.0], [30.0, 18.0, 22.0], [35.0, 28.0, 11.0]],
        q_peak=[450.0, 480.0, 495.0], S=[35.0, 50.0, 58.0],
    )


@pytest.fixture
def reference_fixture():
    return ScenarioManager().cargar_escenario(os.path.join(FIXTURES, "reference_n20.json"))


@pytest.fixture(scope="session")
def generated_n20():
    return generate(GenSpec(n_fog=20, seed=7))
