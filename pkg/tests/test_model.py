from dataclasses import replace

import numpy as np
import pytest

from core.model import CoefficientError, FogDevice, derive_coefficients, energy_factor, without_fog
from modules.generator import apply_overrides
from tests.conftest import make_scenario


def test_energy_factor_one_hour():
    assert energy_factor(3600.0) == pytest.approx(1e-6)
    assert energy_factor(1800.0) == pytest.approx(0.5e-6)


def test_fog_device_total_rate_is_exact_sum():
    fog = FogDevice(1, (2.5, 2.75), 200.0, 400.0, 40.0, 1.0, (10.0, 5.0))
    assert fog.total_rate_v_i == 5.25
    assert fog.marginal_power_q == 200.0


def test_arrays_shapes_and_read_only(two_app_scenario):
    x = two_app_scenario.arrays
    assert x.lam.shape == (3, 2)
    assert x.C.shape == (2, 3)
    assert x.L.shape == (3, 3)
    assert x.C[1, 2] == 30
    assert x.mu[0, 1] == 2.7
    with pytest.raises(ValueError):
        x.lam[0, 0] = 1.0


def test_arrays_reject_length_mismatch():
    escenario = make_scenario(lam=[[10.0]], v=[[2.5]], L=[[10.0, 10.0]])
    malo = replace(escenario, fog_devices=(FogDevice(1, (2.5, 2.6), 200.0, 400.0, 40.0, 1.0, (10.0,)),))
    with pytest.raises(ValueError):
        malo.arrays


def test_derived_coefficients_match_formulas(tiny_scenario):
    coef = derive_coefficients(tiny_scenario)
    x = tiny_scenario.arrays

    assert coef.a_jk[0, 0] == pytest.approx(110.0 + 0.13 * 220.0)
    assert coef.b_jk[0, 1] == pytest.approx(95.0)
    assert coef.e_jk[0, 0] == pytest.approx(1.0 / (0.5 - 1.0 / 3.0))
    assert coef.alpha_ub_ij[:, 0] == pytest.approx([8.0, 9.0])
    assert coef.server_cap_jk[0, 0] == pytest.approx(60.0 - 6.0)

    energia = 1e-6
    w = (1.0 * 0.005 + 3e-8 * 30.0 * 3600.0
         + 35.0 * energia / 2.7 * (coef.a_jk[0, 1] + coef.b_jk[0, 1]))
    assert coef.unit_dispatch_cost_w_ijk[0, 0, 1] == pytest.approx(w)
    u = 1.0 * 45.0 * (470.0 - 235.0) * energia / 2.75 * 0.25
    assert coef.unit_fog_cost_u_ij[1, 0] == pytest.approx(u)
    assert coef.unit_dispatch_cost_w_ijk.shape == (x.lam.shape[0], 1, 2)


def test_alpha_upper_bound_clipped_at_zero():
    escenario = make_scenario(lam=[[5.0]], v=[[0.4]], L=[[10.0, 10.0]])
    assert derive_coefficients(escenario).alpha_ub_ij[0, 0] == 0.0


def test_delay_bound_below_service_time_raises():
    escenario = make_scenario(lam=[[5.0]], v=[[2.5]], t_max=(0.3,), L=[[10.0, 10.0]])
    with pytest.raises(CoefficientError):
        derive_coefficients(escenario)


def test_without_fog_zeroes_only_alpha_bound(tiny_scenario):
    coef = derive_coefficients(tiny_scenario)
    base = without_fog(coef)
    assert np.all(base.alpha_ub_ij == 0.0)
    assert np.array_equal(base.unit_dispatch_cost_w_ijk, coef.unit_dispatch_cost_w_ijk)


def test_fingerprint_tracks_content_not_metadata(tiny_scenario):
    copia = replace(tiny_scenario, metadata={"seed": 3})
    assert copia.fingerprint() == tiny_scenario.fingerprint()
    assert copia == tiny_scenario
    assert apply_overrides(tiny_scenario, h=2.0).fingerprint() != tiny_scenario.fingerprint()


def test_required_rate_exceeds_inverse_delay_and_falls_with_it():
    holgadas = [derive_coefficients(make_scenario(lam=[[30.0]], v=[[2.5]], t_max=(t,))).e_jk
                for t in (0.4, 0.5, 0.75, 1.5)]
    for t, e in zip((0.4, 0.5, 0.75, 1.5), holgadas):
        assert np.all(e > 1.0 / t)
    for antes, despues in zip(holgadas, holgadas[1:]):
        assert np.all(despues < antes)


def test_coefficients_are_a_pure_function(two_app_scenario):
    a = derive_coefficients(two_app_scenario)
    b = derive_coefficients(two_app_scenario)
    for campo in a.__dataclass_fields__:
        assert np.array_equal(getattr(a, campo), getattr(b, campo)), campo
