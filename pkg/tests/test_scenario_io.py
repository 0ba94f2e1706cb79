import json

import pytest

from core.scenario_io import ScenarioManager, load, save
from utils.validators import ValidationError


def test_save_load_round_trip(two_app_scenario, tmp_path):
    ruta = tmp_path / "s.json"
    save(two_app_scenario, str(ruta))
    cargado = load(str(ruta))
    assert cargado == two_app_scenario
    assert cargado.fingerprint() == two_app_scenario.fingerprint()
    assert cargado.metadata['format_version'] == "1.0"


def test_saved_file_is_stable(generated_n20, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save(generated_n20, str(a))
    save(load(str(a)), str(b))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text(encoding="utf-8").endswith("}\n")


def test_metadata_survives_round_trip(generated_n20, tmp_path):
    ruta = tmp_path / "g.json"
    save(generated_n20, str(ruta))
    metadata = load(str(ruta)).metadata
    assert metadata['seed'] == 7
    assert metadata['n_fog'] == 20
    assert metadata['generator_version'] == generated_n20.metadata['generator_version']


def _escribir(ruta, datos):
    ruta.write_text(json.dumps(datos), encoding="utf-8")
    return str(ruta)


def test_unknown_field_is_rejected_with_path(tiny_scenario, tmp_path):
    datos = tiny_scenario.to_dict()
    datos['fog_devices'][1]['color'] = "rojo"
    with pytest.raises(ValidationError) as error:
        load(_escribir(tmp_path / "x.json", datos))
    assert error.value.path == "fog_devices[1]"
    assert "color" in str(error.value)


def test_missing_field_is_rejected(tiny_scenario, tmp_path):
    datos = tiny_scenario.to_dict()
    del datos['data_centers'][0]['pue']
    with pytest.raises(ValidationError) as error:
        load(_escribir(tmp_path / "x.json", datos))
    assert error.value.path == "data_centers[0]"


def test_wrong_type_is_rejected(tiny_scenario, tmp_path):
    datos = tiny_scenario.to_dict()
    datos['fog_devices'][0]['arrival_rate_lambda'] = "mucho"
    with pytest.raises(ValidationError) as error:
        load(_escribir(tmp_path / "x.json", datos))
    assert error.value.path == "fog_devices[0].arrival_rate_lambda"


def test_non_integer_server_count_is_rejected(tiny_scenario, tmp_path):
    datos = tiny_scenario.to_dict()
    datos['data_centers'][1]['server_count_C'] = [12.5]
    with pytest.raises(ValidationError) as error:
        load(_escribir(tmp_path / "x.json", datos))
    assert error.value.path == "data_centers[1].server_count_C[0]"


def test_unknown_metadata_key_is_rejected(tiny_scenario, tmp_path):
    datos = tiny_scenario.to_dict()
    datos['metadata'] = {'format_version': "1.0", 'timestamp': "hoy"}
    with pytest.raises(ValidationError):
        load(_escribir(tmp_path / "x.json", datos))


def test_invalid_json(tmp_path):
    ruta = tmp_path / "roto.json"
    ruta.write_text("{ no es json", encoding="utf-8")
    with pytest.raises(ValidationError):
        ScenarioManager().cargar_escenario(str(ruta))


def test_fixture_loads(reference_fixture):
    assert (reference_fixture.n_fog, reference_fixture.n_apps, reference_fixture.n_dc) == (20, 2, 3)
    assert reference_fixture.arrays.C[0].tolist() == [2000, 2000, 2000]
