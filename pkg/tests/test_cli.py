import json
import os

import pytest

from core.scenario_io import save
from tests.conftest import FIXTURES, make_scenario
from ui.cli import main
from ui.reports import read_csv

FIXTURE = os.path.join(FIXTURES, "reference_n20.json")


@pytest.fixture
def tiny_file(tiny_scenario, tmp_path):
    ruta = tmp_path / "tiny.json"
    save(tiny_scenario, str(ruta))
    return str(ruta)


def test_generate_is_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["generate", "--n", "12", "--seed", "5", "--out", str(a)]) == 0
    assert main(["generate", "--n", "12", "--seed", "5", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    datos = json.loads(a.read_text(encoding="utf-8"))
    assert datos['metadata']['seed'] == 5
    assert len(datos['fog_devices']) == 12


def test_solve_hits_iteration_cap_and_writes_outputs(tmp_path):
    salida, traza, costos = tmp_path / "r.json", tmp_path / "t.csv", tmp_path / "c.csv"
    codigo = main(["solve", "--scenario", FIXTURE, "--out", str(salida), "--trace", str(traza),
                   "--costs", str(costos), "--max-iter", "5", "--rho-auto"])
    assert codigo == 2
    datos = json.loads(salida.read_text(encoding="utf-8"))
    assert datos['kind'] == 'solve'
    assert datos['termination_reason'] == 'iteration-cap'
    assert datos['iterations'] == 5
    assert datos['baseline'] is False
    assert traza.read_text(encoding="utf-8").startswith("# fogcloud-trace v1\niteration,objective,")
    filas = read_csv(str(costos))
    assert len(filas) == 1
    assert float(filas[0]['total']) == pytest.approx(datos['costs']['total'])


def test_solve_without_timing_is_byte_identical(tmp_path):
    archivos = []
    for nombre in ("a", "b"):
        salida, traza = tmp_path / f"{nombre}.json", tmp_path / f"{nombre}.csv"
        main(["solve", "--scenario", FIXTURE, "--out", str(salida), "--trace", str(traza),
              "--max-iter", "30", "--trace-every", "7", "--no-timing"])
        archivos.append((salida.read_bytes(), traza.read_bytes()))
    assert archivos[0] == archivos[1]
    filas = read_csv(str(tmp_path / "a.csv"))
    assert [int(f['iteration']) for f in filas] == [1, 7, 14, 21, 28, 30]
    assert all(float(f['wall_time_ms']) == 0.0 for f in filas)


def test_solve_baseline_uses_no_fog(tiny_file, tmp_path):
    salida = tmp_path / "base.json"
    main(["solve", "--scenario", tiny_file, "--out", str(salida), "--baseline", "--max-iter", "50"])
    datos = json.loads(salida.read_text(encoding="utf-8"))
    assert datos['baseline'] is True
    assert all(a == 0.0 for fila in datos['alpha'] for a in fila)
    assert datos['costs']['gamma4'] == 0.0


def test_compare_report(tiny_file, tmp_path):
    salida, reporte = tmp_path / "cmp.csv", tmp_path / "cmp.json"
    codigo = main(["compare", "--scenario", tiny_file, "--out", str(salida), "--json", str(reporte),
                   "--max-iter", "5"])
    assert codigo == 2
    filas = read_csv(str(salida))
    assert [f['solution'] for f in filas] == ['pjadmm', 'oracle', 'baseline']
    assert float(filas[1]['relative_gap']) == 0.0
    assert float(filas[2]['total']) >= float(filas[1]['total'])
    datos = json.loads(reporte.read_text(encoding="utf-8"))
    assert datos['kind'] == 'compare'
    assert len(datos['solutions']) == 3


def test_sweep_is_independent_of_worker_count(tiny_file, tmp_path):
    salidas = []
    for workers in ("1", "2"):
        salida = tmp_path / f"sweep{workers}.csv"
        codigo = main(["sweep", "--scenario", tiny_file, "--param", "h", "--values", "1", "2", "4",
                       "--workers", workers, "--out", str(salida), "--max-iter", "40"])
        assert codigo in (0, 2)
        salidas.append(salida.read_bytes())
    assert salidas[0] == salidas[1]
    filas = read_csv(str(tmp_path / "sweep1.csv"))
    assert [float(f['value']) for f in filas] == [1.0, 2.0, 4.0]
    assert all(f['baseline_total'] != '' for f in filas)


def test_sweep_without_baseline_leaves_rcr_empty(tiny_file, tmp_path):
    salida = tmp_path / "s.csv"
    main(["sweep", "--scenario", tiny_file, "--param", "rho", "--values", "0.001", "--no-baseline",
          "--out", str(salida), "--max-iter", "10"])
    fila = read_csv(str(salida))[0]
    assert fila['rcr'] == ''
    assert fila['baseline_total'] == ''


@pytest.mark.parametrize("argv", [
    [],
    ["solve"],
    ["sweep", "--scenario", FIXTURE, "--param", "gamma", "--values", "1", "--out", "x.csv"],
    ["generate", "--n", "abc", "--out", "x.json"],
])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_empty_sweep_values_is_usage_error(tiny_file, tmp_path):
    assert main(["sweep", "--scenario", tiny_file, "--param", "h", "--values",
                 "--out", str(tmp_path / "s.csv")]) == 1


def test_missing_scenario_file_is_usage_error(tmp_path):
    assert main(["solve", "--scenario", str(tmp_path / "no.json"), "--out", str(tmp_path / "r.json")]) == 1


@pytest.mark.parametrize("extra", [["--delta", "2.5"], ["--rho", "-1"], ["--patience", "0"]])
def test_bad_solver_parameters_exit_4(tiny_file, tmp_path, extra):
    assert main(["solve", "--scenario", tiny_file, "--out", str(tmp_path / "r.json")] + extra) == 4


def test_generate_with_bad_count_exits_4(tmp_path):
    assert main(["generate", "--n", "0", "--out", str(tmp_path / "g.json")]) == 4


def test_invalid_scenario_exits_3(tmp_path):
    ruta = tmp_path / "malo.json"
    save(make_scenario(lam=[[200.0], [100.0]], v=[[2.5], [2.5]], L=[[10.0, 10.0], [10.0, 10.0]]), str(ruta))
    assert main(["solve", "--scenario", str(ruta), "--out", str(tmp_path / "r.json")]) == 3


def test_malformed_scenario_exits_3(tmp_path):
    ruta = tmp_path / "roto.json"
    ruta.write_text('{"applications": []}', encoding="utf-8")
    assert main(["solve", "--scenario", str(ruta), "--out", str(tmp_path / "r.json")]) == 3


def test_oversized_compare_exits_4(tmp_path):
    grande = tmp_path / "n400.json"
    assert main(["generate", "--n", "400", "--seed", "1", "--out", str(grande)]) == 0
    assert main(["compare", "--scenario", str(grande), "--out", str(tmp_path / "c.csv")]) == 4
