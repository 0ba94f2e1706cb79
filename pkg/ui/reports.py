"""
Escritura de reportes: CSV versionados y JSON de resultados

Cada CSV empieza con una línea de comentario que identifica el esquema
(`# fogcloud-<nombre> v<versión>`) seguida de la cabecera. Los números se
escriben con repr() para que dos ejecuciones iguales produzcan archivos
idénticos byte a byte.
"""

import csv
import json
import os
from typing import Dict, Iterable, List, Mapping, Optional

import numpy as np

from config.settings import APP_CONFIG, CSV_SCHEMAS
from utils.logger import get_logger

logger = get_logger("reports")


def schema_header(nombre: str) -> str:
    """Línea de versión del esquema CSV"""
    return f"# fogcloud-{nombre} v{CSV_SCHEMAS[nombre]['version']}"


def _preparar_ruta(path: str):
    carpeta = os.path.dirname(os.path.abspath(path))
    os.makedirs(carpeta, exist_ok=True)


def _a_nativo(valor):
    if isinstance(valor, np.ndarray):
        return valor.tolist()
    if isinstance(valor, np.generic):
        return valor.item()
    raise TypeError(f"tipo no serializable: {type(valor).__name__}")


def write_csv(nombre: str, filas: Iterable[Mapping[str, object]], path: str) -> int:
    """
    Escribe filas con las columnas del esquema `nombre`.

    Returns:
        int: Número de filas escritas

    Raises:
        KeyError: Si el esquema no existe o a una fila le falta una columna
    """
    columnas = CSV_SCHEMAS[nombre]['columns']
    _preparar_ruta(path)
    n = 0
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(schema_header(nombre) + "\n")
        escritor = csv.DictWriter(f, fieldnames=columnas, lineterminator="\n", extrasaction='ignore')
        escritor.writeheader()
        for fila in filas:
            escritor.writerow({c: _formatear(fila[c]) for c in columnas})
            n += 1
    logger.debug(f"CSV '{nombre}' escrito en {path} ({n} filas)")
    return n


def _formatear(valor):
    if isinstance(valor, (float, np.floating)):
        return repr(float(valor))
    if isinstance(valor, np.integer):
        return int(valor)
    return valor


def read_csv(path: str) -> List[Dict[str, str]]:
    """Lee un CSV escrito por write_csv (omite la línea de esquema)"""
    with open(path, 'r', encoding='utf-8', newline='') as f:
        lineas = [linea for linea in f if not linea.startswith('#')]
    return list(csv.DictReader(lineas))


def write_trace_csv(traces, path: str, record_timing: bool = True) -> int:
    """Traza de convergencia; sin cronometraje la columna wall_time_ms vale 0"""
    filas = []
    for traza in traces:
        fila = traza.to_row()
        if not record_timing:
            fila['wall_time_ms'] = 0.0
        filas.append(fila)
    return write_csv('trace', filas, path)


def write_costs_csv(costs, path: str) -> int:
    return write_csv('costs', [costs.to_row()], path)


def write_json(datos: Dict[str, object], path: str, kind: Optional[str] = None):
    """JSON con sangría 2 y salto de línea final; `kind` se anota junto a la versión de formato"""
    _preparar_ruta(path)
    contenido = dict(datos)
    if kind is not None:
        contenido = {'format_version': APP_CONFIG['result_format_version'], 'kind': kind, **contenido}
    with open(path, 'w', encoding='utf-8') as f:
        f.write(json.dumps(contenido, indent=2, ensure_ascii=False, default=_a_nativo))
        f.write("\n")
    logger.debug(f"JSON escrito en {path}")


def comparison_rows(proposed, oracle_costs, baseline_costs) -> List[Dict[str, object]]:
    """
    Filas del reporte de comparación (propuesto, óptimo LP, línea base).

    relative_gap compara objetivos reducidos contra el óptimo LP; la fila
    de la línea base lo mide igual, así que también refleja el ahorro del fog.
    """
    optimo = oracle_costs.reduced_objective if oracle_costs is not None else None
    filas = []
    for etiqueta, costos in (('pjadmm', proposed), ('oracle', oracle_costs), ('baseline', baseline_costs)):
        if costos is None:
            continue
        fila = {'solution': etiqueta, **costos.to_row()}
        if optimo is None:
            fila['relative_gap'] = ''
        else:
            fila['relative_gap'] = (costos.reduced_objective - optimo) / max(1.0, abs(optimo))
        filas.append(fila)
    return filas


def summary_text(result, baseline_costs=None) -> str:
    """Resumen legible de una resolución para la consola"""
    costos = result.costs
    texto = "📊 RESULTADO PJ-ADMM\n" + "=" * 60 + "\n"
    estado = "✅ convergió" if result.converged else "⚠️ tope de iteraciones"
    texto += f"{estado} en {result.iterations} iteraciones (ϖ={result.feasibility_metric:.4g})\n\n"
    texto += f"  Γ1 energía:       {costos.gamma1_energy:14.6f} $\n"
    texto += f"  Γ2 ancho de banda:{costos.gamma2_bandwidth:14.6f} $\n"
    texto += f"  Γ3 latencia:      {costos.gamma3_latency_loss:14.6f} $\n"
    texto += f"  Γ4 compensación:  {costos.gamma4_compensation:14.6f} $\n"
    texto += f"  Total:            {costos.total:14.6f} $\n"
    texto += f"  Carga fog:        {result.workload.fog_workload:14.4f} Mbps ({result.workload.fog_share:.2%})\n"
    if baseline_costs is not None and baseline_costs.total > 0:
        rcr = (baseline_costs.total - costos.total) / baseline_costs.total
        texto += f"  Línea base:       {baseline_costs.total:14.6f} $ (RCR {rcr:.2%})\n"
    return texto
