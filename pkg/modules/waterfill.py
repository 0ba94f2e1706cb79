"""
Kernel de water-filling con capacidad ponderada

Resuelve, para cada fila de un lote,

    min Σ_m d_m/2 x_m² - g_m x_m   s.a.  x >= 0,  Σ_m w_m x_m <= cap

cuya solución es x_m = max(0, (g_m - ϱ w_m)/d_m) con ϱ >= 0 el multiplicador
de la capacidad. No se biseca ϱ sobre un intervalo continuo: los puntos de
quiebre r_m = g_m/w_m se ordenan, una búsqueda binaria sobre sus índices
localiza el tramo donde el uso cruza cap y ϱ sale en forma cerrada en ese
tramo. El resultado es exacto salvo redondeo.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from config.settings import WATERFILL_CONFIG
from utils.logger import get_logger

logger = get_logger("waterfill")


class WaterfillError(ValueError):
    """Precondiciones del kernel no satisfechas."""
    pass


@dataclass(frozen=True)
class WaterfillResult:
    dual: Union[float, np.ndarray]  # ϱ, una por fila del lote
    solution: np.ndarray
    iterations: int


def capacity_usage(g, w, d, dual) -> np.ndarray:
    """Σ_m max(0, (g_m - ϱ w_m)/d_m)·w_m, no creciente en ϱ"""
    g = np.asarray(g, dtype=float)
    dual = np.asarray(dual, dtype=float)
    x = np.maximum(0.0, (g - dual[..., None] * w) / d)
    return (x * np.broadcast_to(w, g.shape)).sum(axis=-1)


def bisect_waterfill(g, w, d, cap, max_iterations: Optional[int] = None) -> WaterfillResult:
    """
    Water-filling exacto: búsqueda sobre los índices de los puntos de quiebre
    ordenados y ϱ en forma cerrada dentro del tramo activo.

    Args:
        g: Valores, forma (..., m)
        w: Pesos > 0, difundibles a la forma de g
        d: Denominadores > 0, difundibles a la forma de g
        cap: Capacidad >= 0 por fila, forma (...)
        max_iterations: Tope de iteraciones de la búsqueda

    Returns:
        WaterfillResult: ϱ por fila (float si g es 1-D), solución e iteraciones

    Raises:
        WaterfillError: Si w <= 0, d <= 0, cap < 0 o hay valores no finitos
    """
    g = np.asarray(g, dtype=float)
    if g.ndim == 0:
        raise WaterfillError("g debe tener al menos una dimensión")
    forma = g.shape
    w = np.broadcast_to(np.asarray(w, dtype=float), forma)
    d = np.broadcast_to(np.asarray(d, dtype=float), forma)
    cap = np.broadcast_to(np.asarray(cap, dtype=float), forma[:-1])
    max_iterations = max_iterations or WATERFILL_CONFIG['max_iterations']

    if not (np.all(np.isfinite(g)) and np.all(np.isfinite(cap))):
        raise WaterfillError("valores no finitos")
    if np.any(w <= 0):
        raise WaterfillError("los pesos w deben ser > 0")
    if np.any(d <= 0):
        raise WaterfillError("los denominadores d deben ser > 0")
    if np.any(cap < 0):
        raise WaterfillError("la capacidad debe ser >= 0")

    m = forma[-1]
    g2, w2, d2 = g.reshape(-1, m), w.reshape(-1, m), d.reshape(-1, m)
    cap2 = cap.reshape(-1)
    filas_total = g2.shape[0]

    solucion = np.maximum(0.0, g2) / d2
    dual = np.zeros(filas_total)
    iteraciones = 0

    uso_libre = (solucion * w2).sum(axis=1)
    activas = uso_libre > cap2 * (1.0 + WATERFILL_CONFIG['rel_tol'])
    if m > 0 and np.any(activas):
        ga, wa, da, ca = g2[activas], w2[activas], d2[activas], cap2[activas]
        filas = np.arange(ga.shape[0])

        r = ga / wa
        orden = np.argsort(-r, axis=1, kind='stable')
        r_s = np.take_along_axis(r, orden, axis=1)
        G = np.cumsum(np.take_along_axis(ga * wa / da, orden, axis=1), axis=1)
        W = np.cumsum(np.take_along_axis(wa * wa / da, orden, axis=1), axis=1)

        # uso de capacidad justo en cada punto de quiebre (no decreciente en t)
        f_bp = np.zeros_like(r_s)
        f_bp[:, 1:] = G[:, :-1] - r_s[:, 1:] * W[:, :-1]

        lo = np.zeros(ga.shape[0], dtype=np.int64)
        hi = np.full(ga.shape[0], m - 1, dtype=np.int64)
        while np.any(lo < hi):
            if iteraciones >= max_iterations:
                raise WaterfillError(f"sin convergencia tras {max_iterations} iteraciones")
            medio = (lo + hi + 1) // 2
            cabe = f_bp[filas, medio] <= ca
            lo = np.where(cabe, medio, lo)
            hi = np.where(cabe, hi, medio - 1)
            iteraciones += 1

        rho = np.maximum(0.0, (G[filas, lo] - ca) / W[filas, lo])
        sin_capacidad = ca <= 0.0
        rho = np.where(sin_capacidad, r_s[:, 0], rho)
        x = np.maximum(0.0, (ga - rho[:, None] * wa) / da)
        x[sin_capacidad] = 0.0

        dual[activas] = rho
        solucion[activas] = x

    logger.debug(f"Water-filling: {int(np.sum(activas))}/{filas_total} filas con capacidad activa, "
                 f"{iteraciones} iteraciones")
    dual_out = float(dual[0]) if g.ndim == 1 else dual.reshape(forma[:-1])
    return WaterfillResult(dual=dual_out, solution=solucion.reshape(forma), iterations=iteraciones)
