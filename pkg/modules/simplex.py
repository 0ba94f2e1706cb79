"""
Simplex de dos fases con regla de Bland (tableau denso)

Resuelve  min cᵀx  s.a.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
Al terminar, la solución básica se refina resolviendo B x_B = b y los
multiplicadores con Bᵀy = c_B, que sirven como certificado dual.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.settings import ORACLE_CONFIG
from utils.logger import get_logger

logger = get_logger("simplex")


class OracleError(Exception):
    """Fallo del oráculo de referencia."""
    pass


class InfeasibleProblemError(OracleError):
    pass


class UnboundedProblemError(OracleError):
    pass


class OracleScaleError(OracleError):
    """El problema excede la escala admitida por el simplex denso."""
    pass


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    objective: float
    y_ub: np.ndarray        # <= 0 en el óptimo (convención Bᵀy = c_B)
    y_eq: np.ndarray
    reduced_costs: np.ndarray
    basis: np.ndarray
    pivots: int


class _Tableau:
    """Tableau con fila de costos reducidos al final y -z en la esquina"""

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: np.ndarray, tol: float, max_pivots: int):
        self.T = np.hstack([A, b[:, None]]).astype(float)
        self.T = np.vstack([self.T, np.zeros(self.T.shape[1])])
        self.basis = basis.copy()
        self.tol = tol
        self.max_pivots = max_pivots
        self.pivots = 0

    @property
    def m(self):
        return self.T.shape[0] - 1

    def set_costs(self, c: np.ndarray):
        """Fila de costos reducidos consistente con la base actual"""
        fila = np.append(np.asarray(c, dtype=float), 0.0)
        for r, j in enumerate(self.basis):
            if fila[j] != 0.0:
                fila = fila - fila[j] * self.T[r]
        self.T[-1] = fila

    def pivot(self, r: int, j: int):
        if self.pivots >= self.max_pivots:
            raise OracleError(f"se superó el máximo de {self.max_pivots} pivotes")
        self.T[r] /= self.T[r, j]
        columna = self.T[:, j].copy()
        columna[r] = 0.0
        self.T -= np.outer(columna, self.T[r])
        self.basis[r] = j
        self.pivots += 1

    def optimize(self, columnas: int):
        """Itera con la regla de Bland sobre las primeras `columnas` columnas"""
        while True:
            reducidos = self.T[-1, :columnas]
            candidatos = np.nonzero(reducidos < -self.tol)[0]
            if candidatos.size == 0:
                return
            j = int(candidatos[0])
            col = self.T[:self.m, j]
            positivos = np.nonzero(col > self.tol)[0]
            if positivos.size == 0:
                raise UnboundedProblemError(f"la columna {j} no tiene cota: problema no acotado")
            razones = self.T[positivos, -1] / col[positivos]
            minimo = razones.min()
            empatados = positivos[razones <= minimo + self.tol * max(1.0, abs(minimo))]
            # Bland: entre empates sale la variable básica de menor índice
            r = int(empatados[np.argmin(self.basis[empatados])])
            self.pivot(r, j)


def two_phase_simplex(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, tol: Optional[float] = None,
                      max_pivots: Optional[int] = None) -> SimplexResult:
    """
    Simplex de dos fases.

    Raises:
        InfeasibleProblemError: Si la fase I no alcanza objetivo nulo
        UnboundedProblemError: Si la fase II encuentra una dirección no acotada
    """
    tol = ORACLE_CONFIG['pivot_tol'] if tol is None else tol
    max_pivots = ORACLE_CONFIG['max_pivots'] if max_pivots is None else max_pivots
    c = np.asarray(c, dtype=float).reshape(-1)
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.asarray(A_ub, dtype=float).reshape(-1, n)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float).reshape(-1)
    A_eq = np.zeros((0, n)) if A_eq is None else np.asarray(A_eq, dtype=float).reshape(-1, n)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float).reshape(-1)
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    m = m_ub + m_eq

    # forma estándar con b >= 0: holguras para <=, artificiales donde haga falta
    A = np.vstack([A_ub, A_eq])
    b = np.concatenate([b_ub, b_eq])
    signo = np.where(b < 0, -1.0, 1.0)
    A = A * signo[:, None]
    b = b * signo

    holguras = np.zeros((m, m_ub))
    holguras[np.arange(m_ub), np.arange(m_ub)] = signo[:m_ub]
    necesita_art = np.ones(m, dtype=bool)
    necesita_art[:m_ub] = signo[:m_ub] < 0
    filas_art = np.nonzero(necesita_art)[0]
    artificiales = np.zeros((m, filas_art.size))
    artificiales[filas_art, np.arange(filas_art.size)] = 1.0

    A_std = np.hstack([A, holguras])
    n_std = A_std.shape[1]
    basis = np.empty(m, dtype=np.int64)
    basis[:m_ub] = n + np.arange(m_ub)
    basis[filas_art] = n_std + np.arange(filas_art.size)

    tab = _Tableau(np.hstack([A_std, artificiales]), b, basis, tol, max_pivots)

    # fase I
    if filas_art.size:
        costo_art = np.concatenate([np.zeros(n_std), np.ones(filas_art.size)])
        tab.set_costs(costo_art)
        tab.optimize(n_std + filas_art.size)
        infactibilidad = -tab.T[-1, -1]
        if infactibilidad > tol * max(1.0, float(np.abs(b).sum())):
            raise InfeasibleProblemError(f"fase I termina con infactibilidad {infactibilidad:.6g}")

        # sacar artificiales de la base; filas sin pivote posible son redundantes
        redundantes = []
        for r in range(tab.m):
            if tab.basis[r] >= n_std:
                fila = tab.T[r, :n_std]
                candidatos = np.nonzero(np.abs(fila) > tol)[0]
                if candidatos.size:
                    tab.pivot(r, int(candidatos[0]))
                else:
                    redundantes.append(r)
        if redundantes:
            conservar = np.setdiff1d(np.arange(tab.m), redundantes)
            tab.T = np.vstack([tab.T[conservar], tab.T[-1:]])
            tab.basis = tab.basis[conservar]
        tab.T = np.hstack([tab.T[:, :n_std], tab.T[:, -1:]])
    else:
        redundantes = []

    # fase II
    c_std = np.concatenate([c, np.zeros(m_ub)])
    tab.set_costs(c_std)
    tab.optimize(n_std)

    # refinamiento sobre la base final
    filas = np.setdiff1d(np.arange(m), redundantes) if redundantes else np.arange(m)
    B = A_std[filas][:, tab.basis]
    x_std = np.zeros(n_std)
    x_std[tab.basis] = np.linalg.solve(B, b[filas])
    x_std = np.maximum(x_std, 0.0)
    y_filas = np.linalg.solve(B.T, c_std[tab.basis])
    y = np.zeros(m)
    y[filas] = y_filas
    y = y * signo

    x = x_std[:n]
    reducidos = c - A_ub.T @ y[:m_ub] - A_eq.T @ y[m_ub:]
    logger.debug(f"Simplex: {tab.pivots} pivotes, m={m}, n={n}, redundantes={len(redundantes)}")
    return SimplexResult(
        x=x,
        objective=float(c @ x),
        y_ub=y[:m_ub],
        y_eq=y[m_ub:],
        reduced_costs=reducidos,
        basis=tab.basis.copy(),
        pivots=tab.pivots,
    )
