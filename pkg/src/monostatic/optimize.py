"""Minimise the 0-skeleton centroid height over spiral angles and verify the optimum."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from monostatic.equilibria import EquilibriumReport, classify, classify_2d, complexity
from monostatic.errors import ConstructionError, InvalidParameterError, OptimizationError
from monostatic.mass import centroid
from monostatic.spiral import (
    OutwardnessWarning,
    SpiralParams,
    build_double_spiral,
    build_k_spiral,
    convexity_defect,
    profile_is_convex,
)

HALF_PI = 0.5 * math.pi
START_SCALE = 0.2
MAX_EVALS = 100_000
SPREAD_TOL = 1e-12


def full_angles(free) -> np.ndarray:
    """Append the eliminated bottom angle ``pi - sum(free)``."""
    free = np.asarray(free, dtype=float)
    return np.append(free, math.pi - free.sum())


def _zc(free: np.ndarray, k: int) -> float:
    n = len(free)
    steps = np.cumprod(np.cos(free)) * np.cos(np.cumsum(free))
    lift = 0.0 if k == 2 else math.sin(free[0]) ** 2 * math.tan(math.pi / k) ** 2
    return (1.0 + k * steps.sum() + lift) / (1.0 + k * n)


def _violation(free: np.ndarray, k: int) -> float:
    angles = full_angles(free)
    over = np.maximum(angles - HALF_PI, 0.0)
    under = np.maximum(-angles, 0.0)
    amount = float(np.sum(over**2) + np.sum(under**2))
    if amount == 0.0 and (np.any(angles <= 0.0) or np.any(angles >= HALF_PI)):
        amount = 1e-300  # exactly on the boundary
    if amount == 0.0:
        params = SpiralParams(len(free), k, tuple(angles))
        if not profile_is_convex(params):
            amount = max(convexity_defect(params) ** 2, 1e-300)
    return amount


def objective(free, k: int) -> float:
    """Closed-form centroid height; infeasible points score ``1 +`` the squared bound or convexity violation."""
    free = np.asarray(free, dtype=float)
    bad = _violation(free, k)
    if bad > 0.0:
        return 1.0 + bad
    return _zc(free, k)


def objective_gradient(free, k: int) -> np.ndarray:
    """Exact gradient of the centroid height with respect to ``alpha_1..alpha_n``."""
    free = np.asarray(free, dtype=float)
    angles = full_angles(free)
    if np.any(angles <= 0.0) or np.any(angles >= HALF_PI):
        raise InvalidParameterError("gradient requested on or outside the angle bounds")
    n = len(free)
    radius = np.cumprod(np.cos(free))
    phi = np.cumsum(free)
    grad = np.empty(n)
    for m in range(n):
        tail = slice(m, n)
        # d/d alpha_m of r_i cos(phi_i) for i >= m
        grad[m] = -np.sum(radius[tail] * (math.tan(free[m]) * np.cos(phi[tail]) + np.sin(phi[tail])))
    grad *= k
    if k != 2:
        grad[0] += math.sin(2.0 * free[0]) * math.tan(math.pi / k) ** 2
    return grad / (1.0 + k * n)


@dataclass
class OptimizationResult:
    n: int
    k: int
    alphas: tuple  # radians, top-down, n + 1 values
    objective: float
    iterations: int
    starts: int
    status: str  # converged | not-mono-monostatic | infeasible
    report: EquilibriumReport | None = None
    complexity: int | None = None

    @property
    def v(self) -> int:
        return self.k * self.n + 1

    @property
    def params(self) -> SpiralParams:
        return SpiralParams(self.n, self.k, self.alphas)

    @property
    def alphas_deg_table_order(self) -> list:
        return [math.degrees(a) for a in reversed(self.alphas)]

    @property
    def mono_monostatic(self) -> bool:
        return self.status == "converged"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "v": self.v,
            "alphas_deg_table_order": self.alphas_deg_table_order,
            "z_C": self.objective,
            "status": self.status,
            "iterations": self.iterations,
            "starts": self.starts,
            "report": None if self.report is None else self.report.to_dict(self.complexity),
        }


def _start_points(n: int, starts: int, seed: int) -> np.ndarray:
    base = np.full(n, math.pi / (n + 1))
    if starts == 1:
        return base[None, :]
    unit = qmc.Halton(d=n, scramble=True, seed=seed).random(starts - 1)
    return np.vstack([base, base + START_SCALE * (2.0 * unit - 1.0)])


def _descend(x0: np.ndarray, k: int, budget: int):
    evals = 0
    x = x0
    fx = objective(x, k)
    # restart the simplex from each result until it stops moving
    for _ in range(5):
        res = minimize(
            objective,
            x,
            args=(k,),
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": SPREAD_TOL, "maxfev": max(budget - evals, 1), "adaptive": len(x) > 4},
        )
        evals += res.nfev
        improved = res.fun < fx - SPREAD_TOL
        if res.fun < fx:
            x, fx = res.x, float(res.fun)
        if not improved or evals >= budget:
            break
    if fx < 1.0:
        polish = minimize(_zc, x, args=(k,), jac=objective_gradient, method="BFGS", options={"gtol": 1e-12})
        evals += polish.nfev
        if polish.success or polish.fun < fx:
            fp = objective(polish.x, k)
            if fp <= fx:
                x, fx = polish.x, fp
    return x, fx, evals


def verify(params: SpiralParams, tol: float | None = None):
    """Build and classify a spiral body under the vertex-skeleton model.

    Returns ``(body, report, complexity)``; complexity is ``None`` for polygons.
    """
    if params.k == 2:
        body = build_double_spiral(params, tol=tol)
        report = classify_2d(body, centroid(body, "vertex"), tol=tol)
        return body, report, None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutwardnessWarning)
        body = build_k_spiral(params, tol=tol)
    report = classify(body, centroid(body, "vertex"), tol=tol)
    return body, report, complexity(report, body)


def optimize(n: int, k: int, starts: int = 16, seed: int = 0, max_evals: int = MAX_EVALS) -> OptimizationResult:
    """Multi-start simplex descent of the centroid height for a Conway k-spiral."""
    if n < 1 or k < 2 or starts < 1:
        raise InvalidParameterError(f"need n >= 1, k >= 2, starts >= 1 (got n={n}, k={k}, starts={starts})")
    best = None
    total = 0
    for x0 in _start_points(n, starts, seed):
        x, fx, evals = _descend(x0, k, max_evals)
        total += evals
        key = (fx, tuple(x))
        if best is None or key < best:
            best = key
    fx, x = best
    if fx >= 1.0:
        raise OptimizationError(f"no feasible point found for n={n}, k={k}")
    params = SpiralParams(n, k, tuple(full_angles(np.array(x))))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            _, report, cplx = verify(params)
    except ConstructionError:
        return OptimizationResult(n, k, params.alphas, fx, total, starts, "infeasible")
    status = "converged" if report.mono_monostatic and fx < 0 else "not-mono-monostatic"
    return OptimizationResult(n, k, params.alphas, fx, total, starts, status, report, cplx)


@dataclass(frozen=True)
class ScanRow:
    n: int
    k: int | None
    v: int | None
    z_c: float | None
    status: str
    alphas_deg_table_order: tuple = ()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "v": self.v,
            "z_C": self.z_c,
            "status": self.status,
            "alphas_deg_table_order": list(self.alphas_deg_table_order),
        }


def _row(result: OptimizationResult) -> ScanRow:
    return ScanRow(result.n, result.k, result.v, result.objective, result.status, tuple(result.alphas_deg_table_order))


def scan(n_max: int, k_max: int, starts: int = 4, seed: int = 0) -> list:
    """Per ``n``: the planar (k = 2) result if mono-monostatic, and the minimal 3D ``k``.

    Rows are ordered by ``(n, k)``; an ``n`` with no 3D hit up to ``k_max``
    gets a ``not-found`` row.
    """
    if n_max < 2 or k_max < 2:
        raise InvalidParameterError("scan bounds must be >= 2")
    rows = []
    for n in range(1, n_max + 1):
        try:
            planar = optimize(n, 2, starts, seed)
        except OptimizationError:
            planar = None
        if planar is not None and planar.mono_monostatic:
            rows.append(_row(planar))
        hit = None
        for k in range(3, k_max + 1):
            try:
                result = optimize(n, k, starts, seed)
            except OptimizationError:
                continue
            if result.mono_monostatic:
                hit = result
                break
        rows.append(_row(hit) if hit is not None else ScanRow(n, None, None, None, "not-found"))
    return rows
