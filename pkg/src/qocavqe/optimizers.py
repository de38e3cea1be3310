"""Derivative-free optimizers: a linear-model trust-region method and
Nelder-Mead.

The primary method follows the classic linear-approximation trust-region
recipe: it maintains a simplex of n+1 points, interpolates a linear model
of the objective through it, and steps by the current trust radius along
the model's descent direction.  The radius shrinks from ``rho_begin`` to
``rho_end`` as steps stop paying off.  Simplex geometry is maintained
lazily, one repair per unproductive step: vertices that drifted far from
the incumbent are pulled back to the working scale, flat simplexes are
re-opened along their dual directions, and otherwise a poorly covered
coordinate axis is probed.  A stalled level therefore amounts to a full
re-sampling at the current scale before the radius drops.  There are no
constraints in this workbench, so the constraint machinery of the
original method is not needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Simplex quality thresholds relative to the trust radius, and the step
# fraction of dual-direction repairs.
_ALPHA = 0.25
_BETA = 2.1
_GAMMA = 0.5



@dataclass
class OptimizerConfig:
    method: str = "cobyla"
    max_evals: int = 100_000
    rho_begin: float = 0.5
    rho_end: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.max_evals < 1:
            raise ValueError("max_evals must be at least 1")
        if not self.rho_end < self.rho_begin:
            raise ValueError("rho_end must be smaller than rho_begin")
        if self.method not in ("cobyla", "nelder-mead"):
            raise ValueError(f"unknown optimizer method {self.method!r}")


@dataclass
class OptimizationResult:
    x: np.ndarray
    fun: float
    n_evals: int
    status: str  # "rho_end", "max_evals", or "converged"


def _pinv(matrix: np.ndarray) -> np.ndarray:
    """Pseudo-inverse with fallbacks for LAPACK SVD non-convergence."""
    try:
        return np.linalg.pinv(matrix)
    except np.linalg.LinAlgError:
        pass
    try:
        import scipy.linalg

        return scipy.linalg.pinv(matrix)  # gelsd driver, more robust
    except Exception:
        scale = float(np.abs(matrix).max()) or 1.0
        ridge = 1e-12 * scale * np.eye(matrix.shape[0])
        return np.linalg.pinv(matrix + ridge)


class _Budget:
    """Evaluation counter that tracks the best point seen and rejects NaN."""

    def __init__(self, fun, max_evals: int):
        self._fun = fun
        self.max_evals = max_evals
        self.n_evals = 0
        self.best_x: np.ndarray | None = None
        self.best_f = np.inf

    @property
    def exhausted(self) -> bool:
        return self.n_evals >= self.max_evals

    def __call__(self, x: np.ndarray) -> float:
        value = float(self._fun(x))
        self.n_evals += 1
        if not np.isfinite(value):
            raise FloatingPointError(
                f"objective returned non-finite value {value!r} at evaluation "
                f"{self.n_evals}; aborting the run"
            )
        if value < self.best_f:
            self.best_f = value
            self.best_x = np.array(x, dtype=float)
        return value


def minimize(fun, x0, config: OptimizerConfig) -> OptimizationResult:
    """Minimize ``fun`` from ``x0`` with the configured method."""
    x0 = np.asarray(x0, dtype=float)
    if config.method == "cobyla":
        return _cobyla(fun, x0, config)
    return _nelder_mead(fun, x0, config)


def _cobyla(fun, x0, config: OptimizerConfig) -> OptimizationResult:
    n = x0.size
    budget = _Budget(fun, config.max_evals)
    rho = config.rho_begin
    status = "max_evals"

    if n == 0:
        budget(x0)
        return OptimizationResult(x0, budget.best_f, 1, "converged")

    simplex = np.tile(x0, (n + 1, 1))
    values = np.empty(n + 1)
    values[0] = budget(simplex[0])
    for i in range(n):
        if budget.exhausted:
            return _result(budget, "max_evals")
        simplex[i + 1, i] += rho
        values[i + 1] = budget(simplex[i + 1])

    # A failed step still sharpens the linear model, and each failure also
    # buys one geometry sample, so the radius only shrinks after a whole
    # refresh cycle brings no meaningful progress.
    fail_limit = n + 2
    fails = 0

    while not budget.exhausted:
        best = int(np.argmin(values))
        if best != 0:
            simplex[[0, best]] = simplex[[best, 0]]
            values[[0, best]] = values[[best, 0]]

        edges = simplex[1:] - simplex[0]
        diffs = values[1:] - values[0]
        inverse = _pinv(edges)
        gradient = inverse.T @ diffs  # solves edges @ g = diffs
        grad_norm = float(np.linalg.norm(gradient))

        if grad_norm > 0.0:
            step = (-rho / grad_norm) * gradient
            candidate = simplex[0] + step
            value = budget(candidate)
            # Insert, recycling the farthest vertex among those whose
            # replacement keeps the simplex nondegenerate.
            weights = np.abs(inverse.T @ step)
            lengths = np.linalg.norm(edges, axis=1)
            top = float(weights.max())
            if top > 0.0:
                safe = weights >= 0.1 * top
                j = int(np.argmax(np.where(safe, lengths, -np.inf)))
            else:
                j = int(np.argmax(lengths))
            simplex[j + 1] = candidate
            values[j + 1] = value
            if values[0] - value >= 0.1 * rho * grad_norm:
                fails = 0
                continue
            fails += 1

        if budget.exhausted:
            break
        if fails >= fail_limit or grad_norm == 0.0:
            if rho <= config.rho_end * 1.000001:
                status = "rho_end"
                break
            rho = max(0.5 * rho, config.rho_end)
            fails = 0
            continue

        # One geometry step per failed trust-region step.  Priority: pull a
        # vertex that drifted beyond _BETA*rho back to the working scale
        # (keeping its direction); otherwise re-sample the flattest vertex
        # along its dual direction, the direction the simplex currently
        # knows least about; otherwise probe the least-covered axis.
        edges = simplex[1:] - simplex[0]
        lengths = np.linalg.norm(edges, axis=1)
        inverse = _pinv(edges)
        dual_norms = np.linalg.norm(inverse, axis=0)
        with np.errstate(divide="ignore"):
            heights = np.where(dual_norms > 0, 1.0 / np.where(dual_norms > 0, dual_norms, 1.0), 0.0)
        far = int(np.argmax(lengths))
        if lengths[far] > _BETA * rho:
            j = far
            direction = edges[far] / lengths[far]
            if grad_norm > 0.0 and gradient @ direction > 0:
                direction = -direction
            candidate = simplex[0] + rho * direction
        elif heights.min() < _ALPHA * rho:
            j = int(np.argmin(heights))
            dual = inverse[:, j]
            norm = float(np.linalg.norm(dual))
            if norm == 0.0:
                dual = np.zeros(n)
                dual[j % n] = 1.0
                norm = 1.0
            direction = dual / norm
            if grad_norm > 0.0 and gradient @ direction > 0:
                direction = -direction
            candidate = simplex[0] + _GAMMA * rho * direction
        else:
            j = far
            axis = int(np.argmin(np.abs(edges).max(axis=0)))
            direction = np.zeros(n)
            direction[axis] = (
                -1.0 if (grad_norm > 0.0 and gradient[axis] > 0) else 1.0
            )
            candidate = simplex[0] + rho * direction
        simplex[j + 1] = candidate
        values[j + 1] = budget(candidate)
        if values[j + 1] < values[0]:
            fails = 0

    return _result(budget, status)


def _nelder_mead(fun, x0, config: OptimizerConfig) -> OptimizationResult:
    """Nelder-Mead with dimension-adaptive coefficients."""
    n = x0.size
    budget = _Budget(fun, config.max_evals)
    if n == 0:
        budget(x0)
        return OptimizationResult(x0, budget.best_f, 1, "converged")

    refl = 1.0
    expa = 1.0 + 2.0 / n
    contr = 0.75 - 1.0 / (2.0 * n)
    shrink = 1.0 - 1.0 / n

    simplex = np.tile(x0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += config.rho_begin
    values = np.array([budget(p) for p in simplex[: min(n + 1, config.max_evals)]])
    if values.size < n + 1:
        return _result(budget, "max_evals")

    status = "max_evals"
    while not budget.exhausted:
        order = np.argsort(values, kind="stable")
        simplex = simplex[order]
        values = values[order]
        spread = np.max(np.linalg.norm(simplex[1:] - simplex[0], axis=1))
        if spread < config.rho_end:
            status = "converged"
            break
        centroid = simplex[:-1].mean(axis=0)
        reflected = centroid + refl * (centroid - simplex[-1])
        f_reflected = budget(reflected)
        if f_reflected < values[0] and not budget.exhausted:
            expanded = centroid + expa * (reflected - centroid)
            f_expanded = budget(expanded)
            if f_expanded < f_reflected:
                simplex[-1], values[-1] = expanded, f_expanded
            else:
                simplex[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[-2]:
            simplex[-1], values[-1] = reflected, f_reflected
        else:
            if f_reflected < values[-1]:
                point = centroid + contr * (reflected - centroid)
            else:
                point = centroid - contr * (centroid - simplex[-1])
            if budget.exhausted:
                break
            f_point = budget(point)
            if f_point < min(f_reflected, values[-1]):
                simplex[-1], values[-1] = point, f_point
            else:
                for i in range(1, n + 1):
                    if budget.exhausted:
                        break
                    simplex[i] = simplex[0] + shrink * (simplex[i] - simplex[0])
                    values[i] = budget(simplex[i])

    return _result(budget, status)


def _result(budget: _Budget, status: str) -> OptimizationResult:
    return OptimizationResult(
        x=budget.best_x, fun=budget.best_f, n_evals=budget.n_evals, status=status
    )
