"""Shared ADMM configuration, reporting, and bookkeeping helpers.

All iterative solvers in this package follow the same template: block
updates that each exactly minimize the augmented Lagrangian over their
block, dual ascent steps Y += mu * residual, and a penalty schedule
mu <- min(rho * mu, mu_max).  A solver stops when the max-norm of every
constraint residual falls below tol, and reports converged=False after
max_iter otherwise (still returning its last iterate).

Reports carry two traces used by the test suite: `objective_trace`, the
model objective after each iteration, and `al_descent`, the change of
the augmented Lagrangian across one sweep of block updates evaluated at
the penalty and duals in force during that sweep.  Because every block
update is an exact minimizer (or, for the conjugate-gradient solve, a
warm-started monotone step), each al_descent entry is <= 0 up to
round-off.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["SolverConfig", "SolverReport", "default_sparse_weight", "lagrangian_terms"]


@dataclass
class SolverConfig:
    """Knobs shared by every iterative solver."""

    mu0: float = 1e-3
    rho: float = 1.1
    mu_max: float = 1e10
    tol: float = 1e-7
    max_iter: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.mu0 <= 0:
            raise ValueError(f"mu0 must be positive, got {self.mu0}")
        if self.rho < 1.0:
            raise ValueError(f"rho must be >= 1, got {self.rho}")
        if self.mu_max < self.mu0:
            raise ValueError("mu_max must be >= mu0")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass
class SolverReport:
    """Outcome of one solver run."""

    iterations: int
    residuals: list = field(default_factory=list)
    objective: float = 0.0
    converged: bool = False
    objective_trace: list = field(default_factory=list)
    al_descent: list = field(default_factory=list)


def default_sparse_weight(n1: int, n2: int, n3: int) -> float:
    """Default sparsity weight 1 / sqrt(max(n1, n2) * n3)."""
    return 1.0 / np.sqrt(max(n1, n2) * n3)


def lagrangian_terms(dual: np.ndarray, resid: np.ndarray, mu: float) -> float:
    """<dual, resid> + (mu/2) ||resid||_F^2, the coupling part of the AL."""
    return float(np.vdot(dual.ravel(), resid.ravel()) + 0.5 * mu * np.vdot(resid.ravel(), resid.ravel()))
