"""t-clique spectral radius: shifted power iteration and an ascent oracle.

The power iteration runs per connected component of the clique hypergraph,
where the tensor is weakly irreducible and the Collatz-type bracket
``min_i y_i / x_i^{t-1} <= mu <= max_i y_i / x_i^{t-1}`` is a certified
two-sided bound. The ascent oracle maximises the Rayleigh form directly
over the nonnegative unit t-norm sphere and shares no iteration with the
power method, so the two can check each other.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Sequence

import numpy as np

from .graph import CliqueSet, Graph, enumerate_cliques
from .tensor import CliqueTensor

__all__ = [
    "SolverConfig",
    "SpectralResult",
    "ConvergenceError",
    "clique_components",
    "power_iteration",
    "ascent_oracle",
    "clique_spectral_radius",
    "complete_mu",
    "turan_mu",
]

log = logging.getLogger(__name__)

METHODS = ("power-iteration", "closed-form", "zero-cliques", "ascent-oracle")


class ConvergenceError(RuntimeError):
    """Raised by callers that require a converged spectral result."""


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-10
    max_iterations: int = 1_000_000
    shift: float = 1.0
    restarts: int = 64
    step_rule: str = "multiplicative"
    seed: int = 0
    closed_form: bool = True

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not self.shift > 0:
            raise ValueError("shift must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.restarts < 0:
            raise ValueError("restarts must be nonnegative")
        if self.step_rule != "multiplicative":
            raise ValueError(f"unknown step rule {self.step_rule!r}")


@dataclass
class SpectralResult:
    mu: float
    eigenvector: np.ndarray
    residual: float
    iterations: int
    converged: bool
    method: str
    bracket: tuple[float, float] = (0.0, 0.0)
    history: list[tuple[float, float]] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "method": self.method,
            "bracket": list(self.bracket),
            "eigenvector": [float(v) for v in self.eigenvector],
        }


def clique_components(cliques: CliqueSet) -> tuple[list[list[int]], list[int]]:
    """Connected components of the hypergraph whose edges are the cliques.

    Returns ``(components, unsupported)``; components are sorted vertex lists
    ordered by their smallest vertex, ``unsupported`` lists vertices in no clique.
    """
    parent = list(range(cliques.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    supported = [False] * cliques.n
    for clique in cliques:
        root = find(clique[0])
        for v in clique:
            supported[v] = True
            other = find(v)
            if other != root:
                parent[max(root, other)] = min(root, other)
                root = min(root, other)
    groups: dict[int, list[int]] = {}
    for v in range(cliques.n):
        if supported[v]:
            groups.setdefault(find(v), []).append(v)
    components = sorted(groups.values(), key=lambda c: c[0])
    unsupported = [v for v in range(cliques.n) if not supported[v]]
    return components, unsupported


def _uniform(n: int, t: int) -> np.ndarray:
    return np.full(n, float(n) ** (-1.0 / t))


def power_iteration(tensor: CliqueTensor, cfg: SolverConfig = SolverConfig(), record: bool = False) -> SpectralResult:
    """Shifted power iteration on a tensor whose clique hypergraph is connected.

    Each step forms ``y = A x^{t-1} + shift * x^{[t-1]}`` and moves to
    ``y^{[1/(t-1)]}`` rescaled to unit t-norm. The loop stops once the
    bracket is relatively narrower than the tolerance and the eigen-equation
    residual at the bracketed iterate is within the tolerance.
    """
    t, n = tensor.t, tensor.n
    if n == 0 or tensor.num_cliques == 0:
        raise ValueError("power_iteration needs a nonempty component with at least one clique")
    if not tensor.supported().all():
        raise ValueError("power_iteration needs every vertex to lie in a clique; split into components first")
    rho, tol = cfg.shift, cfg.tolerance
    x = _uniform(n, t)
    best_hi, best_lo = np.inf, -np.inf
    history: list[tuple[float, float]] = []
    mu = residual = 0.0
    for it in range(1, cfg.max_iterations + 1):
        ax = tensor.apply(x)
        xp = x ** (t - 1)
        y = ax + rho * xp
        ratio = y / xp
        hi = float(ratio.max()) - rho
        lo = float(ratio.min()) - rho
        if record:
            history.append((lo, hi))
        best_hi, best_lo = min(best_hi, hi), max(best_lo, lo)
        if hi - lo <= tol * max(1.0, hi):
            mu = 0.5 * (hi + lo)
            residual = float(np.max(np.abs(ax - mu * xp)))
            if residual <= tol:
                return SpectralResult(mu, x, residual, it, True, "power-iteration", (lo, hi), history)
        x = y ** (1.0 / (t - 1))
        x /= np.sum(x**t) ** (1.0 / t)
    mu = 0.5 * (best_hi + best_lo)
    residual = tensor.residual(x, mu)
    log.warning("power iteration did not converge in %d steps; bracket [%g, %g]", cfg.max_iterations, best_lo, best_hi)
    return SpectralResult(mu, x, residual, cfg.max_iterations, False, "power-iteration", (best_lo, best_hi), history)


def ascent_oracle(tensor: CliqueTensor, cfg: SolverConfig = SolverConfig()) -> SpectralResult:
    """Multi-start maximisation of the Rayleigh form on the unit t-norm sphere.

    Works in the simplex coordinates ``w = x^{[t]}``, where the objective is
    a sum of geometric means and hence concave. The update
    ``w_i <- w_i (g_i + shift) / (f + shift)`` with ``g_i = (A x^{t-1})_i / x_i^{t-1}``
    is a multiplicative gradient step; a row whose objective would drop
    keeps its point and doubles its shift. ``max_i g_i`` bounds the optimum
    from above, which gives the stopping gap.
    """
    t, n = tensor.t, tensor.n
    if tensor.num_cliques == 0:
        x = _uniform(n, t)
        return SpectralResult(0.0, x, 0.0, 0, True, "ascent-oracle", (0.0, 0.0))
    rng = np.random.default_rng(cfg.seed)
    starts = np.vstack([np.ones((1, n)), rng.uniform(0.05, 1.0, size=(cfg.restarts, n))])
    xs = starts / np.sum(starts**t, axis=1, keepdims=True) ** (1.0 / t)
    k = xs.shape[0]
    shift = np.full(k, cfg.shift)
    active = np.ones(k, dtype=bool)
    converged = np.zeros(k, dtype=bool)
    ax = tensor.apply_batch(xs)
    f = np.sum(xs * ax, axis=1)
    stall = np.zeros(k, dtype=int)
    tol = cfg.tolerance
    slack = 8 * np.finfo(float).eps
    it = 0
    while active.any() and it < cfg.max_iterations:
        it += 1
        idx = np.flatnonzero(active)
        x, a, fx = xs[idx], ax[idx], f[idx]
        g = _gradient_ratio(a, x, t)
        done = g.max(axis=1) - fx <= tol * np.maximum(1.0, fx)
        converged[idx[done]] = True
        w = x**t * (g + shift[idx, None])
        w /= w.sum(axis=1, keepdims=True)
        x_new = w ** (1.0 / t)
        a_new = tensor.apply_batch(x_new)
        f_new = np.sum(x_new * a_new, axis=1)
        up = (f_new >= fx - slack * np.maximum(1.0, fx)) & ~done
        moved = np.max(np.abs(x_new - x), axis=1)
        xs[idx[up]], ax[idx[up]], f[idx[up]] = x_new[up], a_new[up], f_new[up]
        stall[idx] = np.where(up & (moved > 1e-14), 0, stall[idx] + 1)
        shift[idx[~up & ~done]] *= 2.0
        active[idx[done | (stall[idx] >= 50)]] = False
    g = _gradient_ratio(ax, xs, t)
    gap = g.max(axis=1) - f
    converged |= gap <= tol * np.maximum(1.0, f)
    best = int(np.argmax(f))
    x = xs[best]
    mu = float(f[best])
    return SpectralResult(mu, x, tensor.residual(x, mu), it, bool(converged[best]), "ascent-oracle", (mu, mu))


def _gradient_ratio(a: np.ndarray, x: np.ndarray, t: int) -> np.ndarray:
    xp = x ** (t - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(xp > 1e-300, a / xp, 0.0)


def _regular_component(tensor: CliqueTensor) -> int | None:
    counts = {len(inc) for inc in tensor.incidence}
    return counts.pop() if len(counts) == 1 else None


def _solve_component(sub: CliqueTensor, cfg: SolverConfig) -> SpectralResult:
    if cfg.closed_form:
        d = _regular_component(sub)
        if d is not None:
            # Equal per-vertex clique counts: the uniform vector is a positive eigenvector.
            x = _uniform(sub.n, sub.t)
            mu = float(d)
            return SpectralResult(mu, x, sub.residual(x, mu), 0, True, "closed-form", (mu, mu))
    return power_iteration(sub, cfg)


def clique_spectral_radius(g: Graph | CliqueSet | CliqueTensor, t: int | None = None, cfg: SolverConfig = SolverConfig()) -> SpectralResult:
    """mu_t of a graph: the maximum over clique components, embedded in n coordinates.

    Accepts a graph (with ``t``), a clique set or a prebuilt tensor. Ties
    between components go to the one holding the smallest vertex.
    """
    if isinstance(g, CliqueTensor):
        tensor = g
    elif isinstance(g, CliqueSet):
        tensor = CliqueTensor(g)
    else:
        if t is None:
            raise TypeError("clique order t is required for a graph")
        tensor = CliqueTensor(enumerate_cliques(g, t))
    n, t = tensor.n, tensor.t
    if tensor.num_cliques == 0:
        x = _uniform(n, t)
        return SpectralResult(0.0, x, 0.0, 0, True, "zero-cliques", (0.0, 0.0))
    components, _ = clique_components(tensor.clique_set)
    best: SpectralResult | None = None
    best_vertices: list[int] = []
    all_converged = True
    iterations = 0
    for comp in components:
        res = _solve_component(tensor.restrict(comp), cfg)
        all_converged &= res.converged
        iterations += res.iterations
        if best is None or res.mu > best.mu + cfg.tolerance * max(1.0, best.mu):
            best, best_vertices = res, comp
    assert best is not None
    x = np.zeros(n)
    x[best_vertices] = best.eigenvector
    return SpectralResult(
        best.mu, x, tensor.residual(x, best.mu), iterations, all_converged, best.method, best.bracket
    )


def _exact_root_power(p: int, r: int) -> float:
    """p^{(r-1)/r}, exact when p is a perfect r-th power."""
    k = round(p ** (1.0 / r))
    for cand in (k - 1, k, k + 1):
        if cand >= 0 and cand**r == p:
            return float(cand ** (r - 1))
    return p ** ((r - 1) / r)


def complete_mu(n: int, t: int) -> float:
    """mu_t(K_n) = (t/n) * C(n, t); zero when t > n."""
    if t < 2:
        raise ValueError(f"clique order must be at least 2, got {t}")
    if t > n:
        return 0.0
    return float(Fraction(t, n) * comb(n, t))


def turan_mu(sizes: Sequence[int]) -> float:
    """mu_r of the complete r-partite graph with the given parts: (prod n_s)^{(r-1)/r}."""
    r = len(sizes)
    if r < 2:
        raise ValueError("need at least two parts")
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    return _exact_root_power(prod(sizes), r)
