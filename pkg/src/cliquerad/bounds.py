"""Lower and upper bounds on mu_t in terms of the clique count.

    t * c_t / n  <=  mu_t  <=  (t/n) * C(n,t)^{1/t} * c_t^{(t-1)/t}

The left side is tight when every vertex lies in the same number of
t-cliques; the right side is tight for complete graphs and K_t-free graphs.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

from .graph import Graph, enumerate_cliques
from .solver import ConvergenceError, SolverConfig, clique_spectral_radius
from .tensor import CliqueTensor

__all__ = [
    "BoundReport",
    "clique_lower_bound",
    "wilf_upper_bound",
    "wilf_from_count",
    "bound_report",
    "ess_reference",
]

EQUALITY_TOL = 1e-8


def _check_order(t: int) -> None:
    if t < 2:
        raise ValueError(f"clique order must be at least 2, got {t}")


def wilf_from_count(n: int, t: int, c_t: int) -> float:
    """Upper bound on mu_t from n, t and the clique count alone."""
    if c_t == 0:
        return 0.0
    return t / n * comb(n, t) ** (1.0 / t) * c_t ** ((t - 1) / t)


def clique_lower_bound(g: Graph, t: int) -> float:
    _check_order(t)
    return t * len(enumerate_cliques(g, t)) / g.n


def wilf_upper_bound(g: Graph, t: int) -> float:
    _check_order(t)
    return wilf_from_count(g.n, t, len(enumerate_cliques(g, t)))


@dataclass
class BoundReport:
    n: int
    t: int
    c_t: int
    lower: float
    mu: float
    upper: float
    lower_equality: bool
    upper_equality: bool
    equality_certificates: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def bound_report(g: Graph, t: int, cfg: SolverConfig = SolverConfig()) -> BoundReport:
    """Evaluate both bounds next to mu_t and flag where they are attained.

    Certificates name the combinatorial reason when one is known:
    ``uniform-vertex-clique-counts`` (sufficient for the lower bound),
    ``complete-graph`` and ``clique-free`` (sufficient for the upper bound).
    The numeric flags never imply these conditions are necessary.
    """
    _check_order(t)
    tensor = CliqueTensor(enumerate_cliques(g, t))
    c_t = tensor.num_cliques
    res = clique_spectral_radius(tensor, cfg=cfg)
    if not res.converged:
        raise ConvergenceError(f"solver did not converge for n={g.n}, t={t}; bracket {res.bracket}")
    lower = t * c_t / g.n
    upper = wilf_from_count(g.n, t, c_t)
    certs = []
    if len({len(inc) for inc in tensor.incidence}) == 1:
        certs.append("uniform-vertex-clique-counts")
    if g.is_complete():
        certs.append("complete-graph")
    if c_t == 0:
        certs.append("clique-free")
    return BoundReport(
        n=g.n,
        t=t,
        c_t=c_t,
        lower=lower,
        mu=res.mu,
        upper=upper,
        lower_equality=abs(lower - res.mu) <= EQUALITY_TOL,
        upper_equality=abs(upper - res.mu) <= EQUALITY_TOL,
        equality_certificates=certs,
    )


def ess_reference(r: int, n: int) -> float:
    """Leading term n^{r-1} / r^{r-1} of the extremal mu_r value."""
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    return float(Fraction(n, r) ** (r - 1))
