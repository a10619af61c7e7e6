"""Implicit t-clique tensor.

The tensor has entry 1/(t-1)! at every permutation of every t-clique and
zero elsewhere. It is never materialised; all operations run over the
clique list.
"""

from __future__ import annotations

from math import factorial
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .graph import CliqueSet, Graph, enumerate_cliques

__all__ = ["CliqueTensor", "unit_normalize", "t_norm", "others_product"]

UNIT_TOL = 1e-12


def t_norm(x: np.ndarray, t: int) -> float:
    return float(np.sum(np.abs(x) ** t) ** (1.0 / t))


def unit_normalize(x: np.ndarray, t: int) -> np.ndarray:
    """Scale a nonnegative vector onto the unit t-norm sphere."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("weight vector must be nonnegative")
    norm = t_norm(x, t)
    if norm == 0.0:
        raise ValueError("cannot normalise the zero vector")
    return x / norm


def others_product(p: np.ndarray) -> np.ndarray:
    """For rows of ``p`` (last axis length t), product of all entries but one.

    Prefix/suffix products avoid dividing by zero entries.
    """
    t = p.shape[-1]
    ones = np.ones(p.shape[:-1] + (1,))
    prefix = np.concatenate([ones, np.cumprod(p[..., :-1], axis=-1)], axis=-1)
    suffix = np.concatenate([np.cumprod(p[..., :0:-1], axis=-1)[..., ::-1], ones], axis=-1)
    out = prefix * suffix
    assert out.shape[-1] == t
    return out


class CliqueTensor:
    """Order-t, dimension-n clique tensor backed by a :class:`CliqueSet`."""

    def __init__(self, cliques: CliqueSet):
        self.t = cliques.t
        self.n = cliques.n
        self.clique_set = cliques
        self.cliques = np.array(cliques.cliques, dtype=np.intp).reshape(-1, self.t)
        self._members = frozenset(cliques.cliques)
        self.incidence: list[list[int]] = [[] for _ in range(self.n)]
        for k, clique in enumerate(cliques.cliques):
            for v in clique:
                self.incidence[v].append(k)
        self._scatter = None

    @classmethod
    def from_graph(cls, g: Graph, t: int) -> "CliqueTensor":
        return cls(enumerate_cliques(g, t))

    @property
    def num_cliques(self) -> int:
        return len(self.cliques)

    @property
    def entry_value(self) -> float:
        return 1.0 / factorial(self.t - 1)

    def supported(self) -> np.ndarray:
        """Boolean mask of vertices lying in at least one clique."""
        return np.array([bool(inc) for inc in self.incidence], dtype=bool)

    def restrict(self, vertices: Sequence[int]) -> "CliqueTensor":
        """Sub-tensor on ``vertices`` (relabelled 0..k-1 in the given order).

        Only cliques lying entirely inside ``vertices`` are kept.
        """
        index = {v: i for i, v in enumerate(vertices)}
        kept = []
        for clique in self.clique_set.cliques:
            if all(v in index for v in clique):
                kept.append(tuple(sorted(index[v] for v in clique)))
        return CliqueTensor(CliqueSet(self.t, len(vertices), tuple(sorted(kept))))

    def entry(self, idx: Sequence[int]) -> float:
        if len(idx) != self.t:
            raise ValueError(f"index tuple must have length {self.t}, got {len(idx)}")
        for i in idx:
            if not 0 <= i < self.n:
                raise IndexError(f"index {i} out of range 0..{self.n - 1}")
        key = tuple(sorted(idx))
        if len(set(key)) == self.t and key in self._members:
            return self.entry_value
        return 0.0

    def _check_dim(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise ValueError(f"vector has dimension {x.shape[-1]}, tensor has {self.n}")
        return x

    def apply(self, x: np.ndarray) -> np.ndarray:
        """The contraction A x^{t-1}.

        Component i sums, over cliques containing i, the product of the other
        t-1 coordinates; the (t-1)! orderings cancel the entry weight.
        """
        x = self._check_dim(x)
        if x.ndim != 1:
            raise ValueError("apply expects a single vector; use apply_batch")
        if self.num_cliques == 0:
            return np.zeros(self.n)
        others = others_product(x[self.cliques])
        return np.bincount(self.cliques.ravel(), weights=others.ravel(), minlength=self.n)

    def apply_batch(self, xs: np.ndarray) -> np.ndarray:
        """Row-wise :meth:`apply` for a (k, n) array."""
        xs = self._check_dim(xs)
        if self.num_cliques == 0:
            return np.zeros_like(xs)
        if self._scatter is None:
            flat = self.cliques.ravel()
            self._scatter = sp.csr_matrix(
                (np.ones(flat.size), (np.arange(flat.size), flat)), shape=(flat.size, self.n)
            )
        others = others_product(xs[:, self.cliques]).reshape(xs.shape[0], -1)
        return np.asarray((self._scatter.T @ others.T).T)

    def polynomial(self, x: np.ndarray) -> float:
        """t times the sum over cliques of the product of their coordinates."""
        x = self._check_dim(x)
        if self.num_cliques == 0:
            return 0.0
        return float(self.t * np.sum(np.prod(x[self.cliques], axis=1)))

    def rayleigh(self, x: np.ndarray) -> float:
        """x^T A x^{t-1} for a nonnegative unit t-norm ``x``."""
        x = self._check_dim(x)
        if np.any(x < 0):
            raise ValueError("rayleigh needs a nonnegative vector")
        if abs(np.sum(x**self.t) - 1.0) > UNIT_TOL:
            raise ValueError("rayleigh needs a unit t-norm vector")
        return self.polynomial(x)

    def residual(self, x: np.ndarray, lam: float) -> float:
        """max_i |(A x^{t-1})_i - lam * x_i^{t-1}|."""
        x = self._check_dim(x)
        return float(np.max(np.abs(self.apply(x) - lam * x ** (self.t - 1))))
