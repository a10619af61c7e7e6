"""Exhaustive extremal searches over small H-free graphs, plus the finite-n
scaling tables of the Turan-graph closed forms.

All-labeled searches walk every edge mask on n vertices. Bit k of a mask is
the k-th pair of ``itertools.combinations(range(n), 2)``, i.e. (0,1), (0,2),
..., (n-2, n-1). Masks are screened in vectorised chunks: a graph contains H
iff its mask covers the edge mask of some labeled copy of H in K_n, and its
t-clique count is the number of covered t-clique masks.
"""

from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, prod
from typing import Iterable, NamedTuple

import numpy as np

from .bounds import ess_reference, wilf_from_count
from .graph import (
    Graph,
    GraphFormatError,
    chromatic_number,
    clique_count,
    contains_subgraph,
    encode_graph6,
    gen_complete,
    gen_turan,
    parse_graph6,
    turan_part_sizes,
)
from .solver import SolverConfig, clique_spectral_radius, turan_mu
from .tensor import others_product

__all__ = [
    "SearchSpec",
    "ExtremalRecord",
    "SearchBudgetError",
    "SearchError",
    "search",
    "scaling_table",
    "clique_scaling_table",
    "ScalingRow",
    "CliqueScalingRow",
    "rows_to_csv",
    "labeled_copy_masks",
]

log = logging.getLogger(__name__)

LABELED_BUDGET = 8
CHUNK = 1 << 16
# mu values within this distance count as a tie (solver tolerance is 1e-10)
TIE_TOL = 1e-9
TURAN_TOL = 1e-8

OBJECTIVES = {"mu": "mu", "mu_t": "mu", "cliques": "cliques", "c_t": "cliques"}
SOURCES = ("all-labeled", "graph6-stream")


class SearchBudgetError(ValueError):
    """The requested search exceeds the enumeration budget."""


class SearchError(RuntimeError):
    """The search saw nothing it could report on."""


@dataclass
class SearchSpec:
    n: int | None
    forbidden: Graph
    t: int
    objective: str = "mu"
    source: str = "all-labeled"
    stream: Iterable[str] | None = None

    def __post_init__(self) -> None:
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}; expected one of {sorted(OBJECTIVES)}")
        self.objective = OBJECTIVES[self.objective]
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}; expected one of {SOURCES}")
        if self.t < 2:
            raise ValueError(f"clique order must be at least 2, got {self.t}")
        if self.source == "all-labeled":
            if self.n is None or self.n < 1:
                raise ValueError("all-labeled search needs a positive n")
            if self.n > LABELED_BUDGET:
                raise SearchBudgetError(
                    f"all-labeled search supports n <= {LABELED_BUDGET} (2^C(n,2) graphs), got n={self.n}"
                )
        elif self.stream is None:
            raise ValueError("graph6-stream search needs a stream of lines")


@dataclass
class ExtremalRecord:
    objective: str
    t: int
    best_value: float
    witness: Graph
    examined: int
    skipped_non_H_free: int
    matches_turan: bool
    turan_value: float | None
    malformed_lines: list[tuple[int, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "t": self.t,
            "best_value": self.best_value,
            "witness": encode_graph6(self.witness),
            "witness_n": self.witness.n,
            "examined": self.examined,
            "skipped_non_H_free": self.skipped_non_H_free,
            "matches_turan": self.matches_turan,
            "turan_value": self.turan_value,
            "malformed_lines": [list(m) for m in self.malformed_lines],
        }


# -- mask helpers --------------------------------------------------------------


def _pair_bits(n: int) -> dict[tuple[int, int], int]:
    return {pair: 1 << k for k, pair in enumerate(combinations(range(n), 2))}


def labeled_copy_masks(h: Graph, n: int) -> list[int]:
    """Edge masks of all labeled copies of ``h`` inside K_n (deduplicated, sorted)."""
    if h.n > n:
        return []
    bits = _pair_bits(n)
    h_edges = h.edges()
    if h.is_complete():
        maps: Iterable[tuple[int, ...]] = combinations(range(n), h.n)
    else:
        maps = permutations(range(n), h.n)
    masks = set()
    for image in maps:
        m = 0
        for u, v in h_edges:
            a, b = image[u], image[v]
            m |= bits[(a, b) if a < b else (b, a)]
        masks.add(m)
    return sorted(masks)


def _clique_masks(n: int, t: int) -> list[int]:
    return labeled_copy_masks(gen_complete(t), n) if t <= n else []


def mask_to_graph(n: int, mask: int) -> Graph:
    edges = [pair for k, pair in enumerate(combinations(range(n), 2)) if mask >> k & 1]
    return Graph.from_edges(n, edges)


def _scan(lo: int, hi: int, copies: list[int], cliques: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """H-free masks in [lo, hi) and their clique counts."""
    masks = np.arange(lo, hi, dtype=np.int64)
    free = np.ones(masks.size, dtype=bool)
    for c in copies:
        free &= (masks & c) != c
    masks = masks[free]
    counts = np.zeros(masks.size, dtype=np.int64)
    for c in cliques:
        counts += (masks & c) == c
    return masks, counts


def _chunks(total: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]


# -- search --------------------------------------------------------------------


class _Best:
    """Running maximum with the smallest-graph6 tie-break."""

    def __init__(self, tie_tol: float):
        self.tie_tol = tie_tol
        self.value: float | None = None
        self.graph: Graph | None = None
        self.code = ""

    def offer(self, value: float, g: Graph) -> None:
        if self.value is None or value > self.value + self.tie_tol:
            self.value, self.graph, self.code = value, g, encode_graph6(g)
        elif abs(value - self.value) <= self.tie_tol:
            code = encode_graph6(g)
            if code < self.code:
                self.value, self.graph, self.code = value, g, code


def _mu(g: Graph, t: int, cfg: SolverConfig) -> float:
    res = clique_spectral_radius(g, t, cfg)
    if not res.converged:
        log.warning("solver did not converge on %s; using bracket midpoint", encode_graph6(g))
    return res.mu


def _search_labeled(spec: SearchSpec, cfg: SolverConfig, workers: int) -> tuple[_Best, int, int]:
    n, t = spec.n, spec.t
    assert n is not None
    total = 1 << comb(n, 2)
    copies = labeled_copy_masks(spec.forbidden, n)
    cliques = _clique_masks(n, t)
    chunks = _chunks(total)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_scan, lo, hi, copies, cliques) for lo, hi in chunks]
            parts = [f.result() for f in futures]
    else:
        parts = [_scan(lo, hi, copies, cliques) for lo, hi in chunks]
    masks = np.concatenate([p[0] for p in parts])
    counts = np.concatenate([p[1] for p in parts])
    skipped = total - masks.size
    if masks.size == 0:
        raise SearchError("no H-free graphs examined")

    if spec.objective == "cliques":
        best = _Best(0.0)
        top = counts.max()
        for m in masks[counts == top]:
            best.offer(float(top), mask_to_graph(n, int(m)))
        return best, total, skipped

    # mu objective: t*c/n <= mu <= wilf(c), so only counts whose upper bound
    # reaches the best lower bound can hold the maximum.
    floor = t * int(counts.max()) / n
    upper_by_count = np.array([wilf_from_count(n, t, int(c)) for c in range(int(counts.max()) + 1)])
    keep = upper_by_count[counts] >= floor - TIE_TOL
    masks = masks[keep]
    if floor == 0.0:
        best = _Best(TIE_TOL)
        for m in masks:
            best.offer(0.0, mask_to_graph(n, int(m)))
        return best, total, skipped
    upper, lower = _batch_bounds(masks, n, t, cfg.shift)
    keep = upper >= lower.max() - TIE_TOL
    masks, upper = masks[keep], upper[keep]
    order = np.lexsort((masks, -upper))
    best = _Best(TIE_TOL)
    for k in order:
        if best.value is not None and upper[k] < best.value - TIE_TOL:
            break
        g = mask_to_graph(n, int(masks[k]))
        best.offer(_mu(g, t, cfg), g)
    return best, total, skipped


def _batch_bounds(masks: np.ndarray, n: int, t: int, shift: float, steps: int = 40) -> tuple[np.ndarray, np.ndarray]:
    """Certified bounds on mu_t for every graph in ``masks``.

    A few shifted power steps run side by side over the batch. For any
    positive x, max_i (A x^{t-1})_i / x_i^{t-1} bounds mu from above and the
    Rayleigh form at unit t-norm x bounds it from below; neither needs
    irreducibility.
    """
    cv = np.array(list(combinations(range(n), t)), dtype=np.intp)
    bits = _pair_bits(n)
    cm = np.array([sum(bits[p] for p in combinations(c, 2)) for c in cv], dtype=np.int64)
    scatter = np.zeros((cv.size, n))
    scatter[np.arange(cv.size), cv.ravel()] = 1.0
    uppers, lowers = [], []
    for lo in range(0, masks.size, 4096):
        chunk = masks[lo:lo + 4096]
        present = ((chunk[:, None] & cm[None, :]) == cm).astype(float)
        x = np.full((chunk.size, n), float(n) ** (-1.0 / t))
        up = np.full(chunk.size, np.inf)
        low = np.zeros(chunk.size)
        for _ in range(steps):
            others = others_product(x[:, cv]) * present[:, :, None]
            ax = others.reshape(chunk.size, -1) @ scatter
            xp = x ** (t - 1)
            y = ax + shift * xp
            up = np.minimum(up, (y / xp).max(axis=1) - shift)
            low = np.maximum(low, np.sum(x * ax, axis=1))
            x = y ** (1.0 / (t - 1))
            x /= np.sum(x**t, axis=1, keepdims=True) ** (1.0 / t)
        uppers.append(up)
        lowers.append(low)
    # Slack absorbs rounding in the batched arithmetic.
    return np.concatenate(uppers) + 1e-9, np.concatenate(lowers) - 1e-9


def _search_stream(spec: SearchSpec, cfg: SolverConfig) -> tuple[_Best, int, int, list[tuple[int, str]]]:
    t = spec.t
    best = _Best(0.0 if spec.objective == "cliques" else TIE_TOL)
    examined = skipped = 0
    malformed: list[tuple[int, str]] = []
    assert spec.stream is not None
    for lineno, line in enumerate(spec.stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            g = parse_graph6(text)
        except GraphFormatError as exc:
            log.warning("line %d: %s", lineno, exc)
            malformed.append((lineno, str(exc)))
            continue
        examined += 1
        if contains_subgraph(g, spec.forbidden):
            skipped += 1
            continue
        c = clique_count(g, t)
        if spec.objective == "cliques":
            best.offer(float(c), g)
            continue
        if best.value is not None and wilf_from_count(g.n, t, c) < best.value - TIE_TOL:
            continue
        best.offer(_mu(g, t, cfg), g)
    if examined == 0:
        raise SearchError("no graphs examined")
    if best.value is None:
        raise SearchError("no H-free graphs examined")
    return best, examined, skipped, malformed


def _turan_reference(spec: SearchSpec, n: int, cfg: SolverConfig) -> float | None:
    r = chromatic_number(spec.forbidden) - 1
    if r < 1:
        return None
    r = min(r, n)
    g, sizes = gen_turan(n, r)
    if spec.objective == "cliques":
        return float(clique_count(g, spec.t))
    if spec.t == r:
        return turan_mu(sizes)
    return clique_spectral_radius(g, spec.t, cfg).mu


def search(spec: SearchSpec, cfg: SolverConfig = SolverConfig(), workers: int = 1) -> ExtremalRecord:
    """Maximise mu_t or c_t over the H-free graphs of the source.

    The witness is the maximiser with the lexicographically smallest graph6
    code; ``matches_turan`` compares the maximum with the same objective on
    T_r(n), r = chi(H) - 1.
    """
    malformed: list[tuple[int, str]] = []
    if spec.source == "all-labeled":
        best, examined, skipped = _search_labeled(spec, cfg, workers)
    else:
        best, examined, skipped, malformed = _search_stream(spec, cfg)
    assert best.graph is not None and best.value is not None
    ref = _turan_reference(spec, best.graph.n, cfg)
    if ref is None:
        matches = False
    elif spec.objective == "cliques":
        matches = best.value == ref
    else:
        matches = abs(best.value - ref) <= TURAN_TOL
    return ExtremalRecord(
        objective=spec.objective,
        t=spec.t,
        best_value=best.value,
        witness=best.graph,
        examined=examined,
        skipped_non_H_free=skipped,
        matches_turan=matches,
        turan_value=ref,
        malformed_lines=malformed,
    )


# -- scaling tables ------------------------------------------------------------


class ScalingRow(NamedTuple):
    n: int
    mu: float
    reference: float
    ratio: float


class CliqueScalingRow(NamedTuple):
    n: int
    cliques: int
    reference: float
    ratio: float


def _check_range(r: int, n_from: int, n_to: int) -> None:
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    if n_from < r:
        raise ValueError(f"need n_from >= r, got n_from={n_from}, r={r}")
    if n_to < n_from:
        raise ValueError(f"empty range {n_from}..{n_to}")


def scaling_table(r: int, n_from: int, n_to: int) -> list[ScalingRow]:
    """mu_r(T_r(n)) against n^{r-1}/r^{r-1} for n_from <= n <= n_to."""
    _check_range(r, n_from, n_to)
    rows = []
    for n in range(n_from, n_to + 1):
        mu = turan_mu(turan_part_sizes(n, r))
        ref = ess_reference(r, n)
        rows.append(ScalingRow(n, mu, ref, mu / ref))
    return rows


def clique_scaling_table(r: int, n_from: int, n_to: int) -> list[CliqueScalingRow]:
    """c_r(T_r(n)) against n^r/r^r; counts and ratios are exact up to float rounding."""
    _check_range(r, n_from, n_to)
    rows = []
    for n in range(n_from, n_to + 1):
        count = prod((n + s) // r for s in range(r))
        ref = Fraction(n, r) ** r
        rows.append(CliqueScalingRow(n, count, float(ref), float(count / ref)))
    return rows


def rows_to_csv(rows: list[NamedTuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(rows[0]._fields)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
