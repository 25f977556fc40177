"""Regular Gaussian models whose covariance zero pattern follows a graph.

A model is a mean vector plus a symmetric positive definite covariance
matrix.  Sampling draws diagonal entries from (n-0.5, n+0.5) and edge
entries from [-1, 1]: the matrix is then strictly diagonally dominant, so
it is positive definite for every draw, and its off-diagonal zeros sit
exactly on the non-edges.  Conditional independence i | j given K holds
iff det(sigma[{i} | K, {j} | K]) vanishes, which the test below decides
with a relative tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import sqrt
from typing import Optional, Sequence

from .graphs import (
    GraphKind,
    MixedGraph,
    NodeSet,
    SizeLimitError,
    bit,
    node_list,
    submasks,
)
from .separation import ci_independent

DEFAULT_TOL = 1e-9


def det(rows: Sequence[Sequence[float]]) -> float:
    """Determinant by LU elimination with partial pivoting."""
    n = len(rows)
    if n == 0:
        return 1.0
    a = [list(r) for r in rows]
    sign = 1.0
    for col in range(n):
        piv_row = col
        best = abs(a[col][col])
        for r in range(col + 1, n):
            mag = abs(a[r][col])
            if mag > best:
                best = mag
                piv_row = r
        piv = a[piv_row][col]
        if piv == 0.0:
            return 0.0
        if piv_row != col:
            a[piv_row], a[col] = a[col], a[piv_row]
            sign = -sign
        prow = a[col]
        for r in range(col + 1, n):
            f = a[r][col] / piv
            if f:
                row = a[r]
                for c in range(col + 1, n):
                    row[c] -= f * prow[c]
    out = sign
    for i in range(n):
        out *= a[i][i]
    return out


def cholesky(rows: Sequence[Sequence[float]]) -> Optional[list[list[float]]]:
    """Lower-triangular Cholesky factor, or None when not positive definite."""
    n = len(rows)
    low = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = rows[i][j] - sum(low[i][k] * low[j][k] for k in range(j))
            if i == j:
                if s <= 0.0:
                    return None
                low[i][i] = sqrt(s)
            else:
                low[i][j] = s / low[j][j]
    return low


@dataclass(frozen=True)
class GaussianModel:
    """Mean vector and covariance matrix; construction certifies symmetry
    and positive definiteness."""

    mean: tuple[float, ...]
    sigma: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.mean)
        if len(self.sigma) != n or any(len(row) != n for row in self.sigma):
            raise ValueError("sigma must be square and match the mean length")
        for i in range(n):
            for j in range(i):
                if self.sigma[i][j] != self.sigma[j][i]:
                    raise ValueError("sigma must be symmetric")
        if cholesky(self.sigma) is None:
            raise ValueError("sigma must be positive definite")

    @property
    def n(self) -> int:
        return len(self.mean)


def nd_dimension(g: MixedGraph) -> int:
    """Free parameters of the graph-constrained Gaussian family: the mean,
    the diagonal, and one covariance per edge."""
    if not g.is_undirected_graph:
        raise ValueError("nd dimension is defined for undirected graphs")
    return 2 * g.n + len(g.undirected)


@dataclass(frozen=True)
class NdParameterization:
    graph: MixedGraph
    nd_count: int

    def __post_init__(self) -> None:
        if self.nd_count != nd_dimension(self.graph):
            raise ValueError("nd parameter count does not match the graph")

    @classmethod
    def of_graph(cls, g: MixedGraph) -> "NdParameterization":
        return cls(g, nd_dimension(g))


def trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def sample_markov_gaussian(g: MixedGraph, seed: int) -> GaussianModel:
    """Deterministic-in-seed draw of a model Markov to the graph.

    Draw order: diagonal by node index, edge entries in sorted edge order,
    then the mean.  Non-edges are exactly zero.
    """
    if not g.is_undirected_graph:
        raise ValueError("sampling requires an undirected graph")
    rng = random.Random(seed)
    n = g.n
    sig = [[0.0] * n for _ in range(n)]
    for i in range(n):
        sig[i][i] = rng.uniform(n - 0.5, n + 0.5)
    for i, j in sorted(g.undirected):
        v = rng.uniform(-1.0, 1.0)
        sig[i][j] = v
        sig[j][i] = v
    mean = tuple(rng.uniform(-1.0, 1.0) for _ in range(n))
    return GaussianModel(mean, tuple(tuple(row) for row in sig))


def ci_test(
    model: GaussianModel, i: int, j: int, k: NodeSet, tol: float = DEFAULT_TOL
) -> bool:
    """True when the model carries i independent of j given K.

    Decided by det(sigma[{i} | K, {j} | K]) compared against tol times the
    product of the rows' largest magnitudes.  Positive definiteness is
    certified at model construction, which makes det(sigma[ijK, ijK])
    positive for every query, so the determinant criterion is well posed.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = model.n
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise ValueError("i and j must be distinct nodes of the model")
    if k & (bit(i) | bit(j)) or k >> n:
        raise ValueError("K must avoid i, j and stay inside the model")
    ks = node_list(k)
    rows_idx = [i, *ks]
    cols_idx = [j, *ks]
    sub = [[model.sigma[r][c] for c in cols_idx] for r in rows_idx]
    d = det(sub)
    scale = 1.0
    for row in sub:
        scale *= max(abs(v) for v in row)
    return abs(d) <= tol * scale


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"V{i + 1}" for i in range(n))


def covariance_graph_of(
    model: GaussianModel,
    tol: float = DEFAULT_TOL,
    labels: Sequence[str] | None = None,
) -> MixedGraph:
    """UG joining exactly the marginally dependent pairs."""
    n = model.n
    edges = frozenset(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if not ci_test(model, i, j, 0, tol)
    )
    lab = tuple(labels) if labels is not None else _default_labels(n)
    return MixedGraph(n, lab, edges, frozenset())


def concentration_graph_of(
    model: GaussianModel,
    tol: float = DEFAULT_TOL,
    labels: Sequence[str] | None = None,
) -> MixedGraph:
    """UG joining exactly the pairs dependent given all remaining nodes."""
    n = model.n
    full = (1 << n) - 1
    edges = frozenset(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if not ci_test(model, i, j, full & ~bit(i) & ~bit(j), tol)
    )
    lab = tuple(labels) if labels is not None else _default_labels(n)
    return MixedGraph(n, lab, edges, frozenset())


@dataclass
class FaithfulnessReport:
    nodes: int
    trials: int
    mismatches_per_trial: list[int]

    @property
    def faithful_trials(self) -> int:
        return sum(1 for m in self.mismatches_per_trial if m == 0)

    @property
    def faithful_fraction(self) -> float:
        return self.faithful_trials / self.trials

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "trials": self.trials,
            "faithful_trials": self.faithful_trials,
            "faithful_fraction": self.faithful_fraction,
            "mismatches_per_trial": list(self.mismatches_per_trial),
        }


def faithfulness_report(
    g: MixedGraph,
    trials: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_nodes: int = 6,
) -> FaithfulnessReport:
    """Sample `trials` models and compare the determinant test against the
    covariance-graph criterion over every (i, j, K)."""
    if g.n > max_nodes:
        raise SizeLimitError(f"faithfulness sweep limited to {max_nodes} nodes")
    if trials < 1:
        raise ValueError("at least one trial required")
    expected = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            rest = g.full_mask & ~bit(i) & ~bit(j)
            for k in submasks(rest):
                verdict = ci_independent(g, GraphKind.COVARIANCE, bit(i), bit(j), k)
                expected.append((i, j, k, verdict))
    mismatches = []
    for t in range(trials):
        model = sample_markov_gaussian(g, trial_seed(seed, t))
        bad = 0
        for i, j, k, verdict in expected:
            if ci_test(model, i, j, k, tol) != verdict:
                bad += 1
        mismatches.append(bad)
    return FaithfulnessReport(g.n, trials, mismatches)


def dump_model(model: GaussianModel) -> str:
    """Plain-text matrix dump: n, then the covariance rows."""
    lines = [str(model.n)]
    for row in model.sigma:
        lines.append(" ".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"
