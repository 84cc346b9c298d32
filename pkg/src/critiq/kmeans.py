"""Exact 1-D k-means over a small list of positive values.

Optimal 1-D clusters are contiguous runs of the sorted values, so the global
optimum is found by trying every split of the distinct values rather than by
Lloyd iteration. Equal values always land in the same cluster.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import EmptyInput


@dataclass(frozen=True)
class Cluster:
    values: tuple[float, ...]  # ascending, with multiplicity
    center: float


def _weighted_sse(distinct: list[float], counts: list[int], lo: int, hi: int) -> tuple[float, float]:
    """(sse, mean) of the run distinct[lo:hi] with multiplicities."""
    total = 0.0
    n = 0
    for i in range(lo, hi):
        total += distinct[i] * counts[i]
        n += counts[i]
    mean = total / n
    sse = 0.0
    for i in range(lo, hi):
        sse += counts[i] * (distinct[i] - mean) ** 2
    return sse, mean


def kmeans_1d(values: Sequence[float], k: int) -> list[Cluster]:
    """Partition values into at most k contiguous clusters minimizing SSE.

    With fewer distinct values than k, each distinct value becomes its own
    cluster. Ties between equal-SSE partitions prefer the partition whose
    clusters are smaller from the top (largest values) down.
    """
    if not values:
        raise EmptyInput("kmeans_1d requires at least one value")
    ordered = sorted(float(v) for v in values)
    distinct: list[float] = []
    counts: list[int] = []
    for v in ordered:
        if distinct and v == distinct[-1]:
            counts[-1] += 1
        else:
            distinct.append(v)
            counts.append(1)

    d = len(distinct)
    k_eff = min(k, d)

    best_sse: float | None = None
    best_key: tuple[int, ...] | None = None
    best_bounds: tuple[int, ...] | None = None
    # Boundaries are cut points in the distinct-value sequence.
    for cuts in combinations(range(1, d), k_eff - 1):
        bounds = (0, *cuts, d)
        sse = 0.0
        sizes: list[int] = []
        for lo, hi in zip(bounds, bounds[1:]):
            run_sse, _ = _weighted_sse(distinct, counts, lo, hi)
            sse += run_sse
            sizes.append(sum(counts[lo:hi]))
        key = tuple(reversed(sizes))  # smaller top cluster wins ties
        if best_sse is None:
            best_sse, best_key, best_bounds = sse, key, bounds
            continue
        tol = 1e-9 * max(1.0, best_sse, sse)  # absorb float noise in SSE ties
        if sse < best_sse - tol or (abs(sse - best_sse) <= tol and key < best_key):
            best_sse, best_key, best_bounds = sse, key, bounds

    clusters: list[Cluster] = []
    for lo, hi in zip(best_bounds, best_bounds[1:]):
        members: list[float] = []
        for i in range(lo, hi):
            members.extend([distinct[i]] * counts[i])
        _, mean = _weighted_sse(distinct, counts, lo, hi)
        clusters.append(Cluster(values=tuple(members), center=mean))
    return clusters


def cluster_of(clusters: list[Cluster], value: float) -> int:
    """Index of the cluster containing the value (exact membership)."""
    for i, cluster in enumerate(clusters):
        if cluster.values[0] <= value <= cluster.values[-1]:
            return i
    raise ValueError(f"value {value} not covered by any cluster")
