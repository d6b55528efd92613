"""Simulated experimental runs: seeded draws from a joint outcome table.

The generator is numpy's PCG64 (64-bit seeded, period 2^128), driven by
inverse-CDF over the table cells in row-major order, so identical
(table, n, seed) inputs always reproduce identical shot streams on any
platform. Cells below the support threshold are excluded from the CDF
outright: outcomes with exact probability zero can never be drawn.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .correlations import SUPPORT_THRESHOLD, JointTable
from .errors import ShapeMismatchError

_MASK64 = (1 << 64) - 1


class ShotRecord(NamedTuple):
    shot: int
    left_slot: int
    right_slot: int


@dataclass(frozen=True, eq=False)
class EmpiricalReport:
    """Counts and frequencies of a shot stream against its exact table."""

    counts: np.ndarray
    frequencies: np.ndarray
    max_abs_deviation: float
    total_shots: int
    seed: int | None = None


def derive_batch_seed(seed: int, batch: int) -> int:
    """SplitMix64 finalizer over the seed advanced by the batch index.

    Gives well-separated 64-bit seeds for batch-parallel generation while
    keeping the concatenated stream a pure function of (seed, batch count).
    """
    z = (seed + (batch + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _draw(table: JointTable, n: int, seed: int, support_threshold: float) -> np.ndarray:
    """n inverse-CDF draws; returns cell indices into the kept-cell list."""
    p = table.probabilities
    kept = [(i, j) for i in range(p.shape[0]) for j in range(p.shape[1]) if p[i, j] > support_threshold]
    probabilities = np.array([p[i, j] for i, j in kept])
    cdf = np.cumsum(probabilities)
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(n)
    idx = np.searchsorted(cdf, u, side="right")
    np.clip(idx, 0, len(kept) - 1, out=idx)
    cells = np.array(kept, dtype=np.int64)
    return cells[idx]


def sample(
    table: JointTable,
    n: int,
    seed: int,
    batches: int = 1,
    support_threshold: float = SUPPORT_THRESHOLD,
) -> list[ShotRecord]:
    """Draw ``n`` i.i.d. outcome pairs from ``table``.

    ``batches`` splits the stream into independently seeded chunks (seeds
    derived by :func:`derive_batch_seed`) whose concatenation is still fully
    determined by (seed, batches); the default single batch uses ``seed``
    directly.
    """
    if n < 0:
        raise ValueError("shot count must be nonnegative")
    if batches < 1:
        raise ValueError("need at least one batch")
    if n == 0:
        return []
    if batches == 1:
        drawn = _draw(table, n, seed, support_threshold)
    else:
        base = n // batches
        remainder = n % batches
        chunks = []
        for b in range(batches):
            size = base + (1 if b < remainder else 0)
            if size:
                chunks.append(_draw(table, size, derive_batch_seed(seed, b), support_threshold))
        drawn = np.concatenate(chunks)
    return [
        ShotRecord(shot=k, left_slot=int(ls), right_slot=int(rs))
        for k, (ls, rs) in enumerate(drawn)
    ]


def empirical_report(
    records: Sequence[ShotRecord], table: JointTable, seed: int | None = None
) -> EmpiricalReport:
    """Tally a shot stream and compare frequencies with the exact table."""
    n_left, n_right = table.shape
    counts = np.zeros((n_left, n_right), dtype=np.int64)
    if records:
        arr = np.asarray([(r.left_slot, r.right_slot) for r in records], dtype=np.int64)
        if arr[:, 0].min() < 0 or arr[:, 0].max() >= n_left or arr[:, 1].min() < 0 or arr[:, 1].max() >= n_right:
            raise ShapeMismatchError(f"record slots outside a {n_left}x{n_right} table")
        np.add.at(counts, (arr[:, 0], arr[:, 1]), 1)
    total = len(records)
    frequencies = counts / total if total else np.zeros_like(counts, dtype=float)
    deviation = float(np.max(np.abs(frequencies - table.probabilities))) if total else float("nan")
    return EmpiricalReport(
        counts=counts,
        frequencies=frequencies,
        max_abs_deviation=deviation,
        total_shots=total,
        seed=seed,
    )


def write_shot_csv(records: Sequence[ShotRecord], table: JointTable, path) -> None:
    """Export shots with eigenvalue labels resolved from the table.

    Columns: shot,left_slot,left_eigenvalue,right_slot,right_eigenvalue.
    """
    left_values = {slot: value for slot, value in table.left_labels}
    right_values = {slot: value for slot, value in table.right_labels}
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["shot", "left_slot", "left_eigenvalue", "right_slot", "right_eigenvalue"])
        for record in records:
            writer.writerow(
                [
                    record.shot,
                    record.left_slot,
                    f"{left_values[record.left_slot]:.15g}",
                    record.right_slot,
                    f"{right_values[record.right_slot]:.15g}",
                ]
            )
