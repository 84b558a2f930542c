"""Sparse Gaussian elimination over Q(q)."""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

from .coeff import ZERO, CoeffRat


def _echelon(columns: Sequence[Mapping[Hashable, CoeffRat]], rhs: Mapping | None = None):
    """Row-reduce; returns (rows, pivots, rhs_col) where rows are dicts over column indices."""
    keys = {}
    for col in columns:
        for k in col:
            keys.setdefault(k, len(keys))
    if rhs:
        for k in rhs:
            keys.setdefault(k, len(keys))
    rows: list[dict[int, CoeffRat]] = [dict() for _ in keys]
    aug: list[CoeffRat] = [ZERO] * len(keys)
    for c, col in enumerate(columns):
        for k, v in col.items():
            if v:
                rows[keys[k]][c] = v
    if rhs:
        for k, v in rhs.items():
            aug[keys[k]] = v
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    ncols = len(columns)
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if c in rows[i]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = rows[r][c].inverse()
        rows[r] = {k: v * inv for k, v in rows[r].items()}
        aug[r] = aug[r] * inv
        for i in range(len(rows)):
            if i != r and c in rows[i]:
                f = rows[i][c]
                row = rows[i]
                for k, v in rows[r].items():
                    s = row.get(k, ZERO) - f * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
                aug[i] = aug[i] - f * aug[r]
        pivots.append((r, c))
        r += 1
    return rows, pivots, aug, r


def solve(columns: Sequence[Mapping], rhs: Mapping) -> list[CoeffRat] | None:
    """A solution x of sum_c x_c * columns[c] = rhs, or None if the system is inconsistent."""
    rows, pivots, aug, rank = _echelon(columns, rhs)
    if any(aug[i] for i in range(rank, len(rows))):
        return None
    x = [ZERO] * len(columns)
    for r, c in pivots:
        x[c] = aug[r]
    return x


def nullspace(columns: Sequence[Mapping]) -> list[list[CoeffRat]]:
    """A basis of {x : sum_c x_c * columns[c] = 0}."""
    rows, pivots, _, _ = _echelon(columns)
    pivot_cols = {c: r for r, c in pivots}
    basis = []
    for free in range(len(columns)):
        if free in pivot_cols:
            continue
        v = [ZERO] * len(columns)
        v[free] = CoeffRat.from_rational(1)
        for c, r in pivot_cols.items():
            val = rows[r].get(free)
            if val:
                v[c] = -val
        basis.append(v)
    return basis


def rank(columns: Sequence[Mapping]) -> int:
    return _echelon(columns)[3]
