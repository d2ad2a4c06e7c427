"""Metric space ingestion.

A finite metric space is either a point cloud with one of the standard
coordinate kernels (euclidean, manhattan, chebyshev) or an explicit
square distance matrix.  Everything downstream only talks to
:class:`MetricInput`, so the two representations are interchangeable.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.spatial.distance import cdist

EXPLICIT_MATRIX = "explicit_matrix"

# scipy names for the supported coordinate kernels
_KERNELS = {
    "euclidean": "euclidean",
    "manhattan": "cityblock",
    "chebyshev": "chebyshev",
}

#: absolute tolerance for symmetry / zero-diagonal checks on explicit matrices
MATRIX_TOL = 1e-9


class MetricFormatError(ValueError):
    """Input file or matrix cannot be interpreted as a metric space."""


@dataclass(frozen=True, eq=False)
class MetricInput:
    """A finite metric space on point indices ``0..n-1``.

    Instances are immutable after construction and safe for concurrent
    read-only use.  Exact duplicate points (pairwise distance exactly 0)
    are removed at construction; ``dedup_map`` sends each original index
    to the index of its surviving representative.
    """

    metric_kind: str
    n: int
    points: np.ndarray | None = None    # (n, D) coordinates, kernel kinds only
    matrix: np.ndarray | None = None    # (n, n), explicit_matrix only
    dedup_map: tuple[int, ...] = ()

    @cached_property
    def _dmat(self) -> np.ndarray:
        if self.metric_kind == EXPLICIT_MATRIX:
            return self.matrix
        return cdist(self.points, self.points, metric=_KERNELS[self.metric_kind])

    def distance_matrix(self) -> np.ndarray:
        """Full pairwise distance matrix (cached, do not mutate)."""
        return self._dmat

    def distance(self, i: int, j: int) -> float:
        """Distance between points ``i`` and ``j``."""
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"point index out of range: ({i}, {j}) with n={n}")
        return float(self._dmat[i, j])

    @property
    def dim(self) -> int | None:
        return None if self.points is None else int(self.points.shape[1])


def _deduplicate(dmat: np.ndarray):
    """Return (keep_indices, dedup_map) merging indices at distance exactly 0."""
    n = dmat.shape[0]
    iu, ju = np.nonzero(np.triu(dmat == 0.0, k=1))
    if len(iu) == 0:
        return list(range(n)), tuple(range(n))
    # union-find keeping the smallest index of each duplicate group as root
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in zip(iu.tolist(), ju.tolist()):
        ri, rj = find(i), find(j)
        if ri != rj:
            lo, hi = (ri, rj) if ri < rj else (rj, ri)
            parent[hi] = lo
    roots = [find(i) for i in range(n)]
    keep = sorted(set(roots))
    pos = {r: k for k, r in enumerate(keep)}
    return keep, tuple(pos[r] for r in roots)


def from_points(points, metric_kind: str = "euclidean") -> MetricInput:
    """Build a MetricInput from an (n, D) coordinate array."""
    if metric_kind not in _KERNELS:
        raise MetricFormatError(f"unknown metric kind: {metric_kind!r}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise MetricFormatError("points must form a non-empty 2d array")
    if not np.all(np.isfinite(pts)):
        raise MetricFormatError("points contain non-finite coordinates")
    dmat = cdist(pts, pts, metric=_KERNELS[metric_kind])
    keep, remap = _deduplicate(dmat)
    if len(keep) < pts.shape[0]:
        warnings.warn(
            f"removed {pts.shape[0] - len(keep)} duplicate point(s); "
            "indices remapped (see dedup_map)"
        )
        pts = pts[keep]
    pts.setflags(write=False)
    return MetricInput(metric_kind=metric_kind, n=pts.shape[0], points=pts,
                       dedup_map=remap)


def from_matrix(matrix) -> MetricInput:
    """Build a MetricInput from an explicit square distance matrix.

    The matrix must be symmetric up to ``MATRIX_TOL`` (entries are averaged),
    have a zero diagonal up to the same tolerance, and be nonnegative.
    Triangle-inequality violations are permitted but produce a warning.
    """
    mat = np.asarray(matrix, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise MetricFormatError(f"distance matrix must be square, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise MetricFormatError("distance matrix contains non-finite entries")
    asym = np.abs(mat - mat.T)
    if asym.size and asym.max() > MATRIX_TOL:
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise MetricFormatError(
            f"asymmetry {asym[i, j]:g} > {MATRIX_TOL:g} at entry ({i}, {j})"
        )
    mat = (mat + mat.T) / 2.0
    diag = np.abs(np.diag(mat))
    if diag.size and diag.max() > MATRIX_TOL:
        i = int(np.argmax(diag))
        raise MetricFormatError(f"nonzero diagonal {mat[i, i]:g} at index {i}")
    np.fill_diagonal(mat, 0.0)
    if mat.min() < 0.0:
        i, j = np.unravel_index(np.argmin(mat), mat.shape)
        raise MetricFormatError(f"negative distance {mat[i, j]:g} at entry ({i}, {j})")

    keep, remap = _deduplicate(mat)
    if len(keep) < mat.shape[0]:
        warnings.warn(
            f"removed {mat.shape[0] - len(keep)} duplicate point(s); "
            "indices remapped (see dedup_map)"
        )
        mat = mat[np.ix_(keep, keep)]
    lint_triangle_inequality(mat)
    mat.setflags(write=False)
    return MetricInput(metric_kind=EXPLICIT_MATRIX, n=mat.shape[0], matrix=mat,
                       dedup_map=remap)


def lint_triangle_inequality(mat: np.ndarray, max_checked: int = 128,
                             rng=None) -> bool:
    """Warn if the matrix violates the triangle inequality.

    Checks all midpoints for n <= max_checked, a random sample otherwise.
    Violations are allowed (downstream constructions still run) but the
    approximation guarantees assume a true metric.
    """
    n = mat.shape[0]
    if n < 3:
        return True
    if n <= max_checked:
        mids = range(n)
    else:
        rng = np.random.default_rng(0) if rng is None else rng
        mids = rng.choice(n, size=max_checked, replace=False)
    for k in mids:
        slack = mat - (mat[:, k, None] + mat[None, k, :])
        worst = slack.max()
        if worst > MATRIX_TOL:
            i, j = np.unravel_index(np.argmax(slack), slack.shape)
            warnings.warn(
                f"triangle inequality violated: d({i},{j}) exceeds "
                f"d({i},{k}) + d({k},{j}) by {worst:g}; "
                "approximation guarantees assume a true metric"
            )
            return False
    return True


def _parse_rows(path, fmt: str, header: bool,
                rectangular: bool = True) -> list[list[float]]:
    text = Path(path).read_text()
    if fmt not in ("csv", "whitespace"):
        raise MetricFormatError(f"unknown format: {fmt!r}")
    rows: list[list[float]] = []
    width = None
    lineno = 0
    for raw in text.splitlines():
        lineno += 1
        if header and lineno == 1:
            continue
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")] if fmt == "csv" else line.split()
        values = []
        for col, field in enumerate(fields, start=1):
            try:
                values.append(float(field))
            except ValueError:
                raise MetricFormatError(
                    f"{path}: cannot parse {field!r} as a number "
                    f"at row {lineno}, column {col}"
                ) from None
        if width is None:
            width = len(values)
        elif rectangular and len(values) != width:
            raise MetricFormatError(
                f"{path}: inconsistent row width at row {lineno}: "
                f"expected {width} fields, got {len(values)}"
            )
        rows.append(values)
    if not rows:
        raise MetricFormatError(f"{path}: empty input")
    return rows


def load_points(path, fmt: str = "csv", header: bool = False,
                metric_kind: str = "euclidean") -> MetricInput:
    """Load a point cloud from a text file, one point per line."""
    rows = _parse_rows(path, fmt, header)
    return from_points(np.array(rows, dtype=float), metric_kind=metric_kind)


def load_matrix(path, fmt: str = "csv", header: bool = False) -> MetricInput:
    """Load an explicit square distance matrix from a text file."""
    rows = _parse_rows(path, fmt, header, rectangular=False)
    n = len(rows)
    if any(len(r) != n for r in rows):
        bad = next(i for i, r in enumerate(rows) if len(r) != n)
        raise MetricFormatError(
            f"{path}: non-square matrix ({n} rows, row {bad + 1} has {len(rows[bad])} entries)"
        )
    return from_matrix(np.array(rows, dtype=float))
