"""Persistent homology by boundary-matrix reduction over GF(2).

Columns are sparse sorted index lists added by symmetric difference.
Dimensions are processed in decreasing order so that the clearing
optimization can skip columns already known to reduce to zero; the
output is identical to the plain left-to-right reduction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .filtration import SparseFiltration, StaticComplex

INF = math.inf


class MalformedFiltrationError(ValueError):
    """A filtration misses a face or orders a face after its coface."""


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multisets of (birth, death) pairs per homology dimension 0..k-1.

    death is +inf for classes alive at the end of the filtration.
    Classes created by dimension-k simplices are not reported: with only
    a k-skeleton their deaths are unknowable.
    """

    pairs: dict[int, list[tuple[float, float]]]
    k: int
    alpha_max: float | None = None

    def in_dim(self, dim: int) -> list[tuple[float, float]]:
        return self.pairs.get(dim, [])

    def total_points(self) -> int:
        return sum(len(v) for v in self.pairs.values())


def _symm_diff(a: list[int], b: list[int]) -> list[int]:
    """Symmetric difference of two sorted index lists (GF(2) column add)."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            i += 1
            j += 1
        elif x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def _boundaries(f: SparseFiltration):
    """Facet index lists per simplex; raises on missing/misordered faces."""
    index: dict[tuple[int, ...], int] = {}
    for i, s in enumerate(f.simplices):
        if s.vertices in index:
            raise MalformedFiltrationError(f"duplicate simplex {s.vertices}")
        index[s.vertices] = i
    bnd: list[list[int] | None] = [None] * len(f.simplices)
    for i, s in enumerate(f.simplices):
        if s.dim == 0:
            continue
        faces = []
        for v in range(len(s.vertices)):
            face = s.vertices[:v] + s.vertices[v + 1:]
            j = index.get(face)
            if j is None:
                raise MalformedFiltrationError(
                    f"missing face {face} of simplex {s.vertices}"
                )
            if j > i:
                raise MalformedFiltrationError(
                    f"face {face} ordered after its coface {s.vertices}"
                )
            faces.append(j)
        faces.sort()
        bnd[i] = faces
    return bnd


def compute_persistence(f: SparseFiltration,
                        keep_zero_pairs: bool = False) -> PersistenceDiagram:
    """Standard column reduction in filtration order, GF(2) coefficients.

    Pairs (value of creating simplex, value of destroying simplex) per
    finite class; unpaired creators of dimension < k give infinite bars.
    Zero-persistence pairs are dropped unless ``keep_zero_pairs``.
    """
    sims = f.simplices
    n = len(sims)
    bnd = _boundaries(f)
    dims = [s.dim for s in sims]
    maxdim = max(dims) if n else 0

    by_dim: dict[int, list[int]] = {d: [] for d in range(maxdim + 1)}
    for i, d in enumerate(dims):
        by_dim[d].append(i)

    cleared: set[int] = set()
    finite_pairs: list[tuple[int, int]] = []   # (creator index, destroyer index)
    unpaired: dict[int, list[int]] = {d: [] for d in range(maxdim + 1)}

    for d in range(maxdim, 0, -1):
        low_to_col: dict[int, list[int]] = {}
        for j in by_dim[d]:
            if j in cleared:
                continue
            col = bnd[j]
            while col:
                other = low_to_col.get(col[-1])
                if other is None:
                    break
                col = _symm_diff(col, other)
            if col:
                low = col[-1]
                low_to_col[low] = col
                finite_pairs.append((low, j))
                cleared.add(low)
            else:
                unpaired[d].append(j)
    unpaired[0] = [i for i in by_dim[0] if i not in cleared]

    pairs: dict[int, list[tuple[float, float]]] = {d: [] for d in range(f.k)}
    for i, j in finite_pairs:
        d = dims[i]
        if d >= f.k:
            continue
        birth, death = sims[i].value, sims[j].value
        if death != birth or keep_zero_pairs:
            pairs[d].append((birth, death))
    for d in range(min(f.k, maxdim + 1)):
        for i in unpaired[d]:
            pairs[d].append((sims[i].value, INF))
    for d in pairs:
        pairs[d].sort()
    return PersistenceDiagram(pairs=pairs, k=f.k, alpha_max=f.alpha_max)


def _gf2_rank(cols: list[int]) -> int:
    """Rank of a GF(2) matrix given as integer-bitmask columns."""
    pivot: dict[int, int] = {}
    rank = 0
    for c in cols:
        while c:
            low = c.bit_length() - 1
            p = pivot.get(low)
            if p is None:
                pivot[low] = c
                rank += 1
                break
            c ^= p
    return rank


def betti_numbers(c: StaticComplex, through_dim: int | None = None) -> list[int]:
    """Homology ranks over GF(2) of a static complex.

    Reports dimensions 0..k-1 by default (the top dimension is
    unreliable under a k-skeleton); pass ``through_dim`` to override,
    e.g. for Euler characteristic checks on uncapped complexes.
    """
    top = c.k - 1 if through_dim is None else through_dim
    index_by_dim: dict[int, dict[tuple[int, ...], int]] = {}
    for s in c.simplices:
        d = len(s) - 1
        idx = index_by_dim.setdefault(d, {})
        if tuple(s) in idx:
            raise ValueError(f"duplicate simplex {s}")
        idx[tuple(s)] = len(idx)

    def rank_boundary(d: int) -> int:
        if d <= 0 or d not in index_by_dim or (d - 1) not in index_by_dim:
            return 0
        faces = index_by_dim[d - 1]
        cols = []
        for s in index_by_dim[d]:
            mask = 0
            for v in range(len(s)):
                face = s[:v] + s[v + 1:]
                j = faces.get(face)
                if j is None:
                    raise ValueError(f"missing face {face} of simplex {s}")
                mask |= 1 << j
            cols.append(mask)
        return _gf2_rank(cols)

    betti = []
    for d in range(top + 1):
        n_d = len(index_by_dim.get(d, {}))
        betti.append(n_d - rank_boundary(d) - rank_boundary(d + 1))
    return betti


# --- diagram serialization ------------------------------------------------

def _enc(x: float):
    return "inf" if math.isinf(x) else float(x)


def _dec(x) -> float:
    return INF if x == "inf" else float(x)


def diagram_to_json(dgm: PersistenceDiagram) -> str:
    doc = {
        "k": dgm.k,
        "alpha_max": None if dgm.alpha_max is None else float(dgm.alpha_max),
        "diagrams": [
            {"dim": d, "pairs": [[_enc(b), _enc(dth)] for b, dth in dgm.in_dim(d)]}
            for d in range(dgm.k)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def diagram_from_json(text: str) -> PersistenceDiagram:
    doc = json.loads(text)
    pairs = {int(entry["dim"]): [(_dec(b), _dec(dth)) for b, dth in entry["pairs"]]
             for entry in doc["diagrams"]}
    for d in range(int(doc["k"])):
        pairs.setdefault(d, [])
    amax = doc.get("alpha_max")
    return PersistenceDiagram(pairs=pairs, k=int(doc["k"]),
                              alpha_max=None if amax is None else float(amax))


def diagram_to_csv(dgm: PersistenceDiagram) -> str:
    lines = ["dim,birth,death"]
    for d in range(dgm.k):
        for b, dth in dgm.in_dim(d):
            dth_s = "inf" if math.isinf(dth) else repr(float(dth))
            lines.append(f"{d},{repr(float(b))},{dth_s}")
    return "\n".join(lines) + "\n"


def diagram_from_csv(text: str, k: int | None = None,
                     alpha_max: float | None = None) -> PersistenceDiagram:
    pairs: dict[int, list[tuple[float, float]]] = {}
    rows = [r for r in text.strip().splitlines() if r.strip()]
    for row in rows[1:]:
        d_s, b_s, dth_s = row.split(",")
        pairs.setdefault(int(d_s), []).append((_dec(b_s), _dec(dth_s)))
    if k is None:
        k = max(pairs) + 1 if pairs else 1
    for d in range(k):
        pairs.setdefault(d, [])
    return PersistenceDiagram(pairs=pairs, k=k, alpha_max=alpha_max)
