"""Integer reduced homology of subcomplexes of the face complex of J(n, k).

The face complex is not simplicial, so homology is computed on its order
complex (chains of faces under inclusion), which triangulates the same space
and carries the standard simplicial orientation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

from .facelattice import (
    EMPTY,
    FaceLabel,
    HypersimplexParams,
    LabelError,
    dimension,
    enumerate_faces,
    facets,
    format_label,
    is_canonical,
    sort_key,
)

Simplex = Tuple[FaceLabel, ...]


class SubcomplexError(ValueError):
    """A face set is not closed under taking facets."""


@dataclass(frozen=True)
class Subcomplex:
    """A downward-closed set of faces; the empty face is always implied."""

    params: HypersimplexParams
    faces: frozenset

    def __post_init__(self):
        faces = frozenset(f for f in self.faces if f != EMPTY)
        object.__setattr__(self, "faces", faces)
        for f in faces:
            if not is_canonical(self.params, f):
                raise LabelError(f"{f!r} is not canonical for {self.params}")
            missing = [g for g in facets(self.params, f)
                       if g != EMPTY and g not in faces]
            if missing:
                raise SubcomplexError(
                    f"{f} is present but its facet {missing[0]} is not")

    @property
    def top_dimension(self) -> int:
        if not self.faces:
            return -1
        return max(dimension(self.params, f) for f in self.faces)

    def sorted_faces(self) -> List[FaceLabel]:
        return sorted(self.faces,
                      key=lambda f: (dimension(self.params, f), sort_key(f)))


def closure(params: HypersimplexParams, labels: Iterable[FaceLabel]) -> Subcomplex:
    """Smallest subcomplex containing ``labels``."""
    todo = [f for f in labels if f != EMPTY]
    seen = set()
    while todo:
        f = todo.pop()
        if f in seen:
            continue
        seen.add(f)
        todo.extend(g for g in facets(params, f) if g != EMPTY)
    return Subcomplex(params, frozenset(seen))


def full_complex(params: HypersimplexParams) -> Subcomplex:
    return Subcomplex(params, frozenset(enumerate_faces(params)))


def boundary_complex(params: HypersimplexParams) -> Subcomplex:
    """All proper faces; a sphere of dimension n - 2."""
    top = "*" * params.n
    return Subcomplex(params,
                      frozenset(f for f in enumerate_faces(params) if f != top))


def order_complex(params: HypersimplexParams,
                  sub: Subcomplex) -> Dict[int, List[Simplex]]:
    """Strict chains F0 < F1 < ... < Fd of faces of ``sub``, by length - 1.

    Each chain lists its faces by increasing dimension; chains of each length
    are sorted, which fixes the row and column order of the boundary maps.
    """
    faces = sub.sorted_faces()
    below: Dict[FaceLabel, List[FaceLabel]] = {}
    for f in faces:
        down = set()
        for g in facets(params, f):
            if g != EMPTY:
                down.add(g)
                down.update(below[g])
        below[f] = sorted(down, key=lambda g: (dimension(params, g), sort_key(g)))

    # chains ending at each face, built bottom-up
    ending: Dict[FaceLabel, List[Simplex]] = {}
    for f in faces:
        chains = [(f,)]
        for g in below[f]:
            chains.extend(c + (f,) for c in ending[g])
        ending[f] = chains

    out: Dict[int, List[Simplex]] = {}
    rank = {f: i for i, f in enumerate(faces)}
    for chains in ending.values():
        for c in chains:
            out.setdefault(len(c) - 1, []).append(c)
    for d in out:
        out[d].sort(key=lambda c: [rank[f] for f in c])
    return out


class SparseMatrix:
    """Integer matrix stored as one dict per row."""

    def __init__(self, nrows: int, ncols: int,
                 rows: Sequence[Dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: List[Dict[int, int]] = (
            [dict(r) for r in rows] if rows is not None
            else [{} for _ in range(nrows)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "SparseMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in data]
        return cls(len(data), ncols, rows)

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def triplets(self) -> List[Tuple[int, int, int]]:
        return [(i, j, v) for i, r in enumerate(self.rows)
                for j, v in sorted(r.items())]

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.nrows, other.ncols)
        for i, r in enumerate(self.rows):
            acc: Dict[int, int] = {}
            for j, v in r.items():
                for c, w in other.rows[j].items():
                    acc[c] = acc.get(c, 0) + v * w
            out.rows[i] = {c: v for c, v in acc.items() if v}
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols


def _as_sparse(m) -> SparseMatrix:
    if isinstance(m, SparseMatrix):
        return m
    return SparseMatrix.from_dense(m)


def _normalise_diagonal(values: List[int]) -> List[int]:
    """Invariant factors of diag(values): enforce d1 | d2 | ... by gcd/lcm swaps."""
    d = sorted(abs(v) for v in values)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def smith_normal_form(matrix) -> Tuple[int, List[int]]:
    """Rank and invariant factors d1 | d2 | ... | dr of an integer matrix.

    Sparse elimination over Python integers.  Each step pivots on an entry of
    smallest absolute value, then clears its column with row operations and
    its row with column operations; leftover remainders become new pivots.
    """
    m = _as_sparse(matrix)
    rows = {i: dict(r) for i, r in enumerate(m.rows) if r}
    cols: Dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)

    def drop(i, j):
        del rows[i][j]
        s = cols[j]
        s.discard(i)
        if not s:
            del cols[j]

    def pick():
        # a unit entry is already of least absolute value; take the first one,
        # in its row's sparsest column
        for i, r in rows.items():
            units = [j for j, v in r.items() if v in (1, -1)]
            if units:
                return i, min(units, key=lambda j: len(cols[j]))
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), i, j)
        return best[1], best[2]

    diagonal: List[int] = []
    while rows:
        i, j = pick()
        while True:
            p = rows[i][j]
            # clear column j with row operations
            smaller = None
            for other in sorted(cols[j] - {i}):
                q = rows[other][j] // p
                prow = rows[i]
                orow = rows[other]
                for c, v in prow.items():
                    nv = orow.get(c, 0) - q * v
                    if nv:
                        if c not in orow:
                            cols.setdefault(c, set()).add(other)
                        orow[c] = nv
                    elif c in orow:
                        drop(other, c)
                if j in orow and (smaller is None
                                  or abs(orow[j]) < abs(rows[smaller][j])):
                    smaller = other
                if not orow:
                    del rows[other]
            if smaller is not None:
                i = smaller
                continue
            # column j now holds only the pivot; clear row i with column ops,
            # which change nothing outside row i
            rest = {c: v % p for c, v in rows[i].items() if c != j and v % p}
            if not rest:
                break
            for c in list(rows[i]):
                if c != j:
                    drop(i, c)
            for c, v in rest.items():
                rows[i][c] = v
                cols.setdefault(c, set()).add(i)
            j = min(rest, key=lambda c: abs(rest[c]))
        diagonal.append(p)
        for c in list(rows[i]):
            drop(i, c)
        del rows[i]
    factors = _normalise_diagonal(diagonal)
    return len(factors), factors


@dataclass(frozen=True)
class ChainComplex:
    """Augmented simplicial chain complex.

    ``boundary[d]`` maps d-chains to (d-1)-chains; ``boundary[0]`` is the
    augmentation onto the single empty simplex in degree -1.
    """

    simplices: Dict[int, List[Simplex]] = field(repr=False)
    boundary: Dict[int, SparseMatrix] = field(repr=False)

    @property
    def top(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def size(self, d: int) -> int:
        if d == -1:
            return 1
        return len(self.simplices.get(d, ()))


def boundary_matrices(simplices: Dict[int, List[Simplex]]) -> ChainComplex:
    simplices = {d: list(v) for d, v in simplices.items() if v}
    boundary: Dict[int, SparseMatrix] = {}
    if 0 in simplices:
        boundary[0] = SparseMatrix(1, len(simplices[0]),
                                   [{j: 1 for j in range(len(simplices[0]))}])
    else:
        boundary[0] = SparseMatrix(1, 0)
    top = max(simplices) if simplices else -1
    for d in range(1, top + 1):
        index = {s: r for r, s in enumerate(simplices[d - 1])}
        mat = SparseMatrix(len(simplices[d - 1]), len(simplices[d]))
        for c, s in enumerate(simplices[d]):
            for pos in range(len(s)):
                face = s[:pos] + s[pos + 1:]
                mat.rows[index[face]][c] = -1 if pos % 2 else 1
        boundary[d] = mat
    return ChainComplex(simplices, boundary)


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: Tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology_of(complex_: ChainComplex) -> Dict[int, HomologyGroup]:
    ranks: Dict[int, int] = {}
    factors: Dict[int, List[int]] = {}
    for d, mat in complex_.boundary.items():
        ranks[d], factors[d] = smith_normal_form(mat)
    out = {}
    for d in range(-1, complex_.top + 1):
        kernel = complex_.size(d) - ranks.get(d, 0)
        image = ranks.get(d + 1, 0)
        torsion = tuple(f for f in factors.get(d + 1, ()) if f > 1)
        out[d] = HomologyGroup(kernel - image, torsion)
    return out


def reduced_homology(params: HypersimplexParams,
                     sub: Subcomplex) -> Dict[int, HomologyGroup]:
    """Reduced integral homology in degrees -1 .. top dimension of ``sub``."""
    result = homology_of(boundary_matrices(order_complex(params, sub)))
    for d in range(-1, sub.top_dimension + 1):
        result.setdefault(d, HomologyGroup(0))
    return result


def euler_characteristic(params: HypersimplexParams, sub: Subcomplex) -> int:
    return sum((-1) ** dimension(params, f) for f in sub.faces)


def homology_records(groups: Dict[int, HomologyGroup]) -> List[dict]:
    return [{"degree": d, "betti": g.betti, "torsion": list(g.torsion)}
            for d, g in sorted(groups.items())]


def read_subcomplex(params: HypersimplexParams,
                    lines: Iterable[str]) -> Tuple[Subcomplex, int]:
    """Parse newline-separated labels and close them downward.

    Returns the subcomplex and how many faces the closure added.
    """
    from .facelattice import canonicalize, parse_label

    labels = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        labels.append(canonicalize(params, parse_label(line, params.n)))
    given = {f for f in labels if f != EMPTY}
    sub = closure(params, given)
    return sub, len(sub.faces) - len(given)


__all__ = [
    "ChainComplex", "HomologyGroup", "SparseMatrix", "Subcomplex",
    "SubcomplexError", "boundary_complex", "boundary_matrices", "closure",
    "euler_characteristic", "full_complex", "homology_of", "homology_records",
    "order_complex", "read_subcomplex", "reduced_homology",
    "smith_normal_form", "format_label",
]
