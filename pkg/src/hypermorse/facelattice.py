"""Faces of the hypersimplex J(n, k) encoded as strings over ``0``, ``1``, ``*``.

A label such as ``"11***00"`` stands for the convex hull of all 0/1 vertices
with coordinate sum k that agree with the label away from the stars.  The
empty face is the empty string :data:`EMPTY` and has dimension -1.

Canonical labels: vertices carry no stars, and a face of dimension d >= 1
carries exactly d + 1 stars.  Labels whose stars are forced to a single
completion are collapsed to that vertex by :func:`canonicalize`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Dict, Iterator, List, Tuple

FaceLabel = str
Vertex = Tuple[int, ...]

ZERO, ONE, STAR = "0", "1", "*"
EMPTY: FaceLabel = ""

EMPTY_TEXT = "∅"
EMPTY_TOKEN = "empty"

_SORT_TABLE = str.maketrans("01*", "012")


class LabelError(ValueError):
    """A label is malformed or has no vertices in the given J(n, k)."""


class ParameterError(ValueError):
    """Parameters fall outside the admissible range."""


@dataclass(frozen=True)
class HypersimplexParams:
    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise ParameterError("n and k must be integers")
        if not 1 <= self.k <= self.n - 1:
            raise ParameterError(
                f"J(n,k) needs 1 <= k <= n-1, got n={self.n}, k={self.k}")

    @property
    def dim(self) -> int:
        return self.n - 1

    @property
    def v0(self) -> FaceLabel:
        """The vertex 1...10...0."""
        return ONE * self.k + ZERO * (self.n - self.k)

    def __str__(self):
        return f"J({self.n},{self.k})"


def sort_key(label: FaceLabel) -> str:
    """Lexicographic key with ``0 < 1 < *``; the empty face sorts first."""
    return label.translate(_SORT_TABLE)


def format_label(label: FaceLabel, machine: bool = False) -> str:
    if label == EMPTY:
        return EMPTY_TOKEN if machine else EMPTY_TEXT
    return label


def parse_label(text: str, n: int | None = None) -> FaceLabel:
    """Read a label from text.  No canonicalization is done."""
    text = text.strip()
    if text in (EMPTY_TEXT, EMPTY_TOKEN):
        return EMPTY
    if not text:
        raise LabelError("blank label")
    bad = set(text) - {ZERO, ONE, STAR}
    if bad:
        raise LabelError(f"illegal character(s) {sorted(bad)} in {text!r}")
    if n is not None and len(text) != n:
        raise LabelError(f"label {text!r} has length {len(text)}, expected {n}")
    return text


def count_zeros(label: FaceLabel) -> int:
    if label == EMPTY:
        raise LabelError("the empty face has no symbols")
    return label.count(ZERO)


def count_ones(label: FaceLabel) -> int:
    if label == EMPTY:
        raise LabelError("the empty face has no symbols")
    return label.count(ONE)


def count_stars(label: FaceLabel) -> int:
    return label.count(STAR)


def _check(params: HypersimplexParams, label: FaceLabel) -> None:
    if label == EMPTY:
        return
    if len(label) != params.n:
        raise LabelError(
            f"label {label!r} has length {len(label)}, expected {params.n}")
    if set(label) - {ZERO, ONE, STAR}:
        raise LabelError(f"illegal character in {label!r}")
    ones = label.count(ONE)
    if not ones <= params.k <= ones + label.count(STAR):
        raise LabelError(f"{label!r} has no vertices in {params}")


def dimension(params: HypersimplexParams, label: FaceLabel) -> int:
    _check(params, label)
    if label == EMPTY:
        return -1
    t = label.count(STAR)
    free = params.k - label.count(ONE)
    if free == 0 or free == t:
        return 0
    return t - 1


def is_canonical(params: HypersimplexParams, label: FaceLabel) -> bool:
    _check(params, label)
    if label == EMPTY:
        return True
    t = label.count(STAR)
    free = params.k - label.count(ONE)
    return t == 0 or 1 <= free <= t - 1


def canonicalize(params: HypersimplexParams, label: FaceLabel) -> FaceLabel:
    _check(params, label)
    if label == EMPTY:
        return label
    t = label.count(STAR)
    if t == 0:
        return label
    free = params.k - label.count(ONE)
    if free == 0:
        return label.replace(STAR, ZERO)
    if free == t:
        return label.replace(STAR, ONE)
    return label


def vertices_of(params: HypersimplexParams, label: FaceLabel) -> frozenset:
    """All 0/1 completions of the stars with coordinate sum k."""
    _check(params, label)
    if label == EMPTY:
        raise LabelError("the empty face has no vertices")
    stars = [i for i, c in enumerate(label) if c == STAR]
    base = [1 if c == ONE else 0 for c in label]
    free = params.k - label.count(ONE)
    out = set()
    for chosen in itertools.combinations(stars, free):
        v = list(base)
        for i in chosen:
            v[i] = 1
        out.add(tuple(v))
    return frozenset(out)


def is_face_of(params: HypersimplexParams, lower: FaceLabel,
               upper: FaceLabel) -> bool:
    _check(params, lower)
    _check(params, upper)
    if lower == EMPTY:
        return True
    if upper == EMPTY:
        return False
    return vertices_of(params, lower) <= vertices_of(params, upper)


@dataclass(frozen=True)
class FaceSet:
    """Canonical faces of J(n, k) grouped by dimension, -1 through n-1."""

    params: HypersimplexParams
    by_dim: Dict[int, Tuple[FaceLabel, ...]] = field(repr=False)

    def __iter__(self) -> Iterator[FaceLabel]:
        for d in sorted(self.by_dim):
            yield from self.by_dim[d]

    def __len__(self):
        return sum(len(v) for v in self.by_dim.values())

    def __contains__(self, label):
        return label in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self)

    def counts(self) -> Dict[int, int]:
        return {d: len(v) for d, v in sorted(self.by_dim.items())}

    def f_vector(self) -> List[int]:
        """Face counts for dimensions 0 .. n-1."""
        return [len(self.by_dim[d]) for d in range(self.params.n)]


def enumerate_faces(params: HypersimplexParams) -> FaceSet:
    n, k = params.n, params.k
    by_dim: Dict[int, List[FaceLabel]] = {d: [] for d in range(-1, n)}
    by_dim[-1].append(EMPTY)
    # product over "01*" already yields the 0 < 1 < * order
    for symbols in itertools.product((ZERO, ONE, STAR), repeat=n):
        t = symbols.count(STAR)
        free = k - symbols.count(ONE)
        if t == 0:
            if free == 0:
                by_dim[0].append("".join(symbols))
        elif t >= 2 and 1 <= free <= t - 1:
            by_dim[t - 1].append("".join(symbols))
    return FaceSet(params, {d: tuple(v) for d, v in by_dim.items()})


def face_count_formula(params: HypersimplexParams, i: int) -> int:
    """Closed-form number of i-faces, summing over the admissible ones-counts."""
    n, k = params.n, params.k
    if not 1 <= i <= n - 1:
        raise ParameterError(f"dimension {i} outside 1..{n - 1}")
    total = 0
    for j in range(1, k + 1):
        if k <= j + i - 1 <= n - 1:
            total += comb(n, i + 1) * comb(n - i - 1, j - 1)
    return total


def facets(params: HypersimplexParams, face: FaceLabel) -> List[FaceLabel]:
    """Codimension-one faces, in sorted order.  Vertices cover only EMPTY."""
    if not is_canonical(params, face):
        raise LabelError(f"{face!r} is not canonical for {params}")
    if face == EMPTY:
        return []
    d = dimension(params, face)
    if d == 0:
        return [EMPTY]
    out = set()
    for i, c in enumerate(face):
        if c != STAR:
            continue
        for sym in (ZERO, ONE):
            g = canonicalize(params, face[:i] + sym + face[i + 1:])
            if dimension(params, g) == d - 1:
                out.add(g)
    return sorted(out, key=sort_key)


def cover_pairs(params: HypersimplexParams,
                faces: FaceSet | None = None) -> Iterator[Tuple[FaceLabel, FaceLabel]]:
    """Every (facet, face) pair of the face poset, EMPTY included."""
    if faces is None:
        faces = enumerate_faces(params)
    for f in faces:
        for g in facets(params, f):
            yield g, f
