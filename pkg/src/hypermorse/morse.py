"""Directed Hasse diagrams of matchings and the two acyclicity tests.

Orientation follows the usual discrete Morse convention: an unmatched cover
pair points from the smaller face to the larger one, a matched pair points
down.  Reversing every arc does not change whether a cycle exists.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .facelattice import (
    EMPTY,
    FaceLabel,
    FaceSet,
    HypersimplexParams,
    ParameterError,
    cover_pairs,
    dimension,
    enumerate_faces,
    facets,
    format_label,
    sort_key,
)
from .matching import MorseMatching, Pair


@dataclass(frozen=True)
class HasseDiagram:
    params: HypersimplexParams
    nodes: Tuple[FaceLabel, ...]
    dims: Dict[FaceLabel, int] = field(repr=False)
    # (source, target, matched)
    arcs: Tuple[Tuple[FaceLabel, FaceLabel, bool], ...] = field(repr=False)
    succ: Dict[FaceLabel, Tuple[FaceLabel, ...]] = field(repr=False)

    def reversed(self) -> "HasseDiagram":
        arcs = tuple((t, s, m) for s, t, m in self.arcs)
        return HasseDiagram(self.params, self.nodes, self.dims, arcs,
                            _successors(self.nodes, arcs))


def _successors(nodes, arcs):
    succ = {v: [] for v in nodes}
    for s, t, _ in arcs:
        succ[s].append(t)
    return {v: tuple(ts) for v, ts in succ.items()}


def build_hasse(params: HypersimplexParams,
                matching: Optional[MorseMatching] = None,
                faces: FaceSet | None = None) -> HasseDiagram:
    if matching is not None and matching.params != params:
        raise ParameterError("matching belongs to a different J(n,k)")
    if faces is None:
        faces = enumerate_faces(params)
    nodes = tuple(faces)
    dims = {f: d for d, fs in faces.by_dim.items() for f in fs}
    if matching is not None:
        for p in matching.pairs:
            if p.lower not in dims or p.upper not in dims:
                raise ParameterError(
                    f"pair ({format_label(p.lower)}, {p.upper}) is not made "
                    f"of faces of {params}")
    arcs = []
    for lower, upper in cover_pairs(params, faces):
        if matching is not None and (lower, upper) in matching:
            arcs.append((upper, lower, True))
        else:
            arcs.append((lower, upper, False))
    arcs = tuple(arcs)
    return HasseDiagram(params, nodes, dims, arcs, _successors(nodes, arcs))


def _rotate(cycle: List[FaceLabel], key) -> List[FaceLabel]:
    i = min(range(len(cycle)), key=lambda j: key(cycle[j]))
    return cycle[i:] + cycle[:i]


def detect_cycle(diagram: HasseDiagram) -> Optional[List[FaceLabel]]:
    """A directed cycle of the diagram, or None.

    Iterative three-colour depth-first search.  The witness lists each face
    once, rotated to start at its lexicographically smallest label.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(diagram.nodes, WHITE)
    succ = diagram.succ
    for root in diagram.nodes:
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        path = [root]
        stack = [iter(succ[root])]
        while stack:
            for nxt in stack[-1]:
                c = colour[nxt]
                if c == WHITE:
                    colour[nxt] = GREY
                    path.append(nxt)
                    stack.append(iter(succ[nxt]))
                    break
                if c == GREY:
                    cycle = path[path.index(nxt):]
                    return _rotate(cycle, sort_key)
            else:
                colour[path.pop()] = BLACK
                stack.pop()
    return None


def cycle_alternates(diagram: HasseDiagram, cycle: Sequence[FaceLabel]) -> bool:
    """Whether a cycle lives in two adjacent dimensions, alternating."""
    dims = [diagram.dims[f] for f in cycle]
    lo = min(dims)
    if max(dims) != lo + 1 or len(cycle) % 2:
        return False
    return all(dims[i] != dims[i - 1] for i in range(len(dims)))


@dataclass(frozen=True)
class VPath:
    """Cells a0, b0, a1, ..., br, a(r+1) of a gradient path."""

    cells: Tuple[FaceLabel, ...]

    @property
    def lower_cells(self) -> Tuple[FaceLabel, ...]:
        return self.cells[::2]

    @property
    def is_closed(self) -> bool:
        return len(self.cells) >= 3 and self.cells[0] == self.cells[-1]

    @property
    def is_nontrivial(self) -> bool:
        return len(self.cells) >= 3


def is_vpath(params: HypersimplexParams, matching: MorseMatching,
             cells: Sequence[FaceLabel]) -> bool:
    if len(cells) % 2 == 0:
        return False
    for i in range(0, len(cells) - 2, 2):
        a, b, a_next = cells[i], cells[i + 1], cells[i + 2]
        if (a, b) not in matching or a == a_next:
            return False
        if a_next not in facets(params, b):
            return False
    return True


def find_closed_vpath(params: HypersimplexParams,
                      matching: MorseMatching) -> Optional[VPath]:
    """A nontrivial closed V-path, or None.

    Works on the graph a -> a' (a' a facet of a's upper partner, a' != a,
    a' itself matched upward), stripping sources with Kahn's algorithm; any
    remaining vertex lies downstream of a cycle that is then traced back.
    """
    lowers = [p.lower for p in matching.pairs]
    nxt: Dict[FaceLabel, List[FaceLabel]] = {}
    indeg: Dict[FaceLabel, int] = dict.fromkeys(lowers, 0)
    for a in lowers:
        b = matching.partner(a)
        outs = [g for g in facets(params, b)
                if g != a and matching.matched_up(g)]
        nxt[a] = outs
        for g in outs:
            indeg[g] += 1

    queue = [a for a in lowers if indeg[a] == 0]
    removed = set(queue)
    while queue:
        a = queue.pop()
        for g in nxt[a]:
            indeg[g] -= 1
            if indeg[g] == 0:
                removed.add(g)
                queue.append(g)
    residual = [a for a in lowers if a not in removed]
    if not residual:
        return None

    prev: Dict[FaceLabel, FaceLabel] = {}
    for a in residual:
        for g in nxt[a]:
            if g not in removed:
                prev.setdefault(g, a)
    # every residual vertex keeps a residual predecessor; walk back until repeat
    start = min(residual, key=sort_key)
    order: Dict[FaceLabel, int] = {}
    walk = []
    v = start
    while v not in order:
        order[v] = len(walk)
        walk.append(v)
        v = prev[v]
    loop = walk[order[v]:]
    loop.reverse()
    loop = _rotate(loop, sort_key)
    cells: List[FaceLabel] = []
    for a in loop:
        cells += [a, matching.partner(a)]
    cells.append(loop[0])
    return VPath(tuple(cells))


@dataclass(frozen=True)
class MorseCensus:
    u: Dict[int, int]
    empty_unmatched: bool

    def as_dict(self) -> Dict[str, int]:
        return {str(p): c for p, c in sorted(self.u.items())}


def unmatched_census(params: HypersimplexParams, matching: MorseMatching,
                     excluded_pairs: Iterable = (),
                     faces: FaceSet | None = None) -> MorseCensus:
    """Unmatched cells per dimension once ``excluded_pairs`` are dropped."""
    excluded = [(p[0], p[1]) if not isinstance(p, Pair) else (p.lower, p.upper)
                for p in excluded_pairs]
    for lo, up in excluded:
        if (lo, up) not in matching:
            raise ValueError(
                f"pair ({format_label(lo)}, {up}) is not in the matching")
    reduced = matching.without(excluded)
    if faces is None:
        faces = enumerate_faces(params)
    u = {}
    for d in range(params.n):
        u[d] = sum(1 for f in faces.by_dim[d] if not reduced.is_matched(f))
    return MorseCensus(u, not reduced.is_matched(EMPTY))


def _cofacets(params, faces):
    up = defaultdict(list)
    for lower, upper in cover_pairs(params, faces):
        up[lower].append(upper)
    return up


def _incidence_cycle(params, up, dims, a0, b0):
    """Shortest cycle a0, b0, a1, b1, ..., a0 through the cover a0 < b0.

    Searches the graph of cover relations between the two dimensions of
    (a0, b0) with that one cover removed; returns the alternating cell list
    without the repeated a0, or None.
    """
    parent = {b0: None}
    frontier = [b0]
    while frontier:
        nxt = []
        for x in frontier:
            if dims[x] == dims[a0]:
                steps = [y for y in up[x] if y != parent.get(x)]
            else:
                steps = [y for y in facets(params, x) if y != parent.get(x)]
            for y in steps:
                if (x, y) in ((b0, a0), (a0, b0)) or y in parent:
                    continue
                parent[y] = x
                if y == a0:
                    path = [a0]
                    while path[-1] != b0:
                        path.append(parent[path[-1]])
                    path.reverse()     # b0, a1, b1, ..., a0
                    return [a0] + path[:-1]
                nxt.append(y)
        frontier = nxt
    return None


def perturb_matching(matching: MorseMatching, rng: random.Random,
                     steps: int = 3,
                     faces: FaceSet | None = None) -> MorseMatching:
    """Randomly rewire, loop, drop, or add pairs of a discrete vector field.

    rewire: pairs (a, b), (c, d) of equal dimensions with a < d and c < b
        become (a, d), (c, b).
    loop: pick a cover a0 < b0 and a shortest cycle a0, b0, a1, b1, ... of
        covers between those two dimensions, then match each ai with bi.
        Cells displaced from their old pairs stay unmatched.
    drop / add: remove a pair, or pair two unmatched incident cells.
    """
    params = matching.params
    if faces is None:
        faces = enumerate_faces(params)
    up = _cofacets(params, faces)
    dims = {f: d for d, fs in faces.by_dim.items() for f in fs}
    pairs = {p.lower: p.upper for p in matching.pairs}
    down = {hi: lo for lo, hi in pairs.items()}

    def unpair_cell(x):
        if x in pairs:
            del down[pairs.pop(x)]
        elif x in down:
            del pairs[down.pop(x)]

    def pair(lo, hi):
        unpair_cell(lo)
        unpair_cell(hi)
        pairs[lo] = hi
        down[hi] = lo

    for _ in range(steps):
        move = rng.random()
        lowers = sorted(pairs, key=sort_key)
        if move < 0.35 and lowers:
            a = rng.choice(lowers)
            b = pairs[a]
            options = [(down[d], d) for d in up[a] if d != b and d in down
                       and down[d] in facets(params, b)]
            if options:
                c, d = rng.choice(options)
                pair(a, d)
                pair(c, b)
        elif move < 0.6:
            # cells of dimension >= 0 that have a cofacet
            a0 = rng.choice([f for f in faces if dims[f] >= 0 and up[f]])
            cycle = _incidence_cycle(params, up, dims, a0,
                                    rng.choice(up[a0]))
            if cycle is not None:
                for i in range(0, len(cycle), 2):
                    pair(cycle[i], cycle[i + 1])
        elif move < 0.8 and lowers:
            unpair_cell(rng.choice(lowers))
        else:
            matched = set(pairs) | set(down)
            free = [f for f in faces if f not in matched]
            if not free:
                continue
            a = rng.choice(free)
            options = [g for g in up[a] if g not in matched]
            if options:
                pair(a, rng.choice(options))
    return MorseMatching.from_pairs(params, pairs.items())


def random_matching(params: HypersimplexParams, rng: random.Random,
                    faces: FaceSet | None = None) -> MorseMatching:
    """A greedy maximal matching on randomly ordered cover pairs."""
    if faces is None:
        faces = enumerate_faces(params)
    covers = list(cover_pairs(params, faces))
    rng.shuffle(covers)
    used = set()
    chosen = []
    for lo, hi in covers:
        if lo not in used and hi not in used:
            used.update((lo, hi))
            chosen.append((lo, hi))
    return MorseMatching.from_pairs(params, chosen)


def to_dot(diagram: HasseDiagram, name: str = "hasse") -> str:
    """Graphviz source: one rank per dimension, matched arcs in bold."""
    ids = {f: f"f{i}" for i, f in enumerate(diagram.nodes)}
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    by_dim: Dict[int, List[FaceLabel]] = defaultdict(list)
    for f in diagram.nodes:
        by_dim[diagram.dims[f]].append(f)
    for d in sorted(by_dim):
        lines.append(f"  {{ rank=same; // dim {d}")
        for f in by_dim[d]:
            lines.append(f'    {ids[f]} [label="{format_label(f)}"];')
        lines.append("  }")
    for s, t, matched in diagram.arcs:
        style = ' [style=bold, color="red"]' if matched else ""
        lines.append(f"  {ids[s]} -> {ids[t]}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def verdict_dict(witness: Optional[Sequence[FaceLabel]],
                 census: Optional[MorseCensus] = None) -> dict:
    return {
        "acyclic": witness is None,
        "witness": None if witness is None
        else [format_label(f, machine=True) for f in witness],
        "census": None if census is None else census.as_dict(),
    }
