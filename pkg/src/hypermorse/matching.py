"""The two-parameter family of complete Morse matchings on J(n, k).

Every canonical face other than v0 falls under exactly one of ten rules; the
odd-numbered rules (and R9) pair a face with a face one dimension up, the
even-numbered ones (and R10) undo them.  The vertex v0 = 1...10...0 is paired
with the empty face.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .facelattice import (
    EMPTY,
    ONE,
    STAR,
    ZERO,
    FaceLabel,
    FaceSet,
    HypersimplexParams,
    LabelError,
    ParameterError,
    enumerate_faces,
    facets,
    format_label,
    is_canonical,
    sort_key,
)


class RuleId(str, enum.Enum):
    R1a = "R1a"
    R1b = "R1b"
    R1c = "R1c"
    R2a = "R2a"
    R2b = "R2b"
    R2c = "R2c"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"
    R7 = "R7"
    R8 = "R8"
    R9 = "R9"
    R10 = "R10"
    V0Anchor = "V0Anchor"

    def __str__(self):
        return self.value

    @property
    def raises_dimension(self) -> bool:
        return self in _UPWARD

    @property
    def inverse(self) -> "RuleId":
        return _INVERSE[self]


_UPWARD = frozenset({RuleId.R1a, RuleId.R1b, RuleId.R1c, RuleId.R3,
                     RuleId.R5, RuleId.R7, RuleId.R9})

_INVERSE = {
    RuleId.R1a: RuleId.R2a, RuleId.R1b: RuleId.R2b, RuleId.R1c: RuleId.R2c,
    RuleId.R3: RuleId.R4, RuleId.R5: RuleId.R6, RuleId.R7: RuleId.R8,
    RuleId.R9: RuleId.R10, RuleId.V0Anchor: RuleId.V0Anchor,
}
_INVERSE.update({v: k for k, v in list(_INVERSE.items())})


@dataclass(frozen=True)
class MatchParams:
    m0: int
    m1: int

    def check(self, params: HypersimplexParams) -> None:
        n, k = params.n, params.k
        if k < 2:
            raise ParameterError(
                f"the matching family needs k >= 2 (1 <= m1 <= k-1 is empty "
                f"for k={k})")
        if not 0 <= self.m0 <= n - k - 1:
            raise ParameterError(f"m0={self.m0} outside 0..{n - k - 1}")
        if not 1 <= self.m1 <= k - 1:
            raise ParameterError(f"m1={self.m1} outside 1..{k - 1}")


def all_match_params(params: HypersimplexParams) -> List[MatchParams]:
    """Every admissible (m0, m1), m0 varying slowest."""
    return [MatchParams(m0, m1)
            for m0 in range(params.n - params.k)
            for m1 in range(1, params.k)]


def one_right_of_last_star(label: FaceLabel) -> bool:
    """Whether some 1 sits to the right of the rightmost star (False if starless)."""
    last = label.rfind(STAR)
    return last >= 0 and ONE in label[last + 1:]


def zero_left_of_first_star(label: FaceLabel) -> bool:
    """Whether some 0 sits to the left of the leftmost star (False if starless)."""
    first = label.find(STAR)
    return first >= 0 and ZERO in label[:first]


def classify(params: HypersimplexParams, mp: MatchParams,
             face: FaceLabel, debug: bool = False) -> RuleId:
    """The rule that governs ``face``.

    Walks the case split of the partition argument, so exactly one rule is
    reachable by construction.  With ``debug`` every rule's guard is also
    evaluated separately and must single out the same rule.
    """
    rule = _classify(params, mp, face)
    if debug:
        hits = [r for r, ok in rule_guards(params, mp, face).items() if ok]
        if hits != [rule]:
            raise AssertionError(
                f"{face}: decision tree gave {rule}, guards hold for {hits}")
    return rule


def _classify(params: HypersimplexParams, mp: MatchParams,
              face: FaceLabel) -> RuleId:
    mp.check(params)
    if face == EMPTY:
        raise LabelError("the empty face is matched by the anchor, not a rule")
    if not is_canonical(params, face):
        raise LabelError(f"{face!r} is not canonical for {params}")
    n, k = params.n, params.k
    m0, m1 = mp.m0, mp.m1
    s0, s1 = face.count(ZERO), face.count(ONE)

    if STAR not in face:
        return RuleId.V0Anchor if face == params.v0 else RuleId.R9

    left_zero = zero_left_of_first_star(face)
    if one_right_of_last_star(face):
        if s1 != m1:
            return RuleId.R1a
        if s0 > m0:
            return RuleId.R1b
        if left_zero:
            return RuleId.R5
        return RuleId.R1c if s0 == m0 else RuleId.R6

    if s1 == k - 1:
        if left_zero:
            return RuleId.R3
        return RuleId.R4 if s0 <= n - k - 2 else RuleId.R10

    # s1 < k - 1 here, and no 1 right of the last star
    if s1 != m1 - 1:
        return RuleId.R2a
    if s0 > m0:
        return RuleId.R2b
    if left_zero:
        return RuleId.R7
    return RuleId.R2c if s0 == m0 else RuleId.R8


def rule_guards(params: HypersimplexParams, mp: MatchParams,
                face: FaceLabel) -> Dict[RuleId, bool]:
    """Evaluate each rule's applicability condition on its own.

    Used to cross-check :func:`classify`; exactly one entry should be True.
    """
    n, k = params.n, params.k
    m0, m1 = mp.m0, mp.m1
    s0, s1 = face.count(ZERO), face.count(ONE)
    right1 = one_right_of_last_star(face)
    left0 = zero_left_of_first_star(face)
    r1 = s1 <= k - 1 and right1
    r2 = s1 <= k - 2 and not right1 and STAR in face
    return {
        RuleId.R1a: r1 and s1 != m1,
        RuleId.R1b: r1 and s1 == m1 and s0 > m0,
        RuleId.R1c: r1 and s1 == m1 and s0 == m0 and not left0,
        RuleId.R2a: r2 and s1 != m1 - 1,
        RuleId.R2b: r2 and s1 == m1 - 1 and s0 > m0,
        RuleId.R2c: r2 and s1 == m1 - 1 and s0 == m0 and not left0,
        RuleId.R3: (s1 == k - 1 and s0 <= n - k - 1 and not right1 and left0
                    and STAR in face),
        RuleId.R4: (s1 == k - 1 and s0 <= n - k - 2 and not right1
                    and not left0 and STAR in face),
        RuleId.R5: s1 == m1 and s0 <= m0 and right1 and left0,
        RuleId.R6: s1 == m1 and s0 < m0 and right1 and not left0,
        RuleId.R7: (s1 == m1 - 1 and s0 <= m0 and not right1 and left0
                    and STAR in face),
        RuleId.R8: (s1 == m1 - 1 and s0 < m0 and not right1 and not left0
                    and STAR in face),
        RuleId.R9: s1 == k and s0 == n - k and face != params.v0,
        RuleId.R10: (s1 == k - 1 and s0 == n - k - 1 and not right1
                     and not left0 and STAR in face),
        RuleId.V0Anchor: face == params.v0,
    }


def _replace(label: str, index: int, symbol: str) -> str:
    return label[:index] + symbol + label[index + 1:]


def apply_rule(params: HypersimplexParams, rule: RuleId,
               face: FaceLabel) -> FaceLabel:
    """Perform the symbol replacement of ``rule`` on ``face``."""
    if rule is RuleId.V0Anchor:
        return EMPTY if face == params.v0 else params.v0
    if rule in (RuleId.R1a, RuleId.R1b, RuleId.R1c):
        return _replace(face, face.rfind(ONE), STAR)
    if rule in (RuleId.R2a, RuleId.R2b, RuleId.R2c):
        return _replace(face, face.rfind(STAR), ONE)
    if rule in (RuleId.R3, RuleId.R5, RuleId.R7):
        return _replace(face, face.find(ZERO), STAR)
    if rule in (RuleId.R4, RuleId.R6, RuleId.R8):
        return _replace(face, face.find(STAR), ZERO)
    if rule is RuleId.R9:
        out = _replace(face, face.find(ZERO), STAR)
        return _replace(out, face.rfind(ONE), STAR)
    if rule is RuleId.R10:
        first, last = face.find(STAR), face.rfind(STAR)
        assert face.count(STAR) == 2 and first < last, face
        out = _replace(_replace(face, first, ZERO), last, ONE)
        assert out != params.v0, face
        return out
    raise ValueError(f"unknown rule {rule!r}")


def partner(params: HypersimplexParams, mp: MatchParams,
            face: FaceLabel) -> FaceLabel:
    """The face matched with ``face``."""
    if face == EMPTY:
        mp.check(params)
        return params.v0
    return apply_rule(params, classify(params, mp, face), face)


@dataclass(frozen=True)
class Pair:
    lower: FaceLabel
    upper: FaceLabel
    rule: Optional[RuleId] = None

    def as_dict(self) -> dict:
        return {"lower": format_label(self.lower, machine=True),
                "upper": format_label(self.upper, machine=True),
                "rule": None if self.rule is None else self.rule.value}


@dataclass(frozen=True)
class MorseMatching:
    """A set of disjoint (lower, upper) pairs on the faces of J(n, k).

    ``mp`` is None for matchings that do not come from the family (test
    fixtures, perturbed matchings).  Faces occurring in several pairs are
    tolerated here so that :func:`verify_matching` can report on them; the
    lookup keeps the first occurrence.
    """

    params: HypersimplexParams
    pairs: Tuple[Pair, ...]
    mp: Optional[MatchParams] = None
    _lookup: Dict[FaceLabel, Tuple[FaceLabel, bool]] = field(
        default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        ordered = tuple(sorted(self.pairs,
                               key=lambda p: (sort_key(p.lower), sort_key(p.upper))))
        object.__setattr__(self, "pairs", ordered)
        for p in ordered:
            self._lookup.setdefault(p.lower, (p.upper, True))
            self._lookup.setdefault(p.upper, (p.lower, False))

    @classmethod
    def from_pairs(cls, params: HypersimplexParams,
                   pairs: Iterable, mp: Optional[MatchParams] = None):
        out = []
        for p in pairs:
            out.append(p if isinstance(p, Pair) else Pair(*p))
        return cls(params, tuple(out), mp)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        lower, upper = pair[0], pair[1]
        return self._lookup.get(lower) == (upper, True)

    def partner(self, face: FaceLabel) -> Optional[FaceLabel]:
        hit = self._lookup.get(face)
        return None if hit is None else hit[0]

    def is_matched(self, face: FaceLabel) -> bool:
        return face in self._lookup

    def matched_up(self, face: FaceLabel) -> bool:
        """True when ``face`` is the lower cell of its pair."""
        hit = self._lookup.get(face)
        return hit is not None and hit[1]

    def without(self, excluded: Iterable) -> "MorseMatching":
        drop = {(p[0], p[1]) for p in excluded}
        keep = [p for p in self.pairs if (p.lower, p.upper) not in drop]
        return MorseMatching(self.params, tuple(keep), self.mp)

    def to_dict(self) -> dict:
        out = {"n": self.params.n, "k": self.params.k,
               "m0": None if self.mp is None else self.mp.m0,
               "m1": None if self.mp is None else self.mp.m1,
               "pairs": [p.as_dict() for p in self.pairs]}
        return out


def build_matching(params: HypersimplexParams, mp: MatchParams,
                   faces: FaceSet | None = None) -> MorseMatching:
    mp.check(params)
    if faces is None:
        faces = enumerate_faces(params)
    pairs = [Pair(EMPTY, params.v0, RuleId.V0Anchor)]
    for face in faces:
        if face == EMPTY or face == params.v0:
            continue
        rule = classify(params, mp, face)
        if rule.raises_dimension:
            pairs.append(Pair(face, apply_rule(params, rule, face), rule))
    return MorseMatching(params, tuple(pairs), mp)


@dataclass
class VerificationReport:
    complete: bool
    involutive: bool
    codimension_one: bool
    anchored: bool
    type_constraints: bool
    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.complete and self.involutive and self.codimension_one
                and self.anchored and self.type_constraints)

    def as_dict(self) -> dict:
        return {"complete": self.complete, "involutive": self.involutive,
                "codimension_one": self.codimension_one,
                "anchored": self.anchored,
                "type_constraints": self.type_constraints,
                "problems": list(self.problems)}


_MAX_PROBLEMS = 20


def verify_matching(params: HypersimplexParams, mp: MatchParams,
                    matching: MorseMatching,
                    faces: FaceSet | None = None) -> VerificationReport:
    """Check a family matching against its defining properties."""
    if matching.params != params or (matching.mp is not None and matching.mp != mp):
        raise ParameterError("matching was built for different parameters")
    mp.check(params)
    if faces is None:
        faces = enumerate_faces(params)
    problems: List[str] = []

    def note(msg):
        if len(problems) < _MAX_PROBLEMS:
            problems.append(msg)

    seen: Dict[FaceLabel, int] = {}
    for p in matching.pairs:
        for f in (p.lower, p.upper):
            seen[f] = seen.get(f, 0) + 1
    complete = True
    for f in faces:
        c = seen.get(f, 0)
        if c != 1:
            complete = False
            note(f"{format_label(f)} occurs in {c} pairs")
    for f in seen:
        if f not in faces:
            complete = False
            note(f"{format_label(f)} is not a face of {params}")

    involutive = True
    for p in matching.pairs:
        try:
            up, down = partner(params, mp, p.lower), partner(params, mp, p.upper)
        except LabelError as exc:
            involutive = False
            note(str(exc))
            continue
        if up != p.upper or down != p.lower:
            involutive = False
            note(f"partner does not swap {format_label(p.lower)} and {p.upper}")

    codim = True
    for p in matching.pairs:
        try:
            ok = p.lower in facets(params, p.upper)
        except LabelError:
            ok = False
        if not ok:
            codim = False
            note(f"{format_label(p.lower)} is not a facet of {p.upper}")

    anchored = (EMPTY, params.v0) in matching

    typed = True
    n, k = params.n, params.k
    for f in faces:
        if f == EMPTY:
            continue
        rule = classify(params, mp, f)
        if rule in (RuleId.R9, RuleId.V0Anchor):
            continue
        if not (f.count(ZERO) < n - k and f.count(ONE) < k
                and f.count(STAR) >= 2):
            typed = False
            note(f"{f} of type {rule} violates the star/count bounds")

    return VerificationReport(complete, involutive, codim, anchored, typed,
                              problems)

