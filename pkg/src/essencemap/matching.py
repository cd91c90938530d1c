"""Candidate pair generation and deterministic bipartite matching.

The shared-attribute set of two concepts is realized as a bijective pairing
of attributes whose level reaches the satisfaction threshold.  When one
attribute is similar to several on the other side, a maximum-cardinality
matching decides, with fully deterministic tie-breaking: among maximum
matchings prefer the highest total level, then the lexicographically
smallest pair list.  Matching runs in a canonical orientation (sides
ordered by context id and concept name) so swapping the two concepts
mirrors the result exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .concepts import AttrRef, Concept
from .errors import OracleBoundError
from .lta import StatementScorer

DEFAULT_THRESHOLD = 2
THRESHOLDS = (1, 2, 3)

ORACLE_SIDE_LIMIT = 10


@dataclass(frozen=True, order=True)
class CandidatePair:
    """One attribute pair at or above the satisfaction threshold."""

    left: AttrRef
    right: AttrRef
    level: int

    def mirrored(self) -> "CandidatePair":
        return CandidatePair(self.right, self.left, self.level)


@dataclass(frozen=True)
class MatchSet:
    """A bijective attribute pairing between two concepts."""

    pairs: tuple[CandidatePair, ...]
    left_size: int
    right_size: int

    def __post_init__(self):
        ordered = tuple(sorted(self.pairs, key=lambda p: (p.left, p.right)))
        object.__setattr__(self, "pairs", ordered)
        if self.left_size < 0 or self.right_size < 0:
            raise ValueError("attribute set sizes must be non-negative")
        lefts = [p.left for p in ordered]
        rights = [p.right for p in ordered]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("match set must be bijective")
        if len(ordered) > min(self.left_size, self.right_size):
            raise ValueError("match set exceeds the smaller attribute set")

    def mirror(self) -> "MatchSet":
        return MatchSet(
            tuple(p.mirrored() for p in self.pairs), self.right_size, self.left_size
        )

    @property
    def total_level(self) -> int:
        return sum(p.level for p in self.pairs)


def candidate_pairs(
    context1: str,
    c1: Concept,
    context2: str,
    c2: Concept,
    scorer: StatementScorer,
    threshold: int = DEFAULT_THRESHOLD,
) -> list[CandidatePair]:
    """Score all attribute pairs, keep those at or above the threshold.

    Sorted by level descending, then left and right reference ascending.
    Scoring errors (for instance an unannotated pair in annotated mode)
    propagate.
    """
    if threshold not in THRESHOLDS:
        raise ValueError(f"threshold must be one of {THRESHOLDS}, got {threshold!r}")
    found = []
    for attr1 in c1.attributes:
        left = AttrRef(context1, c1.name, attr1.id)
        for attr2 in c2.attributes:
            right = AttrRef(context2, c2.name, attr2.id)
            level = scorer.level(left, attr1, right, attr2)
            if level >= threshold:
                found.append(CandidatePair(left, right, level))
    found.sort(key=lambda p: (-p.level, p.left, p.right))
    return found


def _deduped(candidates: Iterable[CandidatePair]) -> list[CandidatePair]:
    best: dict[tuple[AttrRef, AttrRef], CandidatePair] = {}
    for pair in candidates:
        key = (pair.left, pair.right)
        kept = best.get(key)
        if kept is None or pair.level > kept.level:
            best[key] = pair
    return sorted(best.values())


def _canonical_orientation(
    candidates: Sequence[CandidatePair],
) -> tuple[list[CandidatePair], bool]:
    """Flip sides so the lexicographically smaller (context, concept) is left."""
    left_key = min((p.left.context, p.left.concept) for p in candidates)
    right_key = min((p.right.context, p.right.concept) for p in candidates)
    if right_key < left_key:
        return [p.mirrored() for p in candidates], True
    return list(candidates), False


def _hungarian_max(profit: list[list[int]]) -> int:
    """Maximum-profit perfect assignment on a square integer matrix.

    Shortest augmenting paths with vertex potentials; deterministic for a
    given matrix.  Returns the optimal total profit.
    """
    n = len(profit)
    infinity = 1 << 60
    cost = [[-profit[i][j] for j in range(n)] for i in range(n)]
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j (1-based)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [infinity] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = infinity
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                reduced = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if reduced < minv[j]:
                    minv[j] = reduced
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    return sum(profit[match[j] - 1][j - 1] for j in range(1, n + 1))


def _assignment_value(pairs: Sequence[CandidatePair], bonus: int) -> int:
    """Best total of (bonus + level) over bijective subsets of ``pairs``."""
    if not pairs:
        return 0
    lefts = sorted({p.left for p in pairs})
    rights = sorted({p.right for p in pairs})
    size = max(len(lefts), len(rights))
    row = {ref: i for i, ref in enumerate(lefts)}
    col = {ref: i for i, ref in enumerate(rights)}
    profit = [[0] * size for _ in range(size)]
    for p in pairs:
        profit[row[p.left]][col[p.right]] = bonus + p.level
    return _hungarian_max(profit)


def _select(pairs: list[CandidatePair]) -> list[CandidatePair]:
    """Lexicographically smallest matching among the optimal ones.

    A pair is kept exactly when forcing it still allows reaching the
    optimal (cardinality, total level) value; scanning pairs in ascending
    (left, right) order therefore yields the lexicographically smallest
    optimal pair list.
    """
    bonus = 3 * len(pairs) + 1  # outweighs any possible total level
    target = _assignment_value(pairs, bonus)
    cardinality = target // bonus
    chosen: list[CandidatePair] = []
    used_left: set[AttrRef] = set()
    used_right: set[AttrRef] = set()
    forced_value = 0
    for pair in sorted(pairs):
        if len(chosen) == cardinality:
            break
        if pair.left in used_left or pair.right in used_right:
            continue
        rest = [
            q
            for q in pairs
            if q.left != pair.left
            and q.right != pair.right
            and q.left not in used_left
            and q.right not in used_right
        ]
        value = forced_value + bonus + pair.level + _assignment_value(rest, bonus)
        if value == target:
            chosen.append(pair)
            used_left.add(pair.left)
            used_right.add(pair.right)
            forced_value += bonus + pair.level
    return chosen


def max_matching(
    candidates: Iterable[CandidatePair], left_size: int, right_size: int
) -> MatchSet:
    """Maximum bijective matching with deterministic tie-breaking.

    Invariant under permutation of the candidate list, and symmetric under
    swapping the two sides (the mirrored input yields the mirrored output).
    """
    pairs = _deduped(candidates)
    if not pairs:
        return MatchSet((), left_size, right_size)
    oriented, flipped = _canonical_orientation(pairs)
    sizes = (right_size, left_size) if flipped else (left_size, right_size)
    chosen = MatchSet(tuple(_select(oriented)), *sizes)
    return chosen.mirror() if flipped else chosen


def brute_force_matching(
    candidates: Iterable[CandidatePair], left_size: int, right_size: int
) -> MatchSet:
    """Exhaustive oracle for :func:`max_matching`; test use only.

    Enumerates every bijective subset of the candidates and applies the
    same selection rule (cardinality, then total level, then smallest pair
    list).  Refuses instances with more than ten attributes per side.
    """
    if left_size > ORACLE_SIDE_LIMIT or right_size > ORACLE_SIDE_LIMIT:
        raise OracleBoundError(
            f"oracle bound exceeded: sides {left_size}x{right_size},"
            f" limit {ORACLE_SIDE_LIMIT}"
        )
    pairs = _deduped(candidates)
    if not pairs:
        return MatchSet((), left_size, right_size)
    oriented, flipped = _canonical_orientation(pairs)
    sizes = (right_size, left_size) if flipped else (left_size, right_size)

    lefts = sorted({p.left for p in oriented})
    adjacency = {
        ref: sorted((p for p in oriented if p.left == ref), key=lambda p: p.right)
        for ref in lefts
    }
    best_key: tuple | None = None
    best: list[CandidatePair] = []

    def visit(index: int, used_rights: set[AttrRef], acc: list[CandidatePair]):
        nonlocal best_key, best
        if best_key is not None and len(acc) + (len(lefts) - index) < -best_key[0]:
            return  # cannot reach the best cardinality any more
        if index == len(lefts):
            key = (
                -len(acc),
                -sum(p.level for p in acc),
                tuple(sorted(acc)),
            )
            if best_key is None or key < best_key:
                best_key = key
                best = list(acc)
            return
        visit(index + 1, used_rights, acc)
        for pair in adjacency[lefts[index]]:
            if pair.right in used_rights:
                continue
            used_rights.add(pair.right)
            acc.append(pair)
            visit(index + 1, used_rights, acc)
            acc.pop()
            used_rights.remove(pair.right)

    visit(0, set(), [])
    chosen = MatchSet(tuple(best), *sizes)
    return chosen.mirror() if flipped else chosen
