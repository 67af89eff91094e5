"""Finite-unions reduction: flattening, decreasers, the importance coloring,
monochromatic block search, the decreaser bound, and the step extraction.

The flattened view lists every component of every instance term in order of
appearance; an index is decreasible when a later component at the same
position within its term is strictly smaller in the base order.  The
block-sequence search is a desk-scale stand-in for the finite-unions
theorem: deterministic backtracking over contiguous candidate blocks,
deepening the element cap until a solution fits, so the result is the
least solution under (element cap, lexicographic) order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from .errors import (
    ArityError,
    BlocksExhaustedError,
    PropertyPViolatedError,
    RangeExhaustedError,
)
from .omega_terms import lh
from .orders import DescendingSequence, Verdict


@dataclass
class FlattenedInstance:
    """Components of the instance terms enumerated in order of appearance,
    with maps back to the source term and the position inside it."""

    alpha: DescendingSequence
    beta: list
    term_index: list
    position: list
    term_lengths: list
    _least_decreaser: dict = field(default_factory=dict, repr=False)

    @property
    def base(self):
        return self.alpha.space.base

    def theta(self, n: int, m: int) -> int:
        return m + sum(self.term_lengths[:n])

    def __len__(self) -> int:
        return len(self.beta)

    def beats(self, i: int, j: int) -> bool:
        """Strict base-order decrease from component i to component j."""
        key = self.base.sort_key
        return key(self.beta[i]) > key(self.beta[j])


def flatten(alpha: DescendingSequence, bound: int) -> FlattenedInstance:
    """Materialize the flattened component sequence until at least `bound`
    entries exist (whole terms are appended, so slightly more may)."""
    beta: list = []
    t: list = []
    p: list = []
    lengths: list = []
    n = 0
    while len(beta) < bound:
        term = alpha.term(n)
        lengths.append(lh(term))
        for m, x in enumerate(term.entries):
            beta.append(x)
            t.append(n)
            p.append(m)
        n += 1
    return FlattenedInstance(alpha, beta, t, p, lengths)


def decreaser_of(F: FlattenedInstance, i: int, search_bound: int) -> Optional[int]:
    """Least j in (i, search_bound) at the same position with a strictly
    smaller component; None when none exists within the bound."""
    hi = min(search_bound, len(F))
    for j in range(i + 1, hi):
        if F.position[j] == F.position[i] and F.beats(i, j):
            return j
    return None


def _least_decreaser_full(F: FlattenedInstance, i: int) -> Optional[int]:
    if i not in F._least_decreaser:
        F._least_decreaser[i] = decreaser_of(F, i, len(F))
    return F._least_decreaser[i]


def important_in(F: FlattenedInstance, S, j: int) -> bool:
    """Whether some index below min(S) acquires its least decreaser inside
    the j-th gap of S (gap 0 starts at 0)."""
    s = tuple(sorted(S))
    if not 0 <= j < len(s):
        raise ArityError(f"gap index {j} out of range for a set of {len(s)} elements")
    lo = 0 if j == 0 else s[j - 1]
    hi = s[j]
    for i in range(s[0]):
        d = _least_decreaser_full(F, i)
        if d is not None and lo <= d < hi:
            return True
    return False


def g_color(F: FlattenedInstance, S, k: int) -> int:
    """Number of important gaps of S, modulo k."""
    if k < 2:
        raise ArityError(f"the coloring needs at least two colours, got {k}")
    s = tuple(sorted(S))
    if not s:
        raise ArityError("the coloring needs a non-empty set")
    landings = set()
    for i in range(s[0]):
        d = _least_decreaser_full(F, i)
        if d is not None and d < s[-1]:
            landings.add(d)
    count = 0
    lo = 0
    for j, hi in enumerate(s):
        if any(lo <= d < hi for d in landings):
            count += 1
        lo = hi
    return count % k


@dataclass(frozen=True)
class BlockSequence:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for b in blocks:
            if not b:
                raise ArityError("blocks must be non-empty")
            if b[0] < 1:
                raise ArityError("blocks contain positive integers")
        for a, b in zip(blocks, blocks[1:]):
            if a[-1] >= b[0]:
                raise ArityError(f"blocks out of order: {a} !< {b}")

    def __len__(self):
        return len(self.blocks)

    def to_json(self):
        return [list(b) for b in self.blocks]


@dataclass(frozen=True)
class Exhausted:
    evaluations: int
    reason: str = "budget"


def find_monochromatic_blocks(
    F: FlattenedInstance,
    n: int,
    k: int,
    count: int,
    window: int,
    budget: int,
    max_block_len: int = 2,
) -> "BlockSequence | Exhausted":
    """Deterministic search for `count` blocks within [1, window] whose
    unions of exactly n blocks are g-monochromatic.

    Candidate blocks are contiguous runs of up to max_block_len integers.
    The element cap deepens from the smallest feasible value up to
    `window`; within a cap the backtracking is lexicographic, so the
    returned sequence is the least solution under (cap, lex) order.
    Budget counts distinct union colourings; overrunning it yields
    Exhausted as a value.
    """
    if n < 3 or k < 2:
        raise ArityError(f"need n >= 3 and k >= 2, got n={n}, k={k}")
    if count < n:
        raise ArityError(f"need at least n={n} blocks, got count={count}")
    if window < 1 or budget < 0:
        raise ArityError("window must be positive and budget non-negative")

    colour_memo: dict = {}
    spent = [0]

    class _BudgetExceeded(Exception):
        pass

    def g_of(union: frozenset) -> int:
        if union not in colour_memo:
            if spent[0] >= budget:
                raise _BudgetExceeded
            spent[0] += 1
            colour_memo[union] = g_color(F, union, k)
        return colour_memo[union]

    def extend(blocks: list, colour: Optional[int], cap: int) -> Optional[list]:
        if len(blocks) == count:
            return blocks
        start = blocks[-1][-1] + 1 if blocks else 1
        slots_after = count - len(blocks) - 1
        for a in range(start, cap + 1):
            if cap - a < slots_after:
                break
            for width in range(1, max_block_len + 1):
                end = a + width - 1
                if end > cap or cap - end < slots_after:
                    break
                cand = tuple(range(a, a + width))
                new_colour = colour
                consistent = True
                if len(blocks) + 1 >= n:
                    for prev in combinations(blocks, n - 1):
                        col = g_of(frozenset().union(*prev, cand))
                        if new_colour is None:
                            new_colour = col
                        elif col != new_colour:
                            consistent = False
                            break
                if not consistent:
                    continue
                blocks.append(cand)
                found = extend(blocks, new_colour, cap)
                if found is not None:
                    return found
                blocks.pop()
        return None

    try:
        for cap in range(count, window + 1):
            result = extend([], None, cap)
            if result is not None:
                return BlockSequence(tuple(result))
    except _BudgetExceeded:
        return Exhausted(spent[0], "budget")
    return Exhausted(spent[0], "space")


@dataclass
class BoundFunction:
    """Block-derived bound on least decreasers, backed by the covering claim:
    f(i) is the max of the first later block whose padded union keeps the
    sequence colour."""

    blocks: BlockSequence
    colour: int
    n: int
    _g: Callable[[frozenset], int]
    _table: dict = field(default_factory=dict, repr=False)

    def __call__(self, i: int) -> int:
        if i not in self._table:
            self._table[i] = self._compute(i)
        return self._table[i]

    def _compute(self, i: int) -> int:
        blocks = self.blocks.blocks
        p = None
        for idx, blk in enumerate(blocks):
            if i < blk[0]:
                p = idx
                break
        if p is None:
            raise BlocksExhaustedError(f"no block starts above {i}")
        run_end = p + self.n - 3
        if run_end >= len(blocks):
            raise BlocksExhaustedError(f"consecutive run from block {p} leaves the sequence")
        run = frozenset().union(*blocks[p : run_end + 1])
        for q in range(run_end + 1, len(blocks)):
            if self._g(run | frozenset(blocks[q])) == self.colour:
                return blocks[q][-1]
        raise BlocksExhaustedError(f"no padding block matches the colour above block {run_end}")


def build_f(F: FlattenedInstance, B: BlockSequence, n: int, k: int) -> BoundFunction:
    """Bound function read off a monochromatic block sequence."""
    if n < 3 or k < 2:
        raise ArityError(f"need n >= 3 and k >= 2, got n={n}, k={k}")
    if len(B) < n:
        raise BlocksExhaustedError(f"need at least n={n} blocks, got {len(B)}")
    memo: dict = {}

    def g_of(union: frozenset) -> int:
        if union not in memo:
            memo[union] = g_color(F, union, k)
        return memo[union]

    colour = g_of(frozenset().union(*B.blocks[:n]))
    return BoundFunction(B, colour, n, g_of)


def check_property_p(F: FlattenedInstance, f, bound: int) -> Verdict:
    """Verify that every decreasible index below the bound is decreased no
    later than f allows; the oracle searches the whole materialized prefix."""
    for i in range(min(bound, len(F))):
        d = _least_decreaser_full(F, i)
        if d is not None and d > f(i):
            return Verdict.fail_at(i)
    return Verdict.ok()


def _decreasible_via_f(F: FlattenedInstance, i: int, f) -> Optional[int]:
    """Least decreaser of i, found inside the f-bound; trusts the bound but
    audits it against the full prefix and reports a violation loudly."""
    horizon = f(i) + 1
    if horizon > len(F):
        raise RangeExhaustedError(
            f"bound {horizon - 1} for index {i} exceeds the materialized prefix"
        )
    d = decreaser_of(F, i, horizon)
    if d is None:
        full = _least_decreaser_full(F, i)
        if full is not None:
            raise PropertyPViolatedError(
                f"index {i} is decreased at {full}, beyond its bound {horizon - 1}"
            )
    return d


def extract_hindman(F: FlattenedInstance, f, count: int) -> list:
    """Step extraction: repeatedly take the least decreasible index in the
    admissible component range and emit the component at its least
    decreaser; the bound function makes decreasibility decidable."""
    out: list = []
    if count == 0:
        return out
    j_s: Optional[int] = None
    for _ in range(count):
        if j_s is None:
            lo, width = 0, F.term_lengths[0]
        else:
            lo = j_s
            width = F.term_lengths[F.term_index[j_s]] - F.position[j_s]
        i_next = None
        d_next = None
        for i_star in range(lo, lo + width):
            if i_star >= len(F):
                raise RangeExhaustedError(f"component range at {i_star} exceeds the prefix")
            d = _decreasible_via_f(F, i_star, f)
            if d is not None:
                i_next, d_next = i_star, d
                break
        if i_next is None:
            raise RangeExhaustedError(
                f"no decreasible index in [{lo}, {lo + width}) despite the covering lemma"
            )
        j_s = d_next
        out.append(F.beta[j_s])
    return out


def lemma_decreasible_check(F: FlattenedInstance, n: int, horizon: int) -> Verdict:
    """Every instance term has a component decreased by a later term's
    same-position component; searched among term indices below `horizon`."""
    if horizon <= n + 1:
        return Verdict.inconclusive()
    term_n = F.alpha.term(n)
    key = F.base.sort_key
    for n2 in range(n + 1, horizon):
        term_2 = F.alpha.term(n2)
        for m in range(min(lh(term_n), lh(term_2))):
            if key(term_n.entries[m]) > key(term_2.entries[m]):
                return Verdict.ok()
    return Verdict.fail_at(None)
