"""Backward functionals: homogeneous witnesses to descending base sequences.

Each extractor takes a finite witness prefix, checks the colour contract it
relies on, and surfaces contract violations as explicit errors instead of
producing garbage.  Star values are checked before colours so that a
witness violating the exponent-existence guarantee reports the star, and a
witness with merely wrong colours reports the mismatch.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations

from .colorings import (
    STAR,
    BaseColor,
    ColoringInstance,
    HColor,
    color_large,
    color_triple,
    color_tuple,
    comparing_exponent_sequence,
    _delta_num,
    _exponent_at,
    _step,
)
from .epsilon_terms import (
    BELOW_EPSILON_ZERO,
    EpsilonOf,
    EpsilonTerm,
    OmegaPow,
    b_extended,
    ht_extended,
)
from .errors import (
    ArityError,
    BelowEpsilonZeroError,
    ColourMismatchError,
    StarEncounteredError,
    WitnessTooShallowError,
)
from .omega_terms import OmegaTerm
from .orders import DescendingSequence


@dataclass(frozen=True)
class HomogeneousWitness:
    """A finite strictly increasing index set with the colour all its tuples
    of the given arity are claimed to receive."""

    indices: tuple
    colour: object
    arity: int
    variant: str = ""

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        for a, b in zip(self.indices, self.indices[1:]):
            if a >= b:
                raise ArityError(f"witness indices not strictly increasing: {self.indices}")


def witness_holds(color_fn, witness: HomogeneousWitness) -> bool:
    """Exhaustively recheck that every arity-sized tuple has the claimed colour."""
    return all(
        color_fn(*tup) == witness.colour
        for tup in combinations(witness.indices, witness.arity)
    )


def _require_star_free(inst: ColoringInstance, indices) -> None:
    for i in indices:
        if inst.value(i) is STAR:
            raise StarEncounteredError(f"instance value at index {i} is star")


def _check_triples(inst: ColoringInstance, witness: HomogeneousWitness, required) -> None:
    if witness.colour != required:
        raise ColourMismatchError(f"witness claims {witness.colour!r}, extractor needs {required!r}")
    for tup in combinations(witness.indices, 3):
        got = color_triple(inst, *tup)
        if got != required:
            raise ColourMismatchError(f"triple {tup} has colour {got!r}, needs {required!r}")


def extract_rt3(alpha: DescendingSequence, witness: HomogeneousWitness, k: int) -> list:
    """Read k base elements off a good-coloured triple witness: at each step
    the exponent of the earlier term at the first position where it differs
    from the next witness term."""
    if k == 0:
        return []
    H = witness.indices
    if len(H) < k + 1:
        raise WitnessTooShallowError(f"need {k + 1} witness indices, have {len(H)}")
    inst = ColoringInstance.from_sequence(alpha)
    _require_star_free(inst, H[: k + 1])
    _check_triples(inst, witness, BaseColor.GOOD)
    out = []
    for i in range(k):
        s = inst.value(H[i])
        t = inst.value(H[i + 1])
        e = _exponent_at(inst, s, _delta_num(inst, s, t))
        if e is None:
            raise StarEncounteredError(f"no exponent at the difference of indices {H[i]}, {H[i + 1]}")
        out.append(e)
    return out


def extract_rtn(alpha: DescendingSequence, h: int, witness: HomogeneousWitness, k: int) -> list:
    """Depth-h extraction over consecutive witness windows, for a witness of
    the iterated coloring whose colour is the good base colour."""
    if h < 2:
        raise ArityError(f"iterated extraction needs h >= 2, got {h}")
    if k == 0:
        return []
    H = witness.indices
    if len(H) < max(k + h, h + 2):
        raise WitnessTooShallowError(f"need {max(k + h, h + 2)} witness indices, have {len(H)}")
    inst = ColoringInstance.from_sequence(alpha)
    _require_star_free(inst, H)
    required = HColor.from_base(BaseColor.GOOD)
    if witness.colour != required:
        raise ColourMismatchError(f"witness claims {witness.colour!r}, extractor needs {required!r}")
    for n in range(len(H) - h - 1):
        tup = H[n : n + h + 2]
        got = color_tuple(inst, h, tup)
        if got != required:
            raise ColourMismatchError(f"tuple {tup} has colour {got!r}, needs {required!r}")
    out = []
    for n in range(k):
        window = H[n : n + h + 1]
        vals = comparing_exponent_sequence(inst, h, window)
        v = vals[H[n]]
        if v is STAR:
            raise StarEncounteredError(f"comparing exponent ran out on window {window}")
        out.append(v)
    return out


def _succ_in(sorted_H: list, x: int) -> int:
    pos = bisect_right(sorted_H, x)
    if pos >= len(sorted_H):
        raise WitnessTooShallowError(f"no witness element above {x}")
    return sorted_H[pos]


def _prec_in(sorted_H: list, x: int) -> int:
    pos = bisect_right(sorted_H, x - 1)
    if pos == 0:
        raise WitnessTooShallowError(f"no witness element below {x}")
    return sorted_H[pos - 1]


def extract_large(alpha: DescendingSequence, witness: HomogeneousWitness, k: int) -> list:
    """The exactly-large-set extraction: walk the witness-indexed comparing
    exponents, reading off the dominant fixed-point index at each stage and
    advancing the depth past the height where it occurred."""
    if k == 0:
        return []
    H = sorted(witness.indices)
    if len(H) < 2:
        raise WitnessTooShallowError("the extraction needs at least two witness indices")
    inst = ColoringInstance.from_sequence(alpha)

    memo: dict = {}

    def value_at(i: int, m: int):
        # the witness-indexed comparing exponent of alpha_i at depth m
        if m == 0:
            return inst.value(i)
        key = (i, m)
        if key not in memo:
            u = value_at(i, m - 1)
            v = value_at(_succ_in(H, i), m - 1)
            memo[key] = _step(inst, u, v)
        return memo[key]

    X = inst.base
    out = []
    t_j = H[0]
    n_j = H[1]
    for _ in range(k):
        if t_j > _prec_in(H, n_j):
            raise WitnessTooShallowError(
                f"stage depth {t_j} exceeds the witness predecessor of {n_j}"
            )
        gamma = value_at(n_j, t_j)
        if gamma is STAR:
            raise StarEncounteredError(
                f"comparing exponent of index {n_j} ran out before depth {t_j}"
            )
        if t_j >= 1:
            # depth-0 stages consume no exponents, so no guarantee is needed
            _check_touched_large_set(inst, H, n_j)
        tau = b_extended(gamma, 0, X)
        if tau is BELOW_EPSILON_ZERO:
            raise BelowEpsilonZeroError(f"stage value at index {n_j} is below every fixed point")
        out.append(tau)
        t_j = t_j + ht_extended(gamma, 0, X) + 1
        pos = bisect_right(H, t_j - 1)
        if pos >= len(H):
            raise WitnessTooShallowError(f"no witness element at or above depth {t_j}")
        n_j = _succ_in(H, H[pos])
    return out


def _check_touched_large_set(inst: ColoringInstance, H: list, n_j: int) -> None:
    """Verify the exactly large witness subset backing the current stage:
    its minimum is the witness predecessor of n_j, so its colour being 0
    guarantees the comparing exponents this stage consumes."""
    m = _prec_in(H, n_j)
    tail_start = bisect_right(H, n_j)
    needed = m + 1
    tail = H[tail_start : tail_start + needed]
    if len(tail) < needed:
        raise WitnessTooShallowError(
            f"witness too short to form the exactly large set at minimum {m}"
        )
    S = (m, n_j, *tail)
    if color_large(inst, S) != 0:
        raise ColourMismatchError(f"touched exactly large set {S} is not coloured 0")


def extract_epsilon_b_path(alpha: DescendingSequence, witness: HomogeneousWitness, k: int) -> list:
    """Terminal certificate for a constant b-drop witness: the b-values along
    the witness are themselves the descending base sequence."""
    if k == 0:
        return []
    H = witness.indices
    if len(H) < k + 1:
        raise WitnessTooShallowError(f"need {k + 1} witness indices, have {len(H)}")
    inst = ColoringInstance.from_sequence(alpha)
    _require_star_free(inst, H[: k + 1])
    _check_triples(inst, witness, BaseColor.B_DROP)
    X = inst.base
    out = []
    for i in range(k):
        s = inst.value(H[i])
        t = inst.value(H[i + 1])
        val = b_extended(s, _delta_num(inst, s, t), X)
        if val is BELOW_EPSILON_ZERO:
            raise BelowEpsilonZeroError(f"no fixed point occurs at the difference of index {H[i]}")
        out.append(val)
    return out


def _collect_elements(value, out: set) -> None:
    if isinstance(value, OmegaTerm):
        if value.level == 1:
            out.update(value.entries)
        else:
            for sub in value.entries:
                _collect_elements(sub, out)
    elif isinstance(value, EpsilonTerm):
        for m in value.monomials:
            if isinstance(m, EpsilonOf):
                out.add(m.index)
            elif isinstance(m, OmegaPow):
                _collect_elements(m.exponent, out)


def subterm_check(alpha: DescendingSequence, outputs, prefix_len: int) -> bool:
    """True when every output element occurs inside some instance term of the
    materialized prefix: as an entry at any nesting depth, or as a
    fixed-point index."""
    seen: set = set()
    for i in range(prefix_len):
        _collect_elements(alpha.term(i), seen)
    return all(x in seen for x in outputs)
