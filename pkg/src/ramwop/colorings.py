"""Colorings parameterized by a descending-sequence instance.

One instance object carries the sequence (values may be terms or the star
placeholder) and per-instance memo tables.  The base triple coloring, the
iterated tuple coloring, the exactly-large-set coloring and the
comparing-exponent recursion all live here.

The memo tables key on value identity: a descending sequence caches its
terms, and every extraction step returns a subobject of an existing term,
so identical positions yield identical objects.  Entries pin their keys,
which keeps ids stable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

from .epsilon_terms import (
    EpsilonSpace,
    EpsilonTerm,
    b_extended,
    compare_b_values,
    contains_epsilon,
    epsilon_delta,
    exponent_or_none,
    ht_extended,
)
from .errors import (
    ArityError,
    IndexOutOfRangeError,
    InvalidColorError,
    NotDescendingError,
    NotExactlyLargeError,
)
from .omega_terms import OmegaSpace, OmegaTerm, compare_lex, delta
from .orders import DescendingSequence, LinearOrder, Ordering


class _Star:
    __slots__ = ()

    def __repr__(self):
        return "Star"


#: Placeholder for positions where a comparing exponent does not exist.
STAR = _Star()


class BaseColor(enum.Enum):
    STAR = "star"
    BELOW_EPSILON = "below-epsilon"
    DELTA_DROP = "delta-drop"
    B_DROP = "b-drop"
    HT_DROP = "ht-drop"
    GOOD = "good"


#: Base colour values in canonical tag order, per variant.
OMEGA_TAGS = (BaseColor.STAR, BaseColor.DELTA_DROP, BaseColor.GOOD)
EPSILON_TAGS = (
    BaseColor.STAR,
    BaseColor.BELOW_EPSILON,
    BaseColor.DELTA_DROP,
    BaseColor.B_DROP,
    BaseColor.HT_DROP,
    BaseColor.GOOD,
)


def variant_tags(variant: str) -> tuple:
    if variant == "omega":
        return OMEGA_TAGS
    if variant == "epsilon":
        return EPSILON_TAGS
    raise InvalidColorError(f"unknown coloring variant {variant!r}")


@dataclass(frozen=True)
class HColor:
    """Colour of the iterated tuple coloring: either a base colour or a
    level-tagged pair of colour vectors."""

    base: Optional[BaseColor] = None
    level: Optional[int] = None
    v: Optional[tuple] = None
    w: Optional[tuple] = None

    @classmethod
    def from_base(cls, colour: BaseColor) -> "HColor":
        return cls(base=colour)

    @classmethod
    def at_level(cls, j: int, v: tuple, w: tuple) -> "HColor":
        return cls(level=j, v=tuple(v), w=tuple(w))

    @property
    def is_base(self) -> bool:
        return self.base is not None

    def __repr__(self):
        if self.is_base:
            return f"Base({self.base.value})"
        vs = ",".join(c.value for c in self.v)
        ws = ",".join(c.value for c in self.w)
        return f"Level({self.level},[{vs}],[{ws}])"


@dataclass
class ColoringInstance:
    """A coloring parameter: variant, base order and the indexed sequence.

    `sigma` maps an index to a term of the variant's term space or to STAR.
    Descent of the instance is checked lazily, only at indices a colour
    evaluation actually touches.
    """

    variant: str
    base: LinearOrder
    sigma: Callable[[int], object]
    level: Optional[int] = None
    _values: dict = field(default_factory=dict, repr=False)
    _descent_ok: set = field(default_factory=set, repr=False)
    _step_memo: dict = field(default_factory=dict, repr=False)
    _c1_memo: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_sequence(cls, seq: DescendingSequence) -> "ColoringInstance":
        space = seq.space
        if isinstance(space, OmegaSpace):
            return cls("omega", space.base, seq.term, level=space.level)
        if isinstance(space, EpsilonSpace):
            return cls("epsilon", space.base, seq.term)
        raise ArityError(f"cannot build a coloring over space {space!r}")

    def value(self, i: int):
        if i < 0:
            raise IndexOutOfRangeError(f"negative instance index {i}")
        if i not in self._values:
            self._values[i] = self.sigma(i)
        return self._values[i]


def _cmp_values(inst: ColoringInstance, s, t) -> Ordering:
    if inst.variant == "omega":
        return compare_lex(inst.base, s, t)
    return EpsilonSpace(inst.base).compare(s, t)


def _delta_num(inst: ColoringInstance, s, t) -> int:
    if isinstance(s, OmegaTerm):
        return delta(s, t).numeric
    return epsilon_delta(s, t).numeric


def _exponent_at(inst: ColoringInstance, value, idx: int):
    """Exponent of `value` at position idx, or None when it does not exist."""
    if isinstance(value, OmegaTerm):
        if idx < len(value.entries):
            return value.entries[idx]
        return None
    if isinstance(value, EpsilonTerm):
        return exponent_or_none(value, idx)
    return None


def _step(inst: ColoringInstance, u, v):
    """One comparing-exponent step: the exponent of u at the first position
    where u and its successor value v differ; STAR when it does not exist."""
    if u is STAR or v is STAR:
        return STAR
    key = (id(u), id(v))
    hit = inst._step_memo.get(key)
    if hit is not None:
        return hit[0]
    if isinstance(u, (OmegaTerm, EpsilonTerm)):
        e = _exponent_at(inst, u, _delta_num(inst, u, v))
        result = STAR if e is None else e
    else:
        result = STAR
    inst._step_memo[key] = (result, u, v)
    return result


def _check_descending_pair(inst: ColoringInstance, i: int, j: int) -> None:
    u = inst.value(i)
    v = inst.value(j)
    if u is STAR or v is STAR:
        return
    key = (i, j)
    if key in inst._descent_ok:
        return
    if _cmp_values(inst, u, v) != Ordering.GREATER:
        raise NotDescendingError(f"instance values at {i} and {j} are not strictly descending")
    inst._descent_ok.add(key)


def _c1(inst: ColoringInstance, u, v, w) -> BaseColor:
    """Total base triple coloring on three values (terms or STAR)."""
    key = (id(u), id(v), id(w))
    hit = inst._c1_memo.get(key)
    if hit is not None:
        return hit[0]
    result = _c1_eval(inst, u, v, w)
    inst._c1_memo[key] = (result, u, v, w)
    return result


def _c1_eval(inst: ColoringInstance, u, v, w) -> BaseColor:
    if u is STAR or v is STAR or w is STAR:
        return BaseColor.STAR
    if inst.variant == "epsilon" and not contains_epsilon(u):
        return BaseColor.BELOW_EPSILON
    duv = _delta_num(inst, u, v)
    dvw = _delta_num(inst, v, w)
    if duv > dvw:
        return BaseColor.DELTA_DROP
    if inst.variant == "epsilon":
        X = inst.base
        bu = b_extended(u, duv, X)
        bv = b_extended(v, dvw, X)
        if compare_b_values(X, bu, bv) == Ordering.GREATER:
            return BaseColor.B_DROP
        if ht_extended(u, duv, X) > ht_extended(v, dvw, X):
            return BaseColor.HT_DROP
    return BaseColor.GOOD


def _validate_indices(indices, arity: Optional[int] = None) -> tuple:
    idx = tuple(indices)
    if arity is not None and len(idx) != arity:
        raise ArityError(f"expected {arity} indices, got {len(idx)}")
    for a, b in zip(idx, idx[1:]):
        if a >= b:
            raise IndexOutOfRangeError(f"indices not strictly increasing: {idx}")
    return idx


def color_triple(inst: ColoringInstance, i: int, j: int, k: int) -> BaseColor:
    """Base coloring of a triple of instance positions."""
    _validate_indices((i, j, k))
    _check_descending_pair(inst, i, j)
    _check_descending_pair(inst, j, k)
    return _c1(inst, inst.value(i), inst.value(j), inst.value(k))


def comparing_exponent_sequence(inst: ColoringInstance, n: int, I) -> dict:
    """Stage-n comparing exponents over the index set I.

    Returns the values at positions of I; every position outside I is star
    by definition once n >= 1.   At stage n the positions beyond the first
    len(I)-n are star, as is any position whose exponent ran out.
    """
    I = _validate_indices(I)
    k = len(I) - 1
    if k < 1:
        raise ArityError("comparing exponents need an index set of at least two positions")
    if not 0 <= n <= k:
        raise ArityError(f"stage {n} out of range for an index set of {k + 1} positions")
    vals = {j: inst.value(j) for j in I}
    for m in range(n):
        cutoff = k - m
        nxt = {}
        for t, j in enumerate(I):
            nxt[j] = _step(inst, vals[j], vals[I[t + 1]]) if t < cutoff else STAR
        vals = nxt
    return vals


def vw_vectors(inst: ColoringInstance, j: int, I) -> tuple:
    """The paired colour vectors at depth j over the index tuple I."""
    I = _validate_indices(I)
    h = len(I) - 2
    if h < 2:
        raise ArityError(f"tuple coloring needs at least 4 indices, got {len(I)}")
    if not 0 <= j <= h - 2:
        raise ArityError(f"depth {j} out of range for arity {h + 2}")
    seq = comparing_exponent_sequence(inst, j, I)
    width = h - j - 1
    v = tuple(_c1(inst, seq[I[t]], seq[I[t + 1]], seq[I[t + 2]]) for t in range(width))
    w = tuple(_c1(inst, seq[I[t + 1]], seq[I[t + 2]], seq[I[t + 3]]) for t in range(width))
    return v, w


def color_tuple(inst: ColoringInstance, h: int, I) -> HColor:
    """Iterated coloring of an (h+2)-tuple: the first depth whose vector pair
    is not uniformly good tags the colour; otherwise the base colour of the
    leading triple at depth h-1."""
    if h < 2:
        raise ArityError(f"tuple coloring needs h >= 2, got {h}")
    I = _validate_indices(I, arity=h + 2)
    for a, b in zip(I, I[1:]):
        _check_descending_pair(inst, a, b)
    vals = [inst.value(i) for i in I]
    if any(v is STAR for v in vals):
        return HColor.from_base(BaseColor.STAR)
    # one incremental pass: vals holds the stage-j extraction along I
    k = h + 1
    for j in range(h - 1):
        width = h - j - 1
        v = tuple(_c1(inst, vals[t], vals[t + 1], vals[t + 2]) for t in range(width))
        w = tuple(_c1(inst, vals[t + 1], vals[t + 2], vals[t + 3]) for t in range(width))
        good = all(c is BaseColor.GOOD for c in v) and all(c is BaseColor.GOOD for c in w)
        if not good:
            return HColor.at_level(j, v, w)
        cutoff = k - j
        vals = [
            _step(inst, vals[t], vals[t + 1]) if t < cutoff else STAR
            for t in range(len(vals))
        ]
    return HColor.from_base(_c1(inst, vals[0], vals[1], vals[2]))


def is_exactly_large(S) -> bool:
    s = sorted(set(S))
    if not s:
        return False
    return len(s) == s[0] + 3


def color_large(inst: ColoringInstance, S) -> int:
    """Two-coloring of an exactly large index set: 0 when the iterated
    coloring keyed by min(S) is uniformly good on the rest, 1 otherwise.
    A set with min 0 leaves only a pair and gets 1 by convention."""
    s = tuple(sorted(set(S)))
    if not is_exactly_large(s):
        raise NotExactlyLargeError(f"{sorted(S)!r} is not exactly large")
    m = s[0]
    rest = s[1:]
    if m == 0:
        return 1
    if m == 1:
        return 0 if color_triple(inst, *rest) is BaseColor.GOOD else 1
    return 0 if color_tuple(inst, m, rest) == HColor.from_base(BaseColor.GOOD) else 1


def num_colors(h: int, variant: str) -> int:
    """Size of the colour space of the arity-(h+2) coloring."""
    tags = variant_tags(variant)
    base = len(tags)
    total = base
    for j in range(h - 1):
        width = h - j - 1
        total += base ** (2 * width) - 1
    return total


def encode_color(c: HColor, h: int, variant: str) -> int:
    """Rank of a colour in the canonical enumeration: base colours first in
    tag order, then level pairs ordered by (level, v, w) lexicographically."""
    tags = variant_tags(variant)
    base = len(tags)
    if c.is_base:
        if c.base not in tags:
            raise InvalidColorError(f"{c!r} is not a {variant} colour")
        return tags.index(c.base)
    if not 0 <= c.level <= h - 2:
        raise InvalidColorError(f"level {c.level} out of range for h={h}")
    width = h - c.level - 1
    if len(c.v) != width or len(c.w) != width:
        raise InvalidColorError(f"{c!r} has wrong vector width for h={h}")
    digits = []
    for entry in (*c.v, *c.w):
        if entry not in tags:
            raise InvalidColorError(f"{entry!r} is not a {variant} colour")
        digits.append(tags.index(entry))
    if all(d == base - 1 for d in digits):
        raise InvalidColorError("the uniformly good pair is not a level colour")
    offset = base
    for j in range(c.level):
        offset += base ** (2 * (h - j - 1)) - 1
    rank = 0
    for d in digits:
        rank = rank * base + d
    return offset + rank


def decode_color(code: int, h: int, variant: str) -> HColor:
    tags = variant_tags(variant)
    base = len(tags)
    if code < 0:
        raise InvalidColorError(f"negative colour code {code}")
    if code < base:
        return HColor.from_base(tags[code])
    rest = code - base
    for j in range(h - 1):
        width = h - j - 1
        block = base ** (2 * width) - 1
        if rest < block:
            digits = []
            r = rest
            for _ in range(2 * width):
                digits.append(r % base)
                r //= base
            digits.reverse()
            cols = tuple(tags[d] for d in digits)
            return HColor.at_level(j, cols[:width], cols[width:])
        rest -= block
    raise InvalidColorError(f"colour code {code} out of range for h={h}, {variant}")


def base_color_to_json(c: BaseColor) -> dict:
    return {"base": c.value}


def color_to_json(c) -> dict:
    if isinstance(c, BaseColor):
        return base_color_to_json(c)
    if isinstance(c, HColor):
        if c.is_base:
            return base_color_to_json(c.base)
        return {"level": c.level, "v": [x.value for x in c.v], "w": [x.value for x in c.w]}
    if isinstance(c, int):
        return {"large": c}
    raise InvalidColorError(f"cannot render colour {c!r}")
