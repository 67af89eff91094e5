"""Terms of the base-omega exponentiation order and its iterates.

A level-1 term is a weakly decreasing tuple of base elements, read as the
ordinal sum of omega-powers of its entries; a level-h term (h >= 2) is a
weakly decreasing tuple of level-(h-1) terms.  Comparison is lexicographic
with a proper prefix ranked below its extensions, matching the ordinal-sum
reading.  Non-decreasing input is rejected, not repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    DomainError,
    IndexOutOfRangeError,
    LevelMismatchError,
    NotNormalFormError,
    UnsupportedBaseError,
)
from .orders import LinearOrder, Ordering, element_from_json, element_to_json, ordering_of


@dataclass(frozen=True)
class OmegaTerm:
    base: LinearOrder
    level: int
    entries: tuple

    def __post_init__(self):
        if self.level < 1:
            raise LevelMismatchError(f"term level must be >= 1, got {self.level}")
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if self.level == 1:
            for x in self.entries:
                self.base.check_element(x)
        else:
            for sub in self.entries:
                if not isinstance(sub, OmegaTerm):
                    raise LevelMismatchError(f"entry {sub!r} of a level-{self.level} term is not a term")
                if sub.level != self.level - 1:
                    raise LevelMismatchError(
                        f"entry of level {sub.level} inside a level-{self.level} term"
                    )
                if sub.base.name != self.base.name:
                    raise DomainError(
                        f"entry over {sub.base.name} inside a term over {self.base.name}"
                    )
        for a, b in zip(self.entries, self.entries[1:]):
            if _cmp_entry(self.base, self.level - 1, a, b) == Ordering.LESS:
                raise NotNormalFormError(f"entries not weakly decreasing: {a!r} < {b!r}")

    def __repr__(self):
        inner = ",".join(repr(e) for e in self.entries)
        return f"<{inner}>"


def term(base: LinearOrder, entries, level: int = 1) -> OmegaTerm:
    """Build a level-1 term from element codes, or a higher-level term from terms."""
    return OmegaTerm(base, level, tuple(entries))


def nest(t: OmegaTerm, levels: int = 1) -> OmegaTerm:
    """Wrap a term in `levels` singleton layers, raising its level."""
    for _ in range(levels):
        t = OmegaTerm(t.base, t.level + 1, (t,))
    return t


def lh(t: OmegaTerm) -> int:
    return len(t.entries)


def exponent(t: OmegaTerm, i: int):
    if not 0 <= i < len(t.entries):
        raise IndexOutOfRangeError(f"index {i} out of range for a term of length {len(t.entries)}")
    return t.entries[i]


def _cmp_entry(base: LinearOrder, entry_level: int, a, b) -> Ordering:
    if entry_level == 0:
        return ordering_of(base.sort_key(a), base.sort_key(b))
    return _cmp_term(a, b)


def _cmp_term(s: OmegaTerm, t: OmegaTerm) -> Ordering:
    for a, b in zip(s.entries, t.entries):
        c = _cmp_entry(s.base, s.level - 1, a, b)
        if c != Ordering.EQUAL:
            return c
    return ordering_of(len(s.entries), len(t.entries))


def compare_lex(X: LinearOrder, s: OmegaTerm, t: OmegaTerm) -> Ordering:
    """Lexicographic comparison of same-level terms over X; a proper initial
    segment is Less."""
    if s.base.name != X.name or t.base.name != X.name:
        raise DomainError(f"terms over {s.base.name}/{t.base.name} compared under {X.name}")
    if s.level != t.level:
        raise LevelMismatchError(f"cannot compare level {s.level} with level {t.level}")
    return _cmp_term(s, t)


@dataclass(frozen=True)
class DeltaResult:
    """First index at which two terms differ; index None means they are equal.

    The numeric rendering maps the equal case to 0, the convention the
    coloring formulas use.  Colorings only ever apply it to distinct terms,
    so the collision between "equal" and "differ at 0" never reaches them.
    """

    index: Optional[int]

    @property
    def differs(self) -> bool:
        return self.index is not None

    @property
    def numeric(self) -> int:
        return 0 if self.index is None else self.index


def _entries_equal(base: LinearOrder, entry_level: int, a, b) -> bool:
    if entry_level == 0:
        return base.sort_key(a) == base.sort_key(b)
    return _cmp_term(a, b) == Ordering.EQUAL


def delta(s: OmegaTerm, t: OmegaTerm) -> DeltaResult:
    """Least index where s and t differ; for a proper prefix that is min(lh)."""
    if s.level != t.level:
        raise LevelMismatchError(f"cannot take delta of levels {s.level} and {t.level}")
    for i, (a, b) in enumerate(zip(s.entries, t.entries)):
        if not _entries_equal(s.base, s.level - 1, a, b):
            return DeltaResult(i)
    if len(s.entries) != len(t.entries):
        return DeltaResult(min(len(s.entries), len(t.entries)))
    return DeltaResult(None)


@dataclass(frozen=True)
class OmegaSpace:
    """The term space at a fixed level over a base order, usable wherever a
    comparable space is expected."""

    base: LinearOrder
    level: int = 1

    @property
    def name(self) -> str:
        return f"omega^<{self.level},{self.base.name}>"

    def compare(self, s: OmegaTerm, t: OmegaTerm) -> Ordering:
        return compare_lex(self.base, s, t)


@dataclass(frozen=True, order=True)
class CnfOrdinal:
    """An ordinal below omega^omega in Cantor normal form: (exponent,
    coefficient) pairs with strictly decreasing exponents.  Plain tuple
    comparison of that representation realizes the ordinal order."""

    monomials: tuple

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for e, c in self.monomials:
            if e == 0:
                parts.append(str(c))
            else:
                head = "w" if e == 1 else f"w^{e}"
                parts.append(head if c == 1 else f"{head}*{c}")
        return "+".join(parts)


def cnf_ordinal_oracle(t: OmegaTerm) -> CnfOrdinal:
    """Evaluate a level-1 term over omega as an ordinal sum of omega-powers,
    using left-absorbing ordinal addition on a CNF representation.

    Independent of compare_lex; used as the correctness oracle in tests.
    """
    if t.base.name != "omega":
        raise UnsupportedBaseError(f"ordinal oracle needs base omega, got {t.base.name}")
    if t.level != 1:
        raise UnsupportedBaseError(f"ordinal oracle needs a level-1 term, got level {t.level}")
    acc: list[list[int]] = []
    for x in t.entries:
        while acc and acc[-1][0] < x:
            acc.pop()
        if acc and acc[-1][0] == x:
            acc[-1][1] += 1
        else:
            acc.append([x, 1])
    return CnfOrdinal(tuple((e, c) for e, c in acc))


def term_to_json(t: OmegaTerm):
    if t.level == 1:
        return [element_to_json(x) for x in t.entries]
    return [term_to_json(sub) for sub in t.entries]


def term_from_json(X: LinearOrder, level: int, data) -> OmegaTerm:
    if not isinstance(data, list):
        raise DomainError(f"term literal must be an array, got {data!r}")
    if level == 1:
        return OmegaTerm(X, 1, tuple(element_from_json(X, v) for v in data))
    return OmegaTerm(X, level, tuple(term_from_json(X, level - 1, sub) for sub in data))
