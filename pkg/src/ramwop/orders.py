"""Base linear orders, descending sequences, and descent verification.

An order's elements are plain codes: non-negative ints for omega and
omega-star, signed ints for zeta, fractions for eta.  Comparison goes
through a key function mapping codes into Python comparables, which keeps
every built-in order total by construction; the test suite still checks
the axioms exhaustively on bounded code ranges.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError, UnknownOrderError


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def flipped(self) -> "Ordering":
        return Ordering(-self.value)


def ordering_of(a, b) -> Ordering:
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: ok, fail (at an index), or inconclusive."""

    status: str
    index: Optional[int] = None

    @classmethod
    def ok(cls) -> "Verdict":
        return cls("ok")

    @classmethod
    def fail_at(cls, index: Optional[int]) -> "Verdict":
        return cls("fail", index)

    @classmethod
    def inconclusive(cls) -> "Verdict":
        return cls("inconclusive")

    def __bool__(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class LinearOrder:
    """A named countable total order over element codes.

    `contains` decides domain membership, `sort_key` embeds the domain into
    Python comparables, `witness` (if present) enumerates a canonical
    strictly descending sequence.
    """

    name: str
    contains: Callable[[object], bool] = field(compare=False)
    sort_key: Callable[[object], object] = field(compare=False)
    witness: Optional[Callable[[int], object]] = field(default=None, compare=False)

    def check_element(self, code) -> None:
        if not self.contains(code):
            raise DomainError(f"{code!r} is not an element of {self.name}")

    def compare(self, a, b) -> Ordering:
        self.check_element(a)
        self.check_element(b)
        return ordering_of(self.sort_key(a), self.sort_key(b))


def compare(order: LinearOrder, a, b) -> Ordering:
    return order.compare(a, b)


def _is_int(code) -> bool:
    return isinstance(code, int) and not isinstance(code, bool)


def _is_rational(code) -> bool:
    return _is_int(code) or isinstance(code, Fraction)


def _finite_order(k: int) -> LinearOrder:
    return LinearOrder(
        name=f"finite:{k}",
        contains=lambda x, k=k: _is_int(x) and 0 <= x < k,
        sort_key=lambda x: x,
    )


_BUILTINS: dict[str, LinearOrder] = {
    "omega": LinearOrder(
        name="omega",
        contains=lambda x: _is_int(x) and x >= 0,
        sort_key=lambda x: x,
    ),
    "omega-star": LinearOrder(
        name="omega-star",
        contains=lambda x: _is_int(x) and x >= 0,
        sort_key=lambda x: -x,
        witness=lambda i: i,
    ),
    "zeta": LinearOrder(
        name="zeta",
        contains=_is_int,
        sort_key=lambda x: x,
        witness=lambda i: -i,
    ),
    "eta": LinearOrder(
        name="eta",
        contains=_is_rational,
        sort_key=lambda x: Fraction(x),
        witness=lambda i: Fraction(1, i + 1),
    ),
}


def builtin_order(name: str) -> LinearOrder:
    """Look up a built-in order by its CLI-facing name.

    Recognized: "omega", "omega-star", "zeta", "eta", "finite:<k>".
    """
    if name in _BUILTINS:
        return _BUILTINS[name]
    if name.startswith("finite:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise UnknownOrderError(f"bad finite order name {name!r}") from None
        if k < 1:
            raise UnknownOrderError(f"finite order needs k >= 1, got {k}")
        return _finite_order(k)
    raise UnknownOrderError(f"unknown order {name!r}")


def order_names() -> list[str]:
    return [*_BUILTINS.keys(), "finite:<k>"]


@dataclass
class DescendingSequence:
    """A lazily evaluated infinite sequence in some space.

    `space` is anything with a `compare(a, b) -> Ordering` method (a
    LinearOrder or a term space).  Terms are cached so repeated access at
    one index returns the identical object; the memoization in the
    coloring layer relies on that.
    """

    space: object
    term_at: Callable[[int], object]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def term(self, i: int):
        if i not in self._cache:
            self._cache[i] = self.term_at(i)
        return self._cache[i]

    def prefix(self, k: int) -> list:
        return [self.term(i) for i in range(k)]


def verify_descending(space, seq, k: int) -> Verdict:
    """Check strict descent of the first k terms; FailAt the first violation.

    `seq` may be a DescendingSequence, a callable index -> term, or a list.
    """
    term = _term_accessor(seq)
    prev = term(0)
    for i in range(k - 1):
        cur = term(i + 1)
        if space.compare(prev, cur) != Ordering.GREATER:
            return Verdict.fail_at(i)
        prev = cur
    return Verdict.ok()


def _term_accessor(seq) -> Callable[[int], object]:
    if isinstance(seq, DescendingSequence):
        return seq.term
    if callable(seq):
        return seq
    return seq.__getitem__


def element_to_json(code):
    if isinstance(code, Fraction):
        return f"{code.numerator}/{code.denominator}"
    return code


def element_from_json(order: LinearOrder, value):
    if isinstance(value, str):
        num, _, den = value.partition("/")
        try:
            code = Fraction(int(num), int(den)) if den else Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"bad element literal {value!r}") from None
    else:
        code = value
    order.check_element(code)
    return code
