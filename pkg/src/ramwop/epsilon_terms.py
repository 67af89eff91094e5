"""Normal-form terms of the epsilon order over a base linear order.

A term is a weakly decreasing sum of monomials; a monomial is either a
fixed point eps_x (x a base element) or an omega-power of another term.
Normal form forbids an omega-power whose exponent is a single eps
monomial, since that power collapses to the fixed point itself.  The
comparison realizes the fixed-point law at the order level: an
omega-power sits against eps_x exactly as its exponent does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    DomainError,
    IndexOutOfRangeError,
    NotNormalFormError,
)
from .omega_terms import DeltaResult
from .orders import LinearOrder, Ordering, element_from_json, element_to_json, ordering_of


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self):
        return self._name


#: Placeholder for the n-th monomial of a term shorter than n.
ZERO_MONOMIAL = _Sentinel("ZeroMonomial")

#: Returned when a fixed-point monomial is asked for its written exponent.
#: Consuming it in an extraction is an error, never a silent zero.
NO_EXPONENT = _Sentinel("NoExponent")

#: The b-value of a monomial containing no eps subterm at all.
BELOW_EPSILON_ZERO = _Sentinel("BelowEpsilonZero")


@dataclass(frozen=True)
class EpsilonOf:
    index: object

    def __repr__(self):
        return f"eps({self.index})"


@dataclass(frozen=True)
class OmegaPow:
    exponent: "EpsilonTerm"

    def __repr__(self):
        inner = repr(self.exponent)
        if len(self.exponent.monomials) > 1:
            inner = f"({inner})"
        return f"w^{inner}"


Monomial = Union[EpsilonOf, OmegaPow]


@dataclass(frozen=True)
class EpsilonTerm:
    base: LinearOrder
    monomials: tuple

    def __post_init__(self):
        if not isinstance(self.monomials, tuple):
            object.__setattr__(self, "monomials", tuple(self.monomials))
        for m in self.monomials:
            if isinstance(m, EpsilonOf):
                self.base.check_element(m.index)
            elif isinstance(m, OmegaPow):
                exp = m.exponent
                if not isinstance(exp, EpsilonTerm):
                    raise NotNormalFormError(f"omega-power exponent {exp!r} is not a term")
                if exp.base.name != self.base.name:
                    raise DomainError(
                        f"exponent over {exp.base.name} inside a term over {self.base.name}"
                    )
                if len(exp.monomials) == 1 and isinstance(exp.monomials[0], EpsilonOf):
                    raise NotNormalFormError(
                        f"w^{exp!r} must be written as the fixed point itself"
                    )
            else:
                raise NotNormalFormError(f"{m!r} is not a monomial")
        for a, b in zip(self.monomials, self.monomials[1:]):
            if _cmp_monomial(self.base, a, b) == Ordering.LESS:
                raise NotNormalFormError(f"monomials not weakly decreasing: {a!r} < {b!r}")

    def __repr__(self):
        if not self.monomials:
            return "0"
        return "+".join(repr(m) for m in self.monomials)


def eterm(base: LinearOrder, *monomials) -> EpsilonTerm:
    return EpsilonTerm(base, tuple(monomials))


def eps(base: LinearOrder, x) -> EpsilonTerm:
    """The term consisting of the single fixed-point monomial eps_x."""
    return EpsilonTerm(base, (EpsilonOf(x),))


def _cmp_term(g: EpsilonTerm, d: EpsilonTerm) -> Ordering:
    for a, b in zip(g.monomials, d.monomials):
        c = _cmp_monomial(g.base, a, b)
        if c != Ordering.EQUAL:
            return c
    return ordering_of(len(g.monomials), len(d.monomials))


def _cmp_monomial(base: LinearOrder, m, n) -> Ordering:
    if isinstance(m, EpsilonOf):
        if isinstance(n, EpsilonOf):
            return ordering_of(base.sort_key(m.index), base.sort_key(n.index))
        return _cmp_pow_vs_eps(base, n, m).flipped()
    if isinstance(n, EpsilonOf):
        return _cmp_pow_vs_eps(base, m, n)
    return _cmp_term(m.exponent, n.exponent)


def _cmp_pow_vs_eps(base: LinearOrder, power: OmegaPow, fixed: EpsilonOf) -> Ordering:
    # w^g against eps_x goes as g against eps_x; equality would mean the
    # power was the unwritten fixed point, which normal form excludes.
    c = _cmp_term(power.exponent, EpsilonTerm(base, (fixed,)))
    if c == Ordering.EQUAL:
        raise NotNormalFormError(f"{power!r} collapses to eps({fixed.index})")
    return c


def epsilon_compare(X: LinearOrder, g: EpsilonTerm, d: EpsilonTerm) -> Ordering:
    if g.base.name != X.name or d.base.name != X.name:
        raise DomainError(f"terms over {g.base.name}/{d.base.name} compared under {X.name}")
    return _cmp_term(g, d)


def epsilon_lh(g: EpsilonTerm) -> int:
    return len(g.monomials)


def epsilon_term_at(g: EpsilonTerm, n: int):
    """The n-th monomial, zero-extended: beyond the term's length the zero
    marker is returned."""
    if n < 0:
        raise IndexOutOfRangeError(f"negative monomial index {n}")
    if n >= len(g.monomials):
        return ZERO_MONOMIAL
    return g.monomials[n]


def _monomials_equal(base: LinearOrder, m, n) -> bool:
    if m is ZERO_MONOMIAL or n is ZERO_MONOMIAL:
        return m is n
    return _cmp_monomial(base, m, n) == Ordering.EQUAL


def epsilon_delta(g: EpsilonTerm, d: EpsilonTerm) -> DeltaResult:
    """Index of the first monomial where the zero-extended terms differ."""
    for n in range(max(len(g.monomials), len(d.monomials))):
        if not _monomials_equal(g.base, epsilon_term_at(g, n), epsilon_term_at(d, n)):
            return DeltaResult(n)
    return DeltaResult(None)


def epsilon_exponent(g: EpsilonTerm, n: int):
    """Written exponent of the n-th monomial; the NO_EXPONENT sentinel for a
    fixed-point monomial."""
    if not 0 <= n < len(g.monomials):
        raise IndexOutOfRangeError(f"index {n} out of range for a sum of {len(g.monomials)} monomials")
    m = g.monomials[n]
    if isinstance(m, OmegaPow):
        return m.exponent
    return NO_EXPONENT


def exponent_or_none(g: EpsilonTerm, n: int) -> Optional[EpsilonTerm]:
    """Zero-extended exponent access used by the comparing-exponent recursion:
    None whenever no written exponent exists at position n."""
    if 0 <= n < len(g.monomials):
        m = g.monomials[n]
        if isinstance(m, OmegaPow):
            return m.exponent
    return None


def _eps_indices(m, out: list) -> None:
    if isinstance(m, EpsilonOf):
        out.append(m.index)
    elif isinstance(m, OmegaPow):
        for sub in m.exponent.monomials:
            _eps_indices(sub, out)


def contains_epsilon(g: EpsilonTerm) -> bool:
    found: list = []
    for m in g.monomials:
        _eps_indices(m, found)
        if found:
            return True
    return False


def b_extended(g: EpsilonTerm, n: int, X: LinearOrder):
    """X-maximum index over all eps occurrences inside the n-th monomial,
    zero-extended; the below-epsilon sentinel when none occur."""
    if n < 0:
        raise IndexOutOfRangeError(f"negative monomial index {n}")
    if n >= len(g.monomials):
        return BELOW_EPSILON_ZERO
    found: list = []
    _eps_indices(g.monomials[n], found)
    if not found:
        return BELOW_EPSILON_ZERO
    return max(found, key=X.sort_key)


def b(g: EpsilonTerm, n: int, X: LinearOrder):
    if not 0 <= n < len(g.monomials):
        raise IndexOutOfRangeError(f"index {n} out of range for a sum of {len(g.monomials)} monomials")
    return b_extended(g, n, X)


def compare_b_values(X: LinearOrder, u, v) -> Ordering:
    """Order on b-values with the below-epsilon sentinel under every element."""
    if u is BELOW_EPSILON_ZERO:
        return Ordering.EQUAL if v is BELOW_EPSILON_ZERO else Ordering.LESS
    if v is BELOW_EPSILON_ZERO:
        return Ordering.GREATER
    return X.compare(u, v)


def _occurrence_height(m, target_key, X: LinearOrder) -> Optional[int]:
    # Max nesting depth of eps_{target} inside monomial m; None if absent.
    if isinstance(m, EpsilonOf):
        return 0 if X.sort_key(m.index) == target_key else None
    best: Optional[int] = None
    for sub in m.exponent.monomials:
        h = _occurrence_height(sub, target_key, X)
        if h is not None and (best is None or h > best):
            best = h
    return None if best is None else best + 1


def ht_extended(g: EpsilonTerm, n: int, X: LinearOrder) -> int:
    """Maximum height at which eps of the monomial's b-value occurs in the
    n-th monomial (zero-extended); 0 when the monomial is below every eps."""
    top = b_extended(g, n, X)
    if top is BELOW_EPSILON_ZERO:
        return 0
    h = _occurrence_height(g.monomials[n], X.sort_key(top), X)
    assert h is not None
    return h


def ht(g: EpsilonTerm, n: int, X: LinearOrder) -> int:
    if not 0 <= n < len(g.monomials):
        raise IndexOutOfRangeError(f"index {n} out of range for a sum of {len(g.monomials)} monomials")
    return ht_extended(g, n, X)


@dataclass(frozen=True)
class EpsilonSpace:
    base: LinearOrder

    @property
    def name(self) -> str:
        return f"epsilon_{self.base.name}"

    def compare(self, g: EpsilonTerm, d: EpsilonTerm) -> Ordering:
        return epsilon_compare(self.base, g, d)


def eterm_to_json(g: EpsilonTerm):
    out = []
    for m in g.monomials:
        if isinstance(m, EpsilonOf):
            out.append({"eps": element_to_json(m.index)})
        else:
            out.append({"w": eterm_to_json(m.exponent)})
    return out


def eterm_from_json(X: LinearOrder, data) -> EpsilonTerm:
    if not isinstance(data, list):
        raise DomainError(f"epsilon term literal must be an array, got {data!r}")
    monos: list = []
    for obj in data:
        if not isinstance(obj, dict) or len(obj) != 1:
            raise DomainError(f"bad monomial literal {obj!r}")
        if "eps" in obj:
            monos.append(EpsilonOf(element_from_json(X, obj["eps"])))
        elif "w" in obj:
            monos.append(OmegaPow(eterm_from_json(X, obj["w"])))
        else:
            raise DomainError(f"bad monomial literal {obj!r}")
    return EpsilonTerm(X, tuple(monos))
