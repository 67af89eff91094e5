from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations_with_replacement

import pytest

from ramwop.errors import (
    IndexOutOfRangeError,
    LevelMismatchError,
    NotNormalFormError,
    UnsupportedBaseError,
)
from ramwop.omega_terms import (
    CnfOrdinal,
    DeltaResult,
    OmegaTerm,
    cnf_ordinal_oracle,
    compare_lex,
    delta,
    exponent,
    lh,
    nest,
    term,
    term_from_json,
    term_to_json,
)
from ramwop.orders import Ordering, builtin_order

OMEGA = builtin_order("omega")
OMEGA_STAR = builtin_order("omega-star")
ETA = builtin_order("eta")


def omega_terms_below(max_entry, max_len):
    """All weakly decreasing level-1 terms over omega with the given bounds."""
    out = []
    for length in range(max_len + 1):
        for combo in combinations_with_replacement(range(max_entry), length):
            out.append(term(OMEGA, tuple(sorted(combo, reverse=True))))
    return out


def test_lh_examples():
    assert lh(term(OMEGA, ())) == 0
    assert lh(term(OMEGA, (2, 1))) == 2
    level2 = term(OMEGA, (term(OMEGA, (1,)), term(OMEGA, (0,))), level=2)
    assert lh(level2) == 2


def test_exponent_examples():
    t = term(OMEGA, (2, 1))
    assert exponent(t, 1) == 1
    assert exponent(t, 0) == 2
    with pytest.raises(IndexOutOfRangeError):
        exponent(term(OMEGA, ()), 0)


def test_compare_lex_examples():
    assert compare_lex(OMEGA, term(OMEGA, ()), term(OMEGA, (0,))) is Ordering.LESS
    # oracle first: the independent CNF evaluation decides the expected side
    s, t = term(OMEGA, (2, 1)), term(OMEGA, (2, 0, 0))
    assert cnf_ordinal_oracle(s) > cnf_ordinal_oracle(t)
    assert compare_lex(OMEGA, s, t) is Ordering.GREATER
    assert compare_lex(OMEGA, term(OMEGA, (1,)), term(OMEGA, (1,))) is Ordering.EQUAL


def test_compare_lex_errors():
    with pytest.raises(LevelMismatchError):
        compare_lex(OMEGA, term(OMEGA, (1,)), nest(term(OMEGA, (1,))))


def test_delta_examples():
    t21 = term(OMEGA, (2, 1))
    assert delta(t21, t21) == DeltaResult(None)
    assert delta(t21, t21).numeric == 0
    assert delta(t21, term(OMEGA, (2, 0))) == DeltaResult(1)
    assert delta(t21, term(OMEGA, (2, 1, 0))) == DeltaResult(2)


def test_cnf_oracle_examples():
    assert cnf_ordinal_oracle(term(OMEGA, ())) == CnfOrdinal(())
    assert cnf_ordinal_oracle(term(OMEGA, (0, 0))) == CnfOrdinal(((0, 2),))
    assert cnf_ordinal_oracle(term(OMEGA, (2, 1))) == CnfOrdinal(((2, 1), (1, 1)))
    assert str(cnf_ordinal_oracle(term(OMEGA, (2, 1)))) == "w^2+w"


def test_cnf_oracle_requires_omega_level1():
    with pytest.raises(UnsupportedBaseError):
        cnf_ordinal_oracle(term(OMEGA_STAR, (1,)))
    with pytest.raises(UnsupportedBaseError):
        cnf_ordinal_oracle(nest(term(OMEGA, (1,))))


def test_compare_agrees_with_oracle_exhaustively():
    terms = omega_terms_below(4, 3)
    codes = [cnf_ordinal_oracle(t) for t in terms]
    for i, s in enumerate(terms):
        for j, t in enumerate(terms):
            got = compare_lex(OMEGA, s, t)
            want = Ordering((codes[i] > codes[j]) - (codes[i] < codes[j]))
            assert got is want, (s, t)


def test_total_order_axioms_on_bounded_set():
    terms = omega_terms_below(4, 3)
    ordered = sorted(terms, key=cmp_to_key(lambda a, b: compare_lex(OMEGA, a, b).value))
    for i, s in enumerate(ordered):
        for j in range(i + 1, len(ordered)):
            assert compare_lex(OMEGA, s, ordered[j]) is Ordering.LESS
            assert compare_lex(OMEGA, ordered[j], s) is Ordering.GREATER


def test_delta_properties_on_bounded_set():
    terms = omega_terms_below(3, 3)
    for s in terms:
        for t in terms:
            d = delta(s, t)
            if not d.differs:
                assert s == t
                continue
            i = d.index
            for before in range(i):
                assert exponent(s, before) == exponent(t, before)
            if compare_lex(OMEGA, s, t) is Ordering.GREATER and i < min(lh(s), lh(t)):
                assert exponent(s, i) > exponent(t, i)


def test_non_decreasing_entries_rejected():
    with pytest.raises(NotNormalFormError):
        term(OMEGA, (1, 2))
    with pytest.raises(NotNormalFormError):
        term(OMEGA_STAR, (5, 3))  # 3 is the omega-star larger element


def test_nested_level_validation():
    inner = term(OMEGA, (1,))
    with pytest.raises(LevelMismatchError):
        OmegaTerm(OMEGA, 3, (inner,))
    with pytest.raises(LevelMismatchError):
        OmegaTerm(OMEGA, 0, ())


def test_json_round_trip():
    t = term(OMEGA, (2, 1, 0))
    assert term_to_json(t) == [2, 1, 0]
    assert term_from_json(OMEGA, 1, [2, 1, 0]) == t
    nested = nest(t, 2)
    assert term_from_json(OMEGA, 3, term_to_json(nested)) == nested
    frac = term(ETA, (Fraction(1, 2), Fraction(1, 3)))
    assert term_to_json(frac) == ["1/2", "1/3"]
    assert term_from_json(ETA, 1, ["1/2", "1/3"]) == frac
