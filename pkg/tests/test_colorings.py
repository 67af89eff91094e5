from itertools import combinations

import pytest

from ramwop.colorings import (
    EPSILON_TAGS,
    OMEGA_TAGS,
    STAR,
    BaseColor,
    ColoringInstance,
    HColor,
    color_large,
    color_to_json,
    color_triple,
    color_tuple,
    comparing_exponent_sequence,
    decode_color,
    encode_color,
    is_exactly_large,
    num_colors,
    vw_vectors,
)
from ramwop.epsilon_terms import EpsilonSpace, eps
from ramwop.errors import (
    ArityError,
    InvalidColorError,
    NotDescendingError,
    NotExactlyLargeError,
)
from ramwop.harness import gen_instance
from ramwop.omega_terms import nest, term
from ramwop.orders import DescendingSequence, builtin_order
from ramwop.omega_terms import OmegaSpace

OMEGA = builtin_order("omega")
OMEGA_STAR = builtin_order("omega-star")


def omega_instance(terms, level=1):
    seq = DescendingSequence(OmegaSpace(OMEGA, level), lambda i: terms[i])
    return ColoringInstance.from_sequence(seq)


def star_instance(values, level=1):
    seq = DescendingSequence(OmegaSpace(OMEGA, level), lambda i: values[i])
    return ColoringInstance.from_sequence(seq)


def epsilon_instance(terms, order=OMEGA_STAR):
    seq = DescendingSequence(EpsilonSpace(order), lambda i: terms[i])
    return ColoringInstance.from_sequence(seq)


def test_color_triple_omega_examples():
    inst = omega_instance([term(OMEGA, (2, 1)), term(OMEGA, (2, 0)), term(OMEGA, (1,))])
    assert color_triple(inst, 0, 1, 2) is BaseColor.DELTA_DROP
    inst2 = omega_instance([term(OMEGA, (2, 1)), term(OMEGA, (1, 1)), term(OMEGA, (1, 0))])
    assert color_triple(inst2, 0, 1, 2) is BaseColor.GOOD


def test_color_triple_epsilon_example():
    inst = epsilon_instance([eps(OMEGA_STAR, 0), eps(OMEGA_STAR, 1), eps(OMEGA_STAR, 2)])
    assert color_triple(inst, 0, 1, 2) is BaseColor.B_DROP


def test_color_triple_not_descending():
    inst = omega_instance([term(OMEGA, (1,)), term(OMEGA, (1,)), term(OMEGA, (0,))])
    with pytest.raises(NotDescendingError):
        color_triple(inst, 0, 1, 2)


def test_color_triple_star_propagation():
    inst = star_instance([term(OMEGA, (2,)), STAR, term(OMEGA, (1,))])
    assert color_triple(inst, 0, 1, 2) is BaseColor.STAR


def test_color_tuple_star_propagation():
    values = [nest(term(OMEGA, (3,))), STAR, nest(term(OMEGA, (1,))), nest(term(OMEGA, (0,)))]
    inst = star_instance(values, level=2)
    assert color_tuple(inst, 2, (0, 1, 2, 3)) == HColor.from_base(BaseColor.STAR)


def test_comparing_exponents_stage_zero_is_identity():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    inst = ColoringInstance.from_sequence(alpha)
    vals = comparing_exponent_sequence(inst, 0, (0, 2, 5))
    assert vals == {0: alpha.term(0), 2: alpha.term(2), 5: alpha.term(5)}


def test_comparing_exponents_level2_example():
    s0 = term(OMEGA, (term(OMEGA, (1,)), term(OMEGA, (0,))), level=2)
    s1 = term(OMEGA, (term(OMEGA, (0,)),), level=2)
    inst = omega_instance([s0, s1], level=2)
    vals = comparing_exponent_sequence(inst, 1, (0, 1))
    assert vals[0] == term(OMEGA, (1,))
    assert vals[1] is STAR
    # positions outside the index set are star by definition at stage >= 1
    assert vals.get(7, STAR) is STAR


def test_comparing_exponents_arity_errors():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    inst = ColoringInstance.from_sequence(alpha)
    with pytest.raises(ArityError):
        comparing_exponent_sequence(inst, 1, (3,))
    with pytest.raises(ArityError):
        comparing_exponent_sequence(inst, 3, (0, 1, 2))


def constant_delta_level2():
    return gen_instance("rtn", "omega-star", "constant-delta", 2)


def test_vw_vectors_examples():
    inst = ColoringInstance.from_sequence(constant_delta_level2())
    v, w = vw_vectors(inst, 0, (0, 1, 2, 3))
    assert len(v) == len(w) == 1
    assert v == w == (BaseColor.GOOD,)

    # a depth-0 delta drop shows up in the v vector
    drop = [
        term(OMEGA, (term(OMEGA, (2, 2)), term(OMEGA, (2, 1))), level=2),
        term(OMEGA, (term(OMEGA, (2, 2)), term(OMEGA, (2, 0))), level=2),
        nest(term(OMEGA, (1, 1))),
        nest(term(OMEGA, (1, 0))),
    ]
    inst2 = omega_instance(drop, level=2)
    v2, w2 = vw_vectors(inst2, 0, (0, 1, 2, 3))
    assert BaseColor.DELTA_DROP in v2
    with pytest.raises(ArityError):
        vw_vectors(inst2, 1, (0, 1, 2, 3))


def test_color_tuple_examples():
    inst = ColoringInstance.from_sequence(constant_delta_level2())
    assert color_tuple(inst, 2, (0, 1, 2, 3)) == HColor.from_base(BaseColor.GOOD)

    drop = [
        term(OMEGA, (term(OMEGA, (2, 2)), term(OMEGA, (2, 1))), level=2),
        term(OMEGA, (term(OMEGA, (2, 2)), term(OMEGA, (2, 0))), level=2),
        nest(term(OMEGA, (1, 1))),
        nest(term(OMEGA, (1, 0))),
    ]
    inst2 = omega_instance(drop, level=2)
    colour = color_tuple(inst2, 2, (0, 1, 2, 3))
    assert not colour.is_base
    assert colour.level == 0
    assert any(c is not BaseColor.GOOD for c in colour.v)
    with pytest.raises(ArityError):
        color_tuple(inst2, 2, (0, 1, 2))


def test_is_exactly_large():
    assert is_exactly_large({1, 5, 7, 9})
    assert is_exactly_large({0, 2, 4})
    assert not is_exactly_large({2, 3, 4, 5})
    assert not is_exactly_large(set())


def test_color_large_examples():
    alpha = gen_instance("large", "omega-star", "omega-power")
    inst = ColoringInstance.from_sequence(alpha)
    # min-1 sets reduce to the triple coloring
    assert color_large(inst, (1, 2, 3, 4)) == 0
    pure = gen_instance("large", "omega-star", "pure-epsilon")
    inst_pure = ColoringInstance.from_sequence(pure)
    # pure-epsilon triples are b-drops, not good
    assert color_large(inst_pure, (1, 2, 3, 4)) == 1
    # min-0 sets leave a pair and get 1 by convention
    assert color_large(inst_pure, (0, 3, 5)) == 1
    with pytest.raises(NotExactlyLargeError):
        color_large(inst_pure, (2, 3, 4, 5))


def test_shift_law_at_depth_zero():
    inst = ColoringInstance.from_sequence(constant_delta_level2())
    I = (0, 1, 2, 3)
    J = (1, 2, 3, 4)
    _, wI = vw_vectors(inst, 0, I)
    vJ, _ = vw_vectors(inst, 0, J)
    assert wI == vJ


def test_encode_decode_round_trip():
    assert encode_color(HColor.from_base(BaseColor.STAR), 2, "omega") == 0
    assert num_colors(2, "omega") == 11
    for variant, tags in (("omega", OMEGA_TAGS), ("epsilon", EPSILON_TAGS)):
        for h in (2, 3):
            total = num_colors(h, variant)
            seen = set()
            for code in range(total):
                colour = decode_color(code, h, variant)
                assert encode_color(colour, h, variant) == code
                seen.add(colour)
            assert len(seen) == total
    with pytest.raises(InvalidColorError):
        decode_color(num_colors(2, "omega"), 2, "omega")
    with pytest.raises(InvalidColorError):
        encode_color(HColor.from_base(BaseColor.B_DROP), 2, "omega")
    with pytest.raises(InvalidColorError):
        encode_color(
            HColor.at_level(0, (BaseColor.GOOD,), (BaseColor.GOOD,)), 2, "omega"
        )


def test_colour_depends_only_on_touched_indices():
    base = constant_delta_level2()
    other = gen_instance("rtn", "omega-star", "staircase", 2)
    tup = (1, 3, 4, 6)
    hybrid = DescendingSequence(
        OmegaSpace(OMEGA_STAR, 2),
        lambda i: base.term(i) if i in tup else other.term(i + 40),
    )
    inst_a = ColoringInstance.from_sequence(base)
    inst_b = ColoringInstance.from_sequence(hybrid)
    assert color_tuple(inst_a, 2, tup) == color_tuple(inst_b, 2, tup)


def test_colour_evaluation_deterministic():
    alpha = gen_instance("rtn", "omega-star", "staircase", 2)
    inst1 = ColoringInstance.from_sequence(alpha)
    first = [color_tuple(inst1, 2, tup) for tup in combinations(range(9), 4)]
    alpha2 = gen_instance("rtn", "omega-star", "staircase", 2)
    inst2 = ColoringInstance.from_sequence(alpha2)
    second = [color_tuple(inst2, 2, tup) for tup in combinations(range(9), 4)]
    assert first == second


def test_color_json_rendering():
    assert color_to_json(BaseColor.GOOD) == {"base": "good"}
    assert color_to_json(HColor.from_base(BaseColor.STAR)) == {"base": "star"}
    level = HColor.at_level(1, (BaseColor.DELTA_DROP,), (BaseColor.GOOD,))
    assert color_to_json(level) == {"level": 1, "v": ["delta-drop"], "w": ["good"]}
    assert color_to_json(0) == {"large": 0}
