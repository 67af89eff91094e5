import pytest

from ramwop.colorings import STAR, BaseColor, ColoringInstance, HColor, color_triple
from ramwop.epsilon_terms import EpsilonSpace
from ramwop.errors import (
    ColourMismatchError,
    StarEncounteredError,
    WitnessTooShallowError,
)
from ramwop.extraction import (
    HomogeneousWitness,
    extract_epsilon_b_path,
    extract_large,
    extract_rt3,
    extract_rtn,
    subterm_check,
    witness_holds,
)
from ramwop.harness import gen_instance
from ramwop.omega_terms import OmegaSpace, term
from ramwop.orders import DescendingSequence, builtin_order, verify_descending

OMEGA = builtin_order("omega")
OMEGA_STAR = builtin_order("omega-star")


def good_witness(indices, arity=3):
    colour = BaseColor.GOOD if arity == 3 else HColor.from_base(BaseColor.GOOD)
    return HomogeneousWitness(tuple(indices), colour, arity)


def test_extract_rt3_example():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    out = extract_rt3(alpha, good_witness(range(4)), 3)
    assert out == [1, 2, 3]
    assert verify_descending(OMEGA_STAR, out, 3).status == "ok"
    assert extract_rt3(alpha, good_witness(range(4)), 0) == []


def test_extract_rt3_colour_mismatch():
    alpha = gen_instance("rt3", "omega-star", "staircase")
    # the first three staircase terms form a delta-drop triple
    with pytest.raises(ColourMismatchError):
        extract_rt3(alpha, good_witness(range(4)), 2)
    claimed_wrong = HomogeneousWitness((0, 3, 6, 9), BaseColor.DELTA_DROP, 3)
    with pytest.raises(ColourMismatchError):
        extract_rt3(alpha, claimed_wrong, 2)


def test_extract_rt3_too_shallow_and_star():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    with pytest.raises(WitnessTooShallowError):
        extract_rt3(alpha, good_witness(range(3)), 3)
    starred = DescendingSequence(
        OmegaSpace(OMEGA_STAR, 1), lambda i: STAR if i == 1 else alpha.term(i)
    )
    with pytest.raises(StarEncounteredError):
        extract_rt3(starred, good_witness(range(4)), 3)


def test_extract_rt3_locality():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    perturbed = DescendingSequence(
        OmegaSpace(OMEGA_STAR, 1),
        lambda i: term(OMEGA_STAR, (0, i + 2)) if i >= 4 else alpha.term(i),
    )
    w = good_witness(range(4))
    assert extract_rt3(alpha, w, 3) == extract_rt3(perturbed, w, 3)


def test_extract_rt3_witness_refinement():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    short = extract_rt3(alpha, good_witness(range(5)), 4)
    longer = extract_rt3(alpha, good_witness(range(9)), 4)
    assert short == longer


def test_extract_rtn_example():
    alpha = gen_instance("rtn", "omega-star", "constant-delta", 2)
    w = good_witness(range(7), arity=4)
    out = extract_rtn(alpha, 2, w, 3)
    assert out == [1, 2, 3]
    assert verify_descending(OMEGA_STAR, out, 3).status == "ok"
    assert extract_rtn(alpha, 2, w, 0) == []


def test_extract_rtn_witness_refinement():
    alpha = gen_instance("rtn", "omega-star", "constant-delta", 2)
    a = extract_rtn(alpha, 2, good_witness(range(6), arity=4), 3)
    b = extract_rtn(alpha, 2, good_witness(range(9), arity=4), 3)
    assert a == b


def test_extract_rtn_level_colour_mismatch():
    alpha = gen_instance("rtn", "omega-star", "constant-delta", 2)
    level = HColor.at_level(0, (BaseColor.DELTA_DROP,), (BaseColor.DELTA_DROP,))
    with pytest.raises(ColourMismatchError):
        extract_rtn(alpha, 2, HomogeneousWitness(tuple(range(7)), level, 4), 3)


def test_extract_large_frozen_hand_run():
    alpha = gen_instance("large", "omega-star", "omega-power")
    w = HomogeneousWitness(tuple(range(1, 26)), 0, 4, "large")
    out = extract_large(alpha, w, 3)
    # stage depths grow 1, 2, 3 and read off the layer fixed points
    assert out == [1, 2, 3]
    assert verify_descending(OMEGA_STAR, out, 3).status == "ok"
    assert subterm_check(alpha, out, 26)
    assert extract_large(alpha, w, 0) == []


def test_extract_large_too_shallow():
    alpha = gen_instance("large", "omega-star", "omega-power")
    with pytest.raises(WitnessTooShallowError):
        extract_large(alpha, HomogeneousWitness((0, 1), 0, 4, "large"), 2)


def test_extract_large_star_on_shallow_instance():
    alpha = gen_instance("large", "omega-star", "shallow-power")
    w = HomogeneousWitness(tuple(range(1, 13)), 0, 4, "large")
    with pytest.raises(StarEncounteredError):
        extract_large(alpha, w, 3)


def test_extract_large_colour_mismatch():
    # nested up to index 5, bare fixed points afterwards: the second stage's
    # touched set crosses the boundary and loses the uniform colour, while
    # the extraction chain itself stays star-free
    layered = gen_instance("large", "omega-star", "omega-power")
    pure = gen_instance("large", "omega-star", "pure-epsilon")
    hybrid = DescendingSequence(
        EpsilonSpace(OMEGA_STAR),
        lambda i: layered.term(i) if i < 6 else pure.term(i),
    )
    assert verify_descending(hybrid.space, hybrid.term, 10).status == "ok"
    w = HomogeneousWitness(tuple(range(1, 13)), 0, 4, "large")
    with pytest.raises(ColourMismatchError):
        extract_large(hybrid, w, 2)


def test_extract_b_path_example():
    alpha = gen_instance("large", "omega-star", "pure-epsilon")
    w = HomogeneousWitness(tuple(range(6)), BaseColor.B_DROP, 3)
    out = extract_epsilon_b_path(alpha, w, 5)
    assert out == [0, 1, 2, 3, 4]
    assert verify_descending(OMEGA_STAR, out, 5).status == "ok"
    assert extract_epsilon_b_path(alpha, w, 1) == [0]


def test_extract_b_path_colour_mismatch():
    alpha = gen_instance("large", "omega-star", "omega-power")
    w = HomogeneousWitness(tuple(range(1, 7)), BaseColor.B_DROP, 3)
    with pytest.raises(ColourMismatchError):
        extract_epsilon_b_path(alpha, w, 3)


def test_witness_holds_recheck():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    inst = ColoringInstance.from_sequence(alpha)
    fn = lambda i, j, k: color_triple(inst, i, j, k)
    assert witness_holds(fn, good_witness(range(5)))
    assert not witness_holds(fn, HomogeneousWitness((0, 1, 2), BaseColor.DELTA_DROP, 3))


def test_subterm_check_cases():
    alpha = gen_instance("rt3", "omega-star", "constant-delta")
    out = extract_rt3(alpha, good_witness(range(4)), 3)
    assert subterm_check(alpha, out, 4)
    assert subterm_check(alpha, [], 1)
    assert not subterm_check(alpha, [99], 4)
    eps_alpha = gen_instance("large", "omega-star", "pure-epsilon")
    assert subterm_check(eps_alpha, [0, 1, 2], 3)
    assert not subterm_check(eps_alpha, [7], 3)
