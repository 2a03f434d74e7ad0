import json
from fractions import Fraction
from itertools import combinations, product

import pytest
from suite import TOWER_BASES, essential_pool, towers

from lexworld import _poly as P
from lexworld.entropy import entropy_of, kneading_series, renewal_entropy
from lexworld.seq import EPSeq, seq_dist
from lexworld.sft import components_of, ie_verdict, kneading_gap
from lexworld.words import Ratio, substitute
from lexworld.renorm import (
    TAGS,
    AssocPair,
    EndpointOrder,
    Hole,
    InfiniteRenormalisationSuspected,
    RenormBox,
    StrataMismatch,
    box_contains,
    box_diameter,
    box_diameter_sq,
    boxes_disjoint,
    classify,
    classify_pair,
    coords,
    corner_distance_sq,
    derenormalise,
    detect_renorm,
    from_coords,
    hofbauer_check,
    hofbauer_pair,
    hole_to_pair,
    renormalise,
    scaling_gap,
)

S = EPSeq.parse
FULL = (S("(1)"), S("(0)"))
GOLDEN = (S("(110)"), S("(001)"))
ESSENTIAL = (S("(110)"), S("(01)"))
R12, R13 = Ratio(1, 2), Ratio(1, 3)


def fc(x: str, y: str):
    return from_coords(S(x), S(y))


POOL = essential_pool()


def test_assoc_pair_validation():
    assert AssocPair.valid("01", "100")
    assert not AssocPair.valid("0", "1")
    assert not AssocPair.valid("10", "100")
    with pytest.raises(ValueError):
        AssocPair("0", "11")
    assert not AssocPair("01", "100").trivial
    # with both rotation conditions read literally no length-3 pair qualifies
    short = [(w, v) for lw in (1, 2) for w in map("".join, product("01", repeat=lw)) for v in map("".join, product("01", repeat=3 - lw))]
    assert not any(AssocPair.valid(w, v) for w, v in short)


def test_detect_examples():
    d = detect_renorm(*fc("(01100100)", "(10001)"))
    assert (d.pair.omega, d.pair.nu) == ("01", "100")
    assert d.decoded_x == S("(011)") and d.decoded_y == S("(10)")
    assert d.exponents() == {"x": [[], [1, 2]], "y": [[], [1, 1]]}
    assert detect_renorm(*ESSENTIAL) is None
    d = detect_renorm(*fc("01(10)", "10(01)"))
    assert (d.pair.omega, d.pair.nu) == ("01", "10") and not d.pair.trivial


def test_box_contains_examples():
    box = RenormBox(AssocPair("01", "100"))
    assert box_contains(box, *fc("(01100100)", "(10001)"))
    assert not box_contains(box, *FULL)
    assert box_contains(box, *fc("(01)", "(100)"))
    with pytest.raises(ValueError):
        RenormBox(AssocPair("01", "100"), 1)


def test_diameter_examples():
    assert box_diameter_sq(RenormBox(AssocPair("01", "100"))) == Fraction(1, 2**6) + Fraction(1, 2**8)
    assert box_diameter(RenormBox(AssocPair("01", "100"))) == pytest.approx(0.1397542, abs=1e-7)
    assert box_diameter(RenormBox(AssocPair("01", "10"))) == pytest.approx(0.1767767, abs=1e-7)
    level1 = RenormBox(AssocPair("01", "100"), 1, (R12,))
    assert box_diameter_sq(level1) == Fraction(1, 2**10) + Fraction(1, 2**14)


@pytest.mark.parametrize("pair", POOL[:8], ids=str)
def test_diameter_matches_corner_distance(pair):
    for ratios in [(), (R12,), (R13,), (R12, Ratio(2, 3))]:
        box = RenormBox(pair, len(ratios), ratios)
        assert box_diameter_sq(box) == corner_distance_sq(box)


def test_disjoint_examples():
    b = RenormBox(AssocPair("01", "100"))
    assert boxes_disjoint(b, RenormBox(AssocPair("01", "10010")))
    assert not boxes_disjoint(b, b)
    assert boxes_disjoint(RenormBox(b.base, 1, (R12,)), RenormBox(b.base, 1, (R13,)))
    with pytest.raises(StrataMismatch):
        boxes_disjoint(b, RenormBox(b.base, 1, (R12,)))


def test_pool_is_twenty_distinct_pairs():
    assert len(set(POOL)) == 20


def test_pool_boxes_disjoint():
    for p1, p2 in combinations(POOL, 2):
        assert boxes_disjoint(RenormBox(p1), RenormBox(p2)), (p1, p2)
        assert boxes_disjoint(RenormBox(p1, 1, (R12,)), RenormBox(p2, 1, (R12,)))


@pytest.mark.parametrize("pair", POOL, ids=str)
def test_renormalisable_pair_in_exactly_its_box(pair):
    x, y = coords(*GOLDEN)
    s = pair.substitution
    alpha, beta = from_coords(substitute(s, x), substitute(s, y))
    found = detect_renorm(alpha, beta)
    assert found is not None and found.pair == pair
    inside = [p for p in POOL if box_contains(RenormBox(p), alpha, beta)]
    assert inside == [pair]


def test_derenormalise_examples():
    d = derenormalise(*fc("01(10)", "10(01)"))
    assert (d.base_alpha, d.base_beta, d.ratios) == (*FULL, (R12,))
    pair = renormalise(*FULL, [R12, R13])
    d = derenormalise(*pair)
    assert (d.base_alpha, d.base_beta, d.ratios) == (*FULL, (R12, R13))
    assert abs(entropy_of(*pair).h_bits - 1 / 6) < 1e-9
    d = derenormalise(*GOLDEN)
    assert (d.base_alpha, d.base_beta, d.ratios) == (*GOLDEN, ())


def test_infinite_renormalisation_guard():
    pair = renormalise(*FULL, [R12, R12])
    with pytest.raises(InfiniteRenormalisationSuspected):
        # a deliberately inflated entropy makes the tower look too deep
        derenormalise(*pair, h_bits=0.6)


@pytest.mark.parametrize("base", TOWER_BASES, ids=str)
def test_tower_bases_are_level_zero(base):
    assert derenormalise(*base).level == 0


def test_round_trip_towers():
    for base, ratios in towers():
        pair = renormalise(*base, ratios)
        q = 1
        for r in ratios:
            q *= r.q
        d = derenormalise(*pair, h_bits=entropy_of(*base).h_bits / q)
        assert (d.base_alpha, d.base_beta, d.ratios) == (*base, ratios)
        assert renormalise(d.base_alpha, d.base_beta, d.ratios) == pair


@pytest.mark.parametrize("base", [FULL, GOLDEN, ESSENTIAL], ids=str)
@pytest.mark.parametrize("ratios", [(R12,), (R13,), (R12, R13), (Ratio(2, 5),)], ids=str)
def test_scaling_law(base, ratios):
    pair = renormalise(*base, ratios)
    c = classify(pair)
    assert c.level == len(ratios) and c.ratios == ratios
    assert scaling_gap(c) < 1e-9
    if len(ratios) == 1:
        assert kneading_gap(*pair) < 1e-9


@pytest.mark.parametrize("base", [GOLDEN, ESSENTIAL], ids=str)
@pytest.mark.parametrize("r", [R12, R13, Ratio(2, 3)], ids=str)
def test_image_of_essential_has_two_components(base, r):
    comps = components_of(*renormalise(*base, [r]))
    assert len(comps) == 2
    assert comps[1].is_trivial_cycle and comps[1].perron_entropy_bits == 0
    # the zero-entropy piece is the periodic orbit of xi_r^inf, of length q
    assert len(comps[1].states) == r.q


SFT_BOXES = [AssocPair("01", "100"), AssocPair("011", "10"), AssocPair("011", "100")]
SFT_INNER = [GOLDEN, ESSENTIAL, (S("(1110)"), S("(0001)"))]


def renormalisable_sft_pairs():
    out = []
    for pair in SFT_BOXES:
        for inner in SFT_INNER:
            x, y = coords(*inner)
            s = pair.substitution
            out.append((pair, from_coords(substitute(s, x), substitute(s, y))))
    return out


@pytest.mark.parametrize("pair,ab", renormalisable_sft_pairs(), ids=str)
def test_renormalisable_sft_strict_gap(pair, ab):
    assert classify_pair(*ab).tag == "RenormalisableSFT"
    comps = components_of(*ab)
    top, second = comps[0], comps[1]
    # interval bounds on the spectral radii certify the strict gap
    assert top.radius_bounds[0] > second.radius_bounds[1]
    assert second.perron_entropy_bits <= renewal_entropy(len(pair.omega), len(pair.nu)).h_bits + 1e-9
    assert ie_verdict(*ab).kind == "IntrinsicallyErgodic"
    assert len(components_of(*renormalise(*ab, [R12]))) == 3


def test_hofbauer_examples():
    w = hofbauer_check(*fc("01(10010)", "10010(01)"))
    assert (w.k, w.mirrored, w.level) == (1, False, 0)
    w = hofbauer_check(*fc("011(10)", "10(011)"))
    assert (w.k, w.mirrored, w.level) == (0, True, 0)
    assert hofbauer_check(*GOLDEN) is None


@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("mirrored", [False, True])
@pytest.mark.parametrize("ratios", [(), (R12,), (R13,)], ids=str)
def test_hofbauer_family(k, mirrored, ratios):
    pair = renormalise(*hofbauer_pair(k, mirrored), ratios)
    q = ratios[0].q if ratios else 1
    target = renewal_entropy(2, 3 + 2 * k).h_bits / q
    comps = [c for c in components_of(*pair) if not c.is_trivial_cycle]
    assert len(comps) >= 2
    assert abs(comps[0].perron_entropy_bits - comps[1].perron_entropy_bits) < 1e-9
    assert abs(comps[0].perron_entropy_bits - target) < 1e-9
    v = ie_verdict(*pair)
    assert v.kind == "NotIntrinsicallyErgodic"
    assert v.witness["k"] == k and v.witness["mirrored"] == mirrored and v.witness["level"] == len(ratios)


def test_hofbauer_k0_polynomial_identity():
    renewal_poly = (1, 0, -1, -1)
    quotient, rem = P.divmod_poly((1, -1, 0, 0, 0, -1), renewal_poly)
    assert rem == () and quotient == (1, -1, 1)
    num, _ = kneading_series(*hofbauer_pair(0)).reduced()
    # two equal-entropy components show up as a squared factor
    assert num == P.mul(renewal_poly, renewal_poly)
    assert P.divmod_poly(kneading_series(*ESSENTIAL).numerator(), renewal_poly)[1] == ()


def test_hole_kinds_and_pairs():
    h = hole_to_pair(Hole(Fraction(1, 3), Fraction(2, 3)))
    assert (h.alpha, h.beta, h.kind) == (S("(10)"), S("(01)"), "Centred")
    h = hole_to_pair(Hole(Fraction(3, 4), 1))
    assert h.kind == "Right" and h.beta == S("(0)")
    h = hole_to_pair(Hole(Fraction(5, 16), Fraction(1, 2)))
    assert h.kind == "HalfLeft" and h.beta == S("(0)")
    assert Hole(0, Fraction(1, 3)).kind == "Left"
    assert hole_to_pair(Hole(Fraction(1, 8), Fraction(1, 5))) is None
    with pytest.raises(EndpointOrder):
        Hole(Fraction(1, 2), Fraction(1, 3))


def test_hole_classification():
    assert classify(Hole(Fraction(3, 4), 1)).ie == "IntrinsicallyErgodic"
    c = classify(Hole(Fraction(5, 16), Fraction(1, 2)))
    assert c.ie == "IntrinsicallyErgodic" and c.ie_provenance == "theorem-based"
    assert classify(Hole(Fraction(1, 3), Fraction(2, 3))).tag == "ZeroEntropy"
    assert classify(Hole(Fraction(1, 8), Fraction(1, 5))).tag == "Unsupported"


def test_classify_examples():
    c = classify(FULL)
    assert c.tag == "FullShift" and c.entropy.h_bits == 1 and c.ie == "IntrinsicallyErgodic"
    c = classify(GOLDEN)
    assert c.tag == "Essential" and c.ie == "IntrinsicallyErgodic" and c.ie_provenance == "oracle-verified"
    c = classify(fc("01(10010)", "10010(01)"))
    assert c.tag == "HofbauerNonIE" and c.ie == "NotIntrinsicallyErgodic"
    assert abs(c.entropy.h_bits - renewal_entropy(2, 5).h_bits) < 1e-9
    assert classify((S("(10)"), S("(1)"))).tag == "Extremal"


def test_classification_json_schema():
    for pair in [FULL, GOLDEN, ESSENTIAL, fc("01(10010)", "10010(01)"), renormalise(*GOLDEN, [R12])]:
        c = classify(pair)
        d = json.loads(c.to_json())
        assert set(d) == {"tag", "level", "ratios", "base_alpha", "base_beta", "kappa", "h_bits", "dim", "ie", "ie_provenance", "witnesses"}
        assert d["tag"] in TAGS
        assert d["ie_provenance"] in ("oracle-verified", "theorem-based")


def test_distance_sanity():
    assert seq_dist(S("(01)"), S("01(100)")) == Fraction(1, 8)
