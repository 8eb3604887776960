import random

from e510 import sl5
from oracles import hook_content_dimension, partition_of_weight


def test_dominance_simple_root():
    assert sl5.dominance_compare((0, 0, 0, 0), (2, -1, 0, 0)) == "less-or-equal"


def test_dominance_two_roots():
    # (1,1,0,0) - (0,0,1,0) = alpha_12 + alpha_23 = (1,1,-1,0)
    assert sl5.dominance_compare((0, 0, 1, 0), (1, 1, 0, 0)) == "less-or-equal"
    assert sl5.dominance_compare((1, 1, 0, 0), (0, 0, 1, 0)) == "greater-or-equal"


def test_dominance_incomparable_fundamental():
    # root coordinates of the first fundamental weight are (4/5,3/5,2/5,1/5)
    assert sl5.dominance_compare((0, 0, 0, 0), (1, 0, 0, 0)) == "incomparable"


def test_dominance_equal():
    assert sl5.dominance_compare((1, 2, 0, 1), (1, 2, 0, 1)) == "equal"


def test_dominance_partial_order_random():
    rng = random.Random(17)
    weights = [tuple(rng.randint(-2, 2) for _ in range(4)) for _ in range(40)]

    def le(a, b):
        return sl5.dominance_compare(a, b) in ("less-or-equal", "equal")

    for a in weights:
        assert le(a, a)
    for _ in range(300):
        a, b, c = rng.choice(weights), rng.choice(weights), rng.choice(weights)
        if le(a, b) and le(b, a):
            assert a == b
        if le(a, b) and le(b, c):
            assert le(a, c)


def test_weyl_dimension_trivial():
    assert sl5.weyl_dimension((0, 0, 0, 0)) == 1


def test_weyl_dimension_standard():
    assert sl5.weyl_dimension((1, 0, 0, 0)) == 5
    assert sl5.weyl_dimension((1, 0, 0, 0)) == hook_content_dimension((1,))


def test_weyl_dimension_40():
    lam = (1, 1, 0, 0)
    assert sl5.weyl_dimension(lam) == 40
    assert sl5.weyl_dimension(lam) == hook_content_dimension(partition_of_weight(lam))


def test_weyl_matches_hook_content_random():
    rng = random.Random(4)
    for _ in range(30):
        lam = tuple(rng.randint(0, 3) for _ in range(4))
        assert sl5.weyl_dimension(lam) == \
            hook_content_dimension(partition_of_weight(lam))


def test_weyl_not_dominant():
    try:
        sl5.weyl_dimension((1, -1, 0, 0))
    except ValueError as exc:
        assert "dominant" in str(exc)
    else:
        raise AssertionError("expected ValueError")


def test_dual_weight_examples():
    assert sl5.dual_weight((1, 1, 0, 0)) == (0, 0, 1, 1)
    assert sl5.dual_weight((0, 0, 0, 0)) == (0, 0, 0, 0)
    assert sl5.dual_weight((1, 2, 3, 4)) == (4, 3, 2, 1)


def test_dual_involution_and_dimension():
    rng = random.Random(9)
    for _ in range(40):
        lam = tuple(rng.randint(0, 3) for _ in range(4))
        assert sl5.dual_weight(sl5.dual_weight(lam)) == lam
        assert sl5.weyl_dimension(lam) == sl5.weyl_dimension(sl5.dual_weight(lam))


def test_dual_respects_dominance():
    # the dual map acts on weight differences by permuting the simple roots,
    # so it preserves every dominance relation
    rng = random.Random(21)
    for _ in range(200):
        lam = tuple(rng.randint(-2, 2) for _ in range(4))
        mu = tuple(rng.randint(-2, 2) for _ in range(4))
        assert sl5.dominance_compare(lam, mu) == \
            sl5.dominance_compare(sl5.dual_weight(lam), sl5.dual_weight(mu))


def test_weight_json_round_trip():
    lam = (1, 0, 2, 3)
    assert sl5.weight_from_json(sl5.weight_to_json(lam)) == lam
    assert sl5.weight_to_json(lam) == "[1, 0, 2, 3]"
