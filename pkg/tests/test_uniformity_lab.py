import random
from fractions import Fraction

import pytest

from ordtop.order_lab import FnSeq
from ordtop.uniformity_lab import (
    ExplicitEntourage,
    FailureUpTo,
    SpacedDiagonalNeighbourhood,
    UAlphaEntourage,
    audit_entourage_containment,
    base_cofinal_search,
    base_monotone_check,
    composition_search,
    convergent_sequence,
    countable_base,
    finite_table_space,
    metric_fan,
    principal_base,
    tail_base,
    u_alpha_member,
)

F = Fraction


def small_space():
    return convergent_sequence(16)


def test_space_construction():
    space = small_space()
    assert len(space.points) == 17
    assert space.dist(F(1, 2), F(1, 4)) == F(1, 4)
    fan = metric_fan(3, 4)
    assert fan.dist(("0", 2) if False else (0, 2), (1, 2)) == F(1)
    assert fan.dist((0, 2), (0, 4)) == F(1, 4)


def test_table_space_validates():
    with pytest.raises(ValueError):
        finite_table_space(
            "abc",
            {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 5},
            [frozenset("a")])


def test_u_alpha_examples():
    space = small_space()
    alpha = FnSeq((3,), 3)
    # diagonal clause
    assert u_alpha_member(space, alpha, F(1, 7), F(1, 7))
    # max(1/16, 1/32) = 1/16 < 1/8 = 2^-3 ... 1/32 is outside this space,
    # use the bundled points 1/16 and 1/8 near zero instead
    assert u_alpha_member(space, alpha, F(1, 16), F(1, 16))
    assert u_alpha_member(space, alpha, F(1, 16), F(1, 10))
    assert not u_alpha_member(space, alpha, F(1), F(1, 2))


def test_u_alpha_deeper_sequence():
    # the 1/32 pair needs a deeper presentation
    space = convergent_sequence(32)
    alpha = FnSeq((3,), 3)
    assert u_alpha_member(space, alpha, F(1, 16), F(1, 32))
    assert not u_alpha_member(space, alpha, F(1), F(1, 2))


def test_alpha_without_tail_rejected():
    space = convergent_sequence(
        8, decomposition=[frozenset({F(0)}), frozenset({F(0), F(1)})])
    with pytest.raises(ValueError):
        u_alpha_member(space, [3], F(1, 2), F(1, 2))
    assert u_alpha_member(space, [3, 2], F(1, 2), F(1, 2))


def test_entourage_axioms():
    space = small_space()
    u = UAlphaEntourage(space, FnSeq((2,), 2))
    assert u.check_axioms(space)
    e = ExplicitEntourage([(F(1), F(1, 2))])
    assert e.check_axioms(space)


def test_base_monotone():
    space = small_space()
    pairs = [(FnSeq((2,), 2), FnSeq((3,), 3)),
             (FnSeq((1,), 1), FnSeq((1,), 4)),
             (FnSeq((4,), 4), FnSeq((4,), 4))]
    assert base_monotone_check(space, pairs)
    with pytest.raises(ValueError):
        base_monotone_check(space, [(FnSeq((3,), 3), FnSeq((2,), 2))])


def test_cofinal_search_uniform_radius():
    space = convergent_sequence(100)
    target = SpacedDiagonalNeighbourhood(
        space, {p: F(1, 10) for p in space.points})
    alpha = base_cofinal_search(space, target)
    assert isinstance(alpha, FnSeq)
    assert alpha.get(0) == 4  # 2^-4 is the first power below 1/10
    u = UAlphaEntourage(space, alpha)
    assert audit_entourage_containment(space, u, target) == []


def test_cofinal_search_tight_isolated_point():
    # shrinking O around an isolated point away from the compact piece
    # does not hurt: U_alpha only inflates around K~_n
    space = small_space()
    radii = {p: F(1, 4) for p in space.points}
    radii[F(1)] = F(1, 1000)
    target = SpacedDiagonalNeighbourhood(space, radii)
    alpha = base_cofinal_search(space, target)
    assert isinstance(alpha, FnSeq)
    u = UAlphaEntourage(space, alpha)
    assert audit_entourage_containment(space, u, target) == []


def test_cofinal_search_failure():
    space = small_space()
    # a single tiny ball far from the limit: most of the diagonal is
    # uncovered, so no entourage fits inside
    target = SpacedDiagonalNeighbourhood(space, {F(1): F(1, 1000)})
    out = base_cofinal_search(space, target)
    assert isinstance(out, FailureUpTo)


def test_random_cofinal_searches_audit_clean():
    rng = random.Random(23)
    space = convergent_sequence(40)
    for _ in range(10):
        radii = {p: F(1, rng.randint(2, 60)) for p in space.points}
        target = SpacedDiagonalNeighbourhood(space, radii)
        alpha = base_cofinal_search(space, target)
        assert isinstance(alpha, FnSeq)
        u = UAlphaEntourage(space, alpha)
        assert audit_entourage_containment(space, u, target) == []


def test_composition_search():
    space = small_space()
    alpha = FnSeq((2,), 2)
    better = composition_search(space, alpha)
    assert better is not None
    u_half = UAlphaEntourage(space, better)
    u = UAlphaEntourage(space, alpha)
    for x in space.points:
        for y in space.points:
            for z in space.points:
                if u_half.contains(x, y) and u_half.contains(y, z):
                    assert u.contains(x, z)


def test_countable_base_one_point():
    space = finite_table_space(["p"], {}, [frozenset()])
    bases = {"p": principal_base("p")}
    ent = countable_base(space, bases, {"p": FnSeq((5,), 5)})
    assert ent.contains("p", "p")


def test_countable_base_convergent_sequence():
    space = small_space()
    zero = F(0)
    bases = {p: principal_base(p) for p in space.points if p != zero}
    bases[zero] = tail_base(space)
    f = {p: FnSeq((1,), 1) for p in space.points}
    f[zero] = FnSeq((5,), 5)
    ent = countable_base(space, bases, f)
    # pairs are in the entourage exactly when both sit in the tail from 5
    assert ent.contains(F(1, 6), F(1, 8))
    assert ent.contains(zero, F(1, 5))
    assert not ent.contains(F(1, 4), F(1, 8))
    assert ent.contains(F(1, 2), F(1, 2))  # diagonal via the principal block
    assert ent.check_axioms(space)


def test_countable_base_monotone_in_f():
    space = small_space()
    zero = F(0)
    bases = {p: principal_base(p) for p in space.points if p != zero}
    bases[zero] = tail_base(space)
    f_small = {p: FnSeq((1,), 1) for p in space.points}
    f_small[zero] = FnSeq((3,), 3)
    f_large = {p: FnSeq((2,), 2) for p in space.points}
    f_large[zero] = FnSeq((7,), 7)
    small = countable_base(space, bases, f_small)
    large = countable_base(space, bases, f_large)
    for x in space.points:
        for y in space.points:
            if large.contains(x, y):
                assert small.contains(x, y)
