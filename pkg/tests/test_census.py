import pytest

from lowk.census import (
    GroupTooLargeError,
    centralizer,
    check_2p_condition,
    check_milnor,
    check_p2_condition,
    conjugacy_classes,
)
from lowk.groups import (
    build_abelian,
    build_binary_polyhedral,
    build_cyclic,
    build_dicyclic,
    generalized_quaternion,
)


def test_dicyclic_rotation_classes_are_inverse_pairs():
    g = build_dicyclic(5)
    census = conjugacy_classes(g)
    x = (1, 0)
    assert census.class_of(x) == ((1, 0), (9, 0))  # {x, x^-1}
    assert census.class_of((2, 0)) == ((2, 0), (8, 0))


def test_ostar_pair_and_subgroup_counts():
    census = conjugacy_classes(build_binary_polyhedral("O*"))
    assert census.r1_by_order[8] == 2
    assert census.r2_by_order[8] == 1
    assert census.r1_by_order[4] == census.r2_by_order[4] == 2


def test_istar_pair_and_subgroup_counts():
    census = conjugacy_classes(build_binary_polyhedral("I*"))
    assert (census.r1_by_order[5], census.r2_by_order[5]) == (2, 1)
    assert (census.r1_by_order[10], census.r2_by_order[10]) == (2, 1)


def test_class_sizes_partition_group():
    for group in (build_dicyclic(6), build_binary_polyhedral("T*"), build_cyclic(24)):
        census = conjugacy_classes(group)
        sizes = [len(c) for c in census.classes]
        assert sum(sizes) == group.order
        assert all(group.order % s == 0 for s in sizes)
        covered = {g for c in census.classes for g in c}
        assert covered == set(group.elements)


def test_centralizer_identity_is_whole_group():
    g = build_dicyclic(4)
    assert len(centralizer(g, g.identity)) == g.order


def test_centralizer_of_order8_in_ostar_is_its_span():
    g = build_binary_polyhedral("O*")
    v = next(e for e in g.elements if g.order_of(e) == 8)
    cen = centralizer(g, v)
    assert len(cen) == 8
    span = {g.power(v, i) for i in range(8)}
    assert set(cen) == span


@pytest.mark.parametrize(
    "group",
    [build_dicyclic(5), build_dicyclic(8), build_binary_polyhedral("T*"),
     build_binary_polyhedral("O*"), build_binary_polyhedral("I*")],
    ids=lambda g: g.name,
)
def test_centralizers_cyclic_above_order_two(group):
    for g in group.elements:
        if group.order_of(g) >= 3:
            cen = centralizer(group, g)
            # cyclic iff some member has order equal to the centralizer size
            assert any(group.order_of(c) == len(cen) for c in cen)


def two_generated_subgroups(group):
    """Oracle: all subgroups generated by at most two elements, as frozensets."""
    seen = set()
    els = group.elements
    for a in els:
        for b in els:
            sub = {group.identity}
            frontier = [group.identity]
            while frontier:
                x = frontier.pop()
                for gen in (a, b):
                    y = group.mul(x, gen)
                    if y not in sub:
                        sub.add(y)
                        frontier.append(y)
            seen.add(frozenset(sub))
    return seen


def is_cyclic_subgroup(group, sub):
    return any(
        {group.power(g, i) for i in range(group.order_of(g))} == sub for g in sub
    )


@pytest.mark.parametrize(
    "group,expected",
    [
        (build_dicyclic(2), True),
        (build_abelian([2, 2]), False),
        (build_dicyclic(5), True),
    ],
    ids=["Q8", "Z2xZ2", "Dic_20"],
)
def test_periodicity_conditions_against_subgroup_scan(group, expected):
    # oracle: every group of order p^2 or 2p is generated by <= 2 elements,
    # so an exhaustive two-generator scan sees all of them
    from lowk.galois import prime_divisors

    p2_ok = True
    tp_ok = True
    for sub in two_generated_subgroups(group):
        n = len(sub)
        for p in prime_divisors(group.order):
            if n == p * p and not is_cyclic_subgroup(group, sub):
                p2_ok = False
            if n == 2 * p and not is_cyclic_subgroup(group, sub):
                tp_ok = False
    assert check_p2_condition(group) == p2_ok == expected
    assert check_2p_condition(group) == tp_ok == expected


def test_milnor_condition():
    assert check_milnor(build_dicyclic(2))
    assert check_milnor(build_dicyclic(7))
    assert check_milnor(build_binary_polyhedral("I*"))
    assert not check_milnor(build_abelian([2, 2]))
    assert check_milnor(build_cyclic(3))


def test_all_three_conditions_on_families():
    for group in (build_dicyclic(2), build_dicyclic(5), build_dicyclic(8),
                  generalized_quaternion(5), build_binary_polyhedral("T*"),
                  build_binary_polyhedral("O*"), build_binary_polyhedral("I*")):
        assert check_p2_condition(group)
        assert check_2p_condition(group)
        assert check_milnor(group)


def test_pair_equals_subgroup_count_small_orders():
    groups = [build_cyclic(m) for m in (1, 2, 6, 12, 30)]
    groups += [build_dicyclic(m) for m in range(2, 16)]
    groups += [generalized_quaternion(k) for k in (3, 4, 5, 6)]
    groups += [build_binary_polyhedral(k) for k in ("T*", "O*", "I*")]
    for group in groups:
        census = conjugacy_classes(group)
        for d in (1, 2, 3, 4, 6):
            assert census.r1_by_order.get(d, 0) == census.r2_by_order.get(d, 0), group.name


def test_restricted_census_matches_full():
    group = build_dicyclic(9)
    full = conjugacy_classes(group)
    restricted = conjugacy_classes(group, orders={1, 2, 3, 4, 6})
    for d in (1, 2, 3, 4, 6):
        assert restricted.r1_by_order.get(d, 0) == full.r1_by_order.get(d, 0)
        assert restricted.r2_by_order.get(d, 0) == full.r2_by_order.get(d, 0)


def test_size_guard():
    with pytest.raises(GroupTooLargeError):
        conjugacy_classes(build_dicyclic(2000), max_size=5000)
