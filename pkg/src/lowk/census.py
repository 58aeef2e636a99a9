"""Conjugacy machinery: classes, {g, g^-1} pair classes, cyclic-subgroup classes.

Conjugacy classes are computed by orbit expansion under conjugation by the
group's generating set.  Cyclic-subgroup classes enumerate the subgroups as
element sets, deduplicate, and orbit the sets under conjugation; restricting
a census to a few element orders keeps this cheap on large groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .groups import ElementId, FiniteGroup


class GroupTooLargeError(Exception):
    """The group exceeds the configured brute-force bound."""


def _check_size(group: FiniteGroup, max_size: int) -> None:
    if group.order > max_size:
        raise GroupTooLargeError(
            f"{group.name} has order {group.order} > brute-force bound {max_size}"
        )


def _orbit_partition(
    group: FiniteGroup, elems: Iterable[ElementId]
) -> tuple[list[tuple[ElementId, ...]], dict[ElementId, int]]:
    """Partition `elems` into conjugacy classes (closed under conjugation)."""
    mul = group.mul
    gen_pairs = [(g, group.inv(g)) for g in group.generators]
    index: dict[ElementId, int] = {}
    classes: list[tuple[ElementId, ...]] = []
    for e in sorted(elems):
        if e in index:
            continue
        orbit = {e}
        frontier = [e]
        while frontier:
            g = frontier.pop()
            for a, ai in gen_pairs:
                h = mul(mul(a, g), ai)
                if h not in orbit:
                    orbit.add(h)
                    frontier.append(h)
        cls = tuple(sorted(orbit))
        idx = len(classes)
        classes.append(cls)
        for h in cls:
            index[h] = idx
    return classes, index


@dataclass(frozen=True, eq=False)
class ClassCensus:
    """Conjugacy classes plus the per-order pair/subgroup class counts r1, r2."""

    group: FiniteGroup
    classes: tuple[tuple[ElementId, ...], ...]
    r1_by_order: dict[int, int]
    r2_by_order: dict[int, int]
    restricted_orders: frozenset[int] | None = None
    _index: dict[ElementId, int] = field(default_factory=dict, repr=False)

    def class_of(self, g: ElementId) -> tuple[ElementId, ...]:
        return self.classes[self._index[g]]

    def class_count(self) -> int:
        return len(self.classes)


def conjugacy_classes(
    group: FiniteGroup,
    *,
    orders: Iterable[int] | None = None,
    max_size: int = 5000,
) -> ClassCensus:
    """Full census, or a census restricted to elements of the given orders."""
    _check_size(group, max_size)
    restricted = frozenset(orders) if orders is not None else None
    elems = group.elements if restricted is None else group.elements_of_orders(restricted)
    classes, index = _orbit_partition(group, elems)
    classes = sorted(classes, key=lambda c: (group.order_of(c[0]), c[0]))
    classes = tuple(classes)
    index = {g: i for i, cls in enumerate(classes) for g in cls}

    by_order: dict[int, list[int]] = {}
    for i, cls in enumerate(classes):
        by_order.setdefault(group.order_of(cls[0]), []).append(i)

    r1: dict[int, int] = {}
    for d, idxs in by_order.items():
        pairs = {frozenset((i, index[group.inv(classes[i][0])])) for i in idxs}
        r1[d] = len(pairs)

    mul, inv = group.mul, group.inv
    gen_pairs = [(g, inv(g)) for g in group.generators]
    r2: dict[int, int] = {}
    for d, idxs in by_order.items():
        subgroups: dict[frozenset[ElementId], None] = {}
        for i in idxs:
            for g in classes[i]:
                powers = [group.identity]
                x = g
                while x != group.identity:
                    powers.append(x)
                    x = mul(x, g)
                subgroups.setdefault(frozenset(powers), None)
        seen: set[frozenset[ElementId]] = set()
        count = 0
        for s in sorted(subgroups, key=lambda s: sorted(s)):
            if s in seen:
                continue
            count += 1
            orbit = {s}
            frontier = [s]
            while frontier:
                cur = frontier.pop()
                for a, ai in gen_pairs:
                    img = frozenset(mul(mul(a, x), ai) for x in cur)
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            seen |= orbit
        r2[d] = count

    return ClassCensus(
        group=group,
        classes=classes,
        r1_by_order=dict(sorted(r1.items())),
        r2_by_order=dict(sorted(r2.items())),
        restricted_orders=restricted,
        _index=index,
    )


def centralizer(group: FiniteGroup, g: ElementId) -> tuple[ElementId, ...]:
    mul = group.mul
    return tuple(x for x in group.elements if mul(x, g) == mul(g, x))


def check_p2_condition(group: FiniteGroup, *, max_size: int = 5000) -> bool:
    """No subgroup Z_p x Z_p for any prime p dividing the order."""
    _check_size(group, max_size)
    mul = group.mul
    for p in _prime_divisors(group.order):
        stratum = group.elements_of_orders(frozenset((p,)))
        for x in stratum:
            gen = {group.identity}
            y = x
            while y != group.identity:
                gen.add(y)
                y = mul(y, x)
            for z in stratum:
                if z not in gen and mul(x, z) == mul(z, x):
                    return False
    return True


def check_2p_condition(group: FiniteGroup, *, max_size: int = 5000) -> bool:
    """Every subgroup of order 2p (p a prime divisor of |G|) is cyclic.

    A non-cyclic group of order 2p is generated by an order-p element that is
    inverted by an order-2 element outside its span, so scanning those pairs
    is exhaustive.
    """
    _check_size(group, max_size)
    mul, inv = group.mul, group.inv
    involutions = group.elements_of_orders(frozenset((2,)))
    for p in _prime_divisors(group.order):
        for a in group.elements_of_orders(frozenset((p,))):
            span = {group.identity}
            y = a
            while y != group.identity:
                span.add(y)
                y = mul(y, a)
            a_inv = inv(a)
            for b in involutions:
                if b not in span and group.conj(b, a) == a_inv:
                    return False
    return True


def check_milnor(group: FiniteGroup) -> bool:
    """At most one element of order 2."""
    count = 0
    for g in group.elements:
        if group.order_of(g) == 2:
            count += 1
            if count > 1:
                return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out
