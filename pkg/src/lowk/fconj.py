"""F-conjugacy classes and the representation counts r_F.

Two elements are F-conjugate when some Galois power of one is ordinarily
conjugate to the other; by Witt-Berman the number of (p-regular, in positive
characteristic) F-conjugacy classes equals the number of irreducible
F-representations.  The power exponent runs over the Galois image modulo the
regular part of the group exponent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .census import _check_size, _orbit_partition
from .galois import FieldDescriptor, minimal_generators, phi_image
from .groups import ElementId, FiniteGroup


@dataclass(frozen=True)
class FPartition:
    """Partition of the (p-regular) elements into F-conjugacy classes."""

    field: FieldDescriptor
    modulus_used: int
    blocks: tuple[tuple[ElementId, ...], ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def blocks_of_order(self, group: FiniteGroup, d: int) -> list[tuple[ElementId, ...]]:
        return [b for b in self.blocks if group.order_of(b[0]) == d]


def regular_modulus(group: FiniteGroup, field: FieldDescriptor) -> int:
    """Group exponent with the characteristic's p-part stripped."""
    m = group.exponent
    p = field.characteristic
    if p:
        while m % p == 0:
            m //= p
    return m


def f_partition(
    group: FiniteGroup, field: FieldDescriptor, *, max_size: int = 5000
) -> FPartition:
    _check_size(group, max_size)
    p = field.characteristic
    if p:
        elems = [g for g in group.elements if group.order_of(g) % p != 0]
    else:
        elems = list(group.elements)
    classes, index = _orbit_partition(group, elems)
    modulus = regular_modulus(group, field)
    image = phi_image(field, modulus)

    parent = list(range(len(classes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for t in minimal_generators(image):
        for i, cls in enumerate(classes):
            union(i, index[group.power(cls[0], t)])

    merged: dict[int, list[ElementId]] = {}
    for i, cls in enumerate(classes):
        merged.setdefault(find(i), []).extend(cls)
    blocks = tuple(
        sorted(
            (tuple(sorted(b)) for b in merged.values()),
            key=lambda b: (group.order_of(b[0]), b[0]),
        )
    )
    return FPartition(field=field, modulus_used=modulus, blocks=blocks)


def r_f(group: FiniteGroup, field: FieldDescriptor, *, max_size: int = 5000) -> int:
    """Number of irreducible F-representations (Witt-Berman count)."""
    return f_partition(group, field, max_size=max_size).block_count


def _per_order_blocks(
    group: FiniteGroup, field: FieldDescriptor, *, max_size: int = 5000
) -> int:
    """Diagnostic variant: recompute the Galois image modulo each element order.

    Not used by the public counts; kept to compare the single-modulus
    convention against the per-order one.
    """
    _check_size(group, max_size)
    p = field.characteristic
    if p:
        elems = [g for g in group.elements if group.order_of(g) % p != 0]
    else:
        elems = list(group.elements)
    classes, index = _orbit_partition(group, elems)
    parent = list(range(len(classes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    images: dict[int, tuple[int, ...]] = {}
    for i, cls in enumerate(classes):
        d = group.order_of(cls[0])
        if d not in images:
            images[d] = minimal_generators(phi_image(field, d))
        for t in images[d]:
            j = index[group.power(cls[0], t)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return len({find(i) for i in range(len(classes))})
