"""Exact models of finite group families: cyclic, dicyclic, binary polyhedral.

Element ids are canonical hashable values (ints or int tuples) and equality is
structural, so hashing and output ordering are reproducible.  Multiplication
is closed-form wherever the family allows it; dicyclic groups in particular
never materialise a multiplication table, which keeps Dic_{4*8191} cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence

ElementId = Any

CYCLIC = "cyclic"
DICYCLIC = "dicyclic"
GENERALIZED_QUATERNION = "generalized_quaternion"
BINARY_TETRAHEDRAL = "binary_tetrahedral"
BINARY_OCTAHEDRAL = "binary_octahedral"
BINARY_ICOSAHEDRAL = "binary_icosahedral"
CUSTOM = "custom"

BINARY_POLYHEDRAL_KINDS = (BINARY_TETRAHEDRAL, BINARY_OCTAHEDRAL, BINARY_ICOSAHEDRAL)


class GroupConstructionError(Exception):
    """A family constructor failed its own closure/order self-checks."""


@dataclass(frozen=True)
class FamilyTag:
    """Construction family of a group; param is m (cyclic/dicyclic) or k (Q_{2^k})."""

    kind: str
    param: int | None = None

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}({self.param})"


class FiniteGroup:
    """A concrete finite group over opaque element ids.

    All state is fixed at construction; operations are pure.  `generators`
    must generate the group (conjugacy machinery relies on it).
    """

    def __init__(
        self,
        name: str,
        family: FamilyTag,
        elements: Sequence[ElementId],
        identity: ElementId,
        generators: Sequence[ElementId],
        mul: Callable[[ElementId, ElementId], ElementId],
        inv: Callable[[ElementId], ElementId],
        order_of: Callable[[ElementId], int],
        exponent: int | None = None,
        order_strata: Callable[[frozenset[int]], list[ElementId]] | None = None,
    ) -> None:
        self.name = name
        self.family = family
        self.elements = tuple(sorted(elements))
        self.identity = identity
        self.generators = tuple(generators)
        self.mul = mul
        self.inv = inv
        self.order_of = order_of
        self._exponent = exponent
        self._order_strata = order_strata
        self._element_set = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def exponent(self) -> int:
        if self._exponent is None:
            self._exponent = math.lcm(*(self.order_of(g) for g in self.elements))
        return self._exponent

    def power(self, g: ElementId, k: int) -> ElementId:
        if k < 0:
            g, k = self.inv(g), -k
        result = self.identity
        base = g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj(self, a: ElementId, g: ElementId) -> ElementId:
        """a * g * a^-1."""
        return self.mul(self.mul(a, g), self.inv(a))

    def elements_of_orders(self, orders: frozenset[int]) -> list[ElementId]:
        if self._order_strata is not None:
            return self._order_strata(orders)
        return [g for g in self.elements if self.order_of(g) in orders]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.elements)

    def __contains__(self, g: ElementId) -> bool:
        return g in self._element_set

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    @classmethod
    def from_closure(
        cls,
        name: str,
        generators: Sequence[ElementId],
        mul: Callable[[ElementId, ElementId], ElementId],
        identity: ElementId,
        inv: Callable[[ElementId], ElementId] | None = None,
        family: FamilyTag | None = None,
        expect_order: int | None = None,
        max_size: int = 100_000,
    ) -> "FiniteGroup":
        """Generate a group as the closure of `generators` under `mul`."""
        elements = {identity}
        frontier = [identity]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = mul(x, g)
                if y not in elements:
                    if len(elements) >= max_size:
                        raise GroupConstructionError(
                            f"{name}: closure exceeded {max_size} elements"
                        )
                    elements.add(y)
                    frontier.append(y)
        if expect_order is not None and len(elements) != expect_order:
            raise GroupConstructionError(
                f"{name}: closure has {len(elements)} elements, expected {expect_order}"
            )
        order_cache: dict[ElementId, int] = {}
        inv_cache: dict[ElementId, ElementId] = {}

        def order_of(g: ElementId) -> int:
            if g not in order_cache:
                powers = [g]
                while powers[-1] != identity:
                    powers.append(mul(powers[-1], g))
                order_cache[g] = len(powers)
                inv_cache[g] = powers[-2] if len(powers) > 1 else identity
            return order_cache[g]

        def inv_fn(g: ElementId) -> ElementId:
            if g not in inv_cache:
                order_of(g)
            return inv_cache[g]

        return cls(
            name=name,
            family=family or FamilyTag(CUSTOM),
            elements=sorted(elements),
            identity=identity,
            generators=generators,
            mul=mul,
            inv=inv if inv is not None else inv_fn,
            order_of=order_of,
        )


def build_cyclic(m: int) -> FiniteGroup:
    """Z_m with elements 0..m-1 under addition."""
    if m < 1:
        raise ValueError(f"cyclic order must be >= 1, got {m}")

    def strata(orders: frozenset[int]) -> list[int]:
        out = []
        for d in sorted(orders):
            if m % d == 0:
                step = m // d
                out.extend(step * u for u in range(d) if math.gcd(u, d) == 1)
        return sorted(out)

    return FiniteGroup(
        name=f"Z_{m}",
        family=FamilyTag(CYCLIC, m),
        elements=range(m),
        identity=0,
        generators=(1 % m,),
        mul=lambda a, b: (a + b) % m,
        inv=lambda a: (-a) % m,
        order_of=lambda a: m // math.gcd(a, m),
        exponent=m,
        order_strata=strata,
    )


def _dicyclic(name: str, m: int, family: FamilyTag) -> FiniteGroup:
    two_m = 2 * m

    def mul(g, h):
        a, b = g
        c, d = h
        if b == 0:
            return ((a + c) % two_m, d)
        if d == 0:
            return ((a - c) % two_m, 1)
        return ((a - c + m) % two_m, 0)

    def inv(g):
        a, b = g
        if b == 0:
            return (-a % two_m, 0)
        return ((a + m) % two_m, 1)

    def order_of(g):
        a, b = g
        if b:
            return 4
        return two_m // math.gcd(a, two_m)

    def strata(orders: frozenset[int]) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for d in sorted(orders):
            if two_m % d == 0:
                step = two_m // d
                out.extend((step * u, 0) for u in range(d) if math.gcd(u, d) == 1)
        if 4 in orders:
            out.extend((c, 1) for c in range(two_m))
        return sorted(out)

    return FiniteGroup(
        name=name,
        family=family,
        elements=[(a, b) for a in range(two_m) for b in (0, 1)],
        identity=(0, 0),
        generators=((1, 0), (0, 1)),
        mul=mul,
        inv=inv,
        order_of=order_of,
        exponent=math.lcm(two_m, 4),
        order_strata=strata,
    )


def build_dicyclic(m: int) -> FiniteGroup:
    """Dic_{4m} = <x, y | x^m = y^2, yxy^-1 = x^-1> with normal forms (a, b) = x^a y^b."""
    if m < 2:
        raise ValueError(f"dicyclic parameter must be >= 2, got {m}")
    return _dicyclic(f"Dic_{4 * m}", m, FamilyTag(DICYCLIC, m))


def generalized_quaternion(k: int) -> FiniteGroup:
    """Q_{2^k} = Dic_{4 * 2^(k-2)} for k >= 3."""
    if k < 3:
        raise ValueError(f"generalized quaternion index must be >= 3, got {k}")
    return _dicyclic(f"Q_{2 ** k}", 2 ** (k - 2), FamilyTag(GENERALIZED_QUATERNION, k))


def dicyclic_parameter(group: FiniteGroup) -> int | None:
    """m such that the group is Dic_{4m}, or None for other families."""
    tag = group.family
    if tag.kind == DICYCLIC:
        return tag.param
    if tag.kind == GENERALIZED_QUATERNION:
        assert tag.param is not None
        return 2 ** (tag.param - 2)
    return None


# 2x2 determinant-1 matrices over small fields; matrices are flat tuples (a, b, c, d).

def _matmul_prime(p: int):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p,
                (c * e + d * g) % p, (c * f + d * h) % p)
    return mul


def _matinv_prime(p: int):
    def inv(x):
        a, b, c, d = x
        return (d % p, -b % p, -c % p, a % p)
    return inv


# F9 = F3[t]/(t^2 + 1), elements encoded as x + 3*y for x + y*t.

def _f9_mul(u: int, v: int) -> int:
    x1, y1 = u % 3, u // 3
    x2, y2 = v % 3, v // 3
    return (x1 * x2 - y1 * y2) % 3 + 3 * ((x1 * y2 + y1 * x2) % 3)


def _f9_add(u: int, v: int) -> int:
    return (u + v) % 3 + 3 * ((u // 3 + v // 3) % 3)


def _f9_neg(u: int) -> int:
    return (-u) % 3 + 3 * ((-(u // 3)) % 3)


def _matmul_f9(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (
        _f9_add(_f9_mul(a, e), _f9_mul(b, g)),
        _f9_add(_f9_mul(a, f), _f9_mul(b, h)),
        _f9_add(_f9_mul(c, e), _f9_mul(d, g)),
        _f9_add(_f9_mul(c, f), _f9_mul(d, h)),
    )


def _matinv_f9(x):
    a, b, c, d = x
    return (d, _f9_neg(b), _f9_neg(c), a)


def build_binary_polyhedral(kind: str) -> FiniteGroup:
    """The binary tetrahedral/octahedral/icosahedral group, as T*, O* or I*.

    T* and I* are the determinant-1 2x2 matrix groups over the 3- and
    5-element fields; O* is generated inside the determinant-1 matrices over
    the 9-element field.  Construction self-checks the order and the
    uniqueness of the order-2 element.
    """
    if kind in ("T*", "I*"):
        p = 3 if kind == "T*" else 5
        expect = 24 if kind == "T*" else 120
        tag = BINARY_TETRAHEDRAL if kind == "T*" else BINARY_ICOSAHEDRAL
        gens = [(1, 1, 0, 1), (0, 1, p - 1, 0)]
        group = FiniteGroup.from_closure(
            name=kind,
            generators=gens,
            mul=_matmul_prime(p),
            identity=(1, 0, 0, 1),
            inv=_matinv_prime(p),
            family=FamilyTag(tag),
            expect_order=expect,
        )
    elif kind == "O*":
        # Images of (1+i)/sqrt(2), j, and the order-3 rotation of i, j, k
        # under the quaternion-to-matrix embedding over F9.
        gens = [(7, 0, 0, 8), (0, 1, 2, 0), (7, 8, 7, 4)]
        group = FiniteGroup.from_closure(
            name="O*",
            generators=gens,
            mul=_matmul_f9,
            identity=(1, 0, 0, 1),
            inv=_matinv_f9,
            family=FamilyTag(BINARY_OCTAHEDRAL),
            expect_order=48,
        )
    else:
        raise ValueError(f"unknown binary polyhedral kind {kind!r} (want T*, O* or I*)")
    involutions = [g for g in group if g != group.identity and group.order_of(g) == 2]
    if len(involutions) != 1:
        raise GroupConstructionError(
            f"{kind}: expected a unique order-2 element, found {len(involutions)}"
        )
    return group


def build_abelian(factors: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups (family `custom`), e.g. Z_2 x Z_2."""
    factors = tuple(int(f) for f in factors)
    if not factors or any(f < 1 for f in factors):
        raise ValueError(f"factors must be positive integers, got {factors}")
    n = len(factors)

    def mul(a, b):
        return tuple((a[i] + b[i]) % factors[i] for i in range(n))

    def inv(a):
        return tuple(-a[i] % factors[i] for i in range(n))

    def order_of(a):
        return math.lcm(*(factors[i] // math.gcd(a[i], factors[i]) for i in range(n)))

    elements = [()]
    for f in factors:
        elements = [e + (v,) for e in elements for v in range(f)]
    gens = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return FiniteGroup(
        name=" x ".join(f"Z_{f}" for f in factors),
        family=FamilyTag(CUSTOM),
        elements=elements,
        identity=(0,) * n,
        generators=gens,
        mul=mul,
        inv=inv,
        order_of=order_of,
        exponent=math.lcm(*factors),
    )


def center(group: FiniteGroup) -> tuple[ElementId, ...]:
    """Elements commuting with everything (checked against the generators)."""
    mul = group.mul
    return tuple(
        g for g in group.elements
        if all(mul(g, h) == mul(h, g) for h in group.generators)
    )


def order_census(group: FiniteGroup) -> dict[int, int]:
    """Map element order -> number of elements of that order."""
    census: dict[int, int] = {}
    for g in group.elements:
        d = group.order_of(g)
        census[d] = census.get(d, 0) + 1
    return dict(sorted(census.items()))
