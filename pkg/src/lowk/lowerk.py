"""Lower K-theory of the supported finite groups.

Whitehead rank (pair classes minus cyclic-subgroup classes, with per-family
closed forms), the Carter rank of K_-1 from Witt-Berman counts, rule-based
K_-1 torsion, the Swan lookup table for reduced K_0, symbolic Wedderburn
shapes of the rational group algebras, and the Bass-Heller-Swan splitting.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .census import GroupTooLargeError, conjugacy_classes
from .fconj import r_f
from .galois import (
    FieldDescriptor,
    contains_minus_one,
    divisors,
    generated_subgroup,
    is_prime,
    prime_divisors,
)
from .groups import (
    BINARY_ICOSAHEDRAL,
    BINARY_OCTAHEDRAL,
    BINARY_POLYHEDRAL_KINDS,
    BINARY_TETRAHEDRAL,
    CYCLIC,
    DICYCLIC,
    GENERALIZED_QUATERNION,
    FiniteGroup,
    dicyclic_parameter,
)

COUNTABLE = "countable"
Z2_INF = "(Z2)^oo"
W_NAME = "W"


class UnsupportedFamilyError(Exception):
    """The requested invariant has no rule for this group family."""


class ConsistencyError(Exception):
    """A closed form disagreed with the brute-force census (signals a bug)."""


class Unknown:
    """First-class 'no known value' result, e.g. K0 beyond the lookup tables."""

    _instance: "Unknown | None" = None

    def __new__(cls) -> "Unknown":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unknown"


UNKNOWN = Unknown()


def _merge_infinite(
    items: tuple[tuple[str, int | str], ...]
) -> tuple[tuple[str, int | str], ...]:
    acc: dict[str, int | str] = {}
    for name, copies in items:
        if name in acc:
            if acc[name] == COUNTABLE or copies == COUNTABLE:
                acc[name] = COUNTABLE
            else:
                acc[name] = acc[name] + copies  # type: ignore[operator]
        else:
            acc[name] = copies
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class AbelianGroupExpr:
    """Symbolic abelian group: free rank, torsion coefficients, named summands.

    Canonical form: torsion sorted ascending, named summands merged and
    sorted by name; a countable pile of a summand absorbs any further copies.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    infinite: tuple[tuple[str, int | str], ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError(f"negative free rank {self.free_rank}")
        if any(t < 2 for t in self.torsion):
            raise ValueError(f"torsion coefficients must be >= 2: {self.torsion}")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))
        object.__setattr__(self, "infinite", _merge_infinite(self.infinite))

    @classmethod
    def zero(cls) -> "AbelianGroupExpr":
        return cls()

    @classmethod
    def free(cls, rank: int) -> "AbelianGroupExpr":
        return cls(free_rank=rank)

    @classmethod
    def torsion_group(cls, *coeffs: int) -> "AbelianGroupExpr":
        return cls(torsion=tuple(coeffs))

    @classmethod
    def summand(cls, name: str, copies: int | str = 1) -> "AbelianGroupExpr":
        return cls(infinite=((name, copies),))

    def __add__(self, other: "AbelianGroupExpr") -> "AbelianGroupExpr":
        return AbelianGroupExpr(
            free_rank=self.free_rank + other.free_rank,
            torsion=self.torsion + other.torsion,
            infinite=self.infinite + other.infinite,
        )

    def times(self, k: int) -> "AbelianGroupExpr":
        if k < 0:
            raise ValueError("multiplicity must be nonnegative")
        if k == 0:
            return AbelianGroupExpr.zero()
        scaled = tuple(
            (name, COUNTABLE if copies == COUNTABLE else copies * k)
            for name, copies in self.infinite
        )
        return AbelianGroupExpr(self.free_rank * k, self.torsion * k, scaled)

    @property
    def is_zero(self) -> bool:
        return not (self.free_rank or self.torsion or self.infinite)

    def to_json(self) -> dict:
        return {
            "rank": self.free_rank,
            "torsion": list(self.torsion),
            "infinite": [
                {"name": name, "copies": copies} for name, copies in self.infinite
            ],
        }

    def render(self) -> str:
        parts: list[str] = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for coeff, count in sorted(Counter(self.torsion).items()):
            parts.append(f"Z_{coeff}" if count == 1 else f"Z_{coeff}^{count}")
        for name, copies in self.infinite:
            if copies == COUNTABLE:
                parts.append(f"(+)_oo {name}")
            elif copies == 1:
                parts.append(name)
            else:
                parts.append(f"{copies}*{name}")
        return " (+) ".join(parts) if parts else "0"


@dataclass(frozen=True)
class WedderburnComponent:
    """One simple component of the rational group algebra, symbolically."""

    kind: str  # "field" | "matrix" | "skew_field" | "algebra"
    field: str = "Q"
    size: int = 1
    d: int | None = None

    def symbol(self) -> str:
        if self.kind == "field" or self.kind == "algebra":
            return self.field
        if self.kind == "matrix":
            return f"M_{self.size}({self.field})"
        return f"H_{self.d}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "symbol": self.symbol()}


def _field(symbol: str) -> WedderburnComponent:
    return WedderburnComponent("field", symbol)


def _matrix(size: int, symbol: str) -> WedderburnComponent:
    return WedderburnComponent("matrix", symbol, size=size)


def _skew(d: int) -> WedderburnComponent:
    return WedderburnComponent("skew_field", _real_cyclotomic(d), d=d)


def _algebra(symbol: str) -> WedderburnComponent:
    return WedderburnComponent("algebra", symbol)


def _real_cyclotomic(d: int) -> str:
    return f"Q(zeta_{d}+zeta_{d}^-1)"


def delta(q: int) -> int:
    """Number of divisors of q."""
    return len(divisors(q))


def _whitehead_closed_form(group: FiniteGroup) -> int | None:
    kind = group.family.kind
    if kind == CYCLIC:
        m = group.family.param
        assert m is not None
        return m // 2 + 1 - delta(m)
    m = dicyclic_parameter(group)
    if m is not None:
        return m + 1 - delta(2 * m)
    if kind == BINARY_TETRAHEDRAL:
        return 0
    if kind == BINARY_OCTAHEDRAL:
        return 1
    if kind == BINARY_ICOSAHEDRAL:
        return 2
    return None


def whitehead_rank(group: FiniteGroup, *, max_size: int = 5000) -> int:
    """Rank of the Whitehead group: sum over orders of r1(d) - r2(d).

    When a family closed form exists and the group is small enough for the
    census, both are computed and must agree.
    """
    closed = _whitehead_closed_form(group)
    census_rank = None
    if group.order <= max_size:
        census = conjugacy_classes(group, max_size=max_size)
        census_rank = sum(
            census.r1_by_order[d] - census.r2_by_order[d] for d in census.r1_by_order
        )
    if closed is not None and census_rank is not None and closed != census_rank:
        raise ConsistencyError(
            f"whitehead rank mismatch for {group.name}: "
            f"closed form {closed} != census {census_rank}"
        )
    result = census_rank if census_rank is not None else closed
    if result is None:
        raise GroupTooLargeError(
            f"{group.name}: no closed form and order {group.order} > {max_size}"
        )
    return result


SK1_FAMILIES = (
    CYCLIC,
    DICYCLIC,
    GENERALIZED_QUATERNION,
) + BINARY_POLYHEDRAL_KINDS


def sk1_is_trivial(group: FiniteGroup) -> bool:
    """SK_1 vanishes for every supported family (cyclic/dicyclic/binary polyhedral)."""
    if group.family.kind not in SK1_FAMILIES:
        raise UnsupportedFamilyError(
            f"SK_1 triviality is only recorded for the five supported families, "
            f"not {group.family}"
        )
    return True


def lambda_value(m: int) -> int:
    """(m-1)/|<2>| if -1 lies in <2> mod m, else (m-1)/(2|<2>|); m an odd prime."""
    if m == 2 or not is_prime(m):
        raise ValueError(f"lambda is defined for odd primes, got {m}")
    sub = generated_subgroup(m, [2])
    if contains_minus_one(sub):
        return (m - 1) // len(sub)
    return (m - 1) // (2 * len(sub))


def carter_rank(group: FiniteGroup, *, max_size: int = 5000) -> int:
    """Rank of K_-1(Z[G]): 1 - r_Q + sum over primes p | |G| of (r_Qp - r_Fp)."""
    if group.order <= max_size:
        rank = 1 - r_f(group, FieldDescriptor.rational(), max_size=max_size)
        for p in prime_divisors(group.order):
            rank += r_f(group, FieldDescriptor.p_adic(p), max_size=max_size)
            rank -= r_f(group, FieldDescriptor.finite_prime(p), max_size=max_size)
        if rank < 0:
            raise ConsistencyError(f"negative Carter rank {rank} for {group.name}")
        return rank
    m = dicyclic_parameter(group)
    if m is not None and m % 2 == 1 and is_prime(m):
        return lambda_value(m)
    raise GroupTooLargeError(
        f"{group.name}: order {group.order} > {max_size} and no closed form applies"
    )


def k_minus_one_torsion(group: FiniteGroup) -> int:
    """Number of Z_2 summands (0 or 1) in the torsion of K_-1(Z[G]), by family rule."""
    kind = group.family.kind
    if kind == CYCLIC:
        return 0
    if kind == BINARY_TETRAHEDRAL:
        return 0
    if kind in (BINARY_OCTAHEDRAL, BINARY_ICOSAHEDRAL):
        return 1
    m = dicyclic_parameter(group)
    if m is not None:
        if m & (m - 1) == 0:  # power of two: generalized quaternion Q_{2^k}
            k = (4 * m).bit_length() - 1
            return 0 if k == 3 else 1
        if m % 2 == 1 and is_prime(m):
            return 1 if m % 4 == 1 else 0
        raise UnsupportedFamilyError(
            f"no torsion rule for Dic_{4 * m} with m={m}; "
            "covered: m an odd prime or a power of two"
        )
    raise UnsupportedFamilyError(f"no torsion rule for family {group.family}")


def k_minus_one(group: FiniteGroup, *, max_size: int = 5000) -> AbelianGroupExpr:
    """K_-1(Z[G]) = Z^r (+) Z_2^s with r the Carter rank and s the torsion bit."""
    rank = carter_rank(group, max_size=max_size)
    s = k_minus_one_torsion(group)
    return AbelianGroupExpr(free_rank=rank, torsion=(2,) * s)


_SWAN_DICYCLIC = {2: 1, 3: 1, 4: 1, 5: 1, 7: 1, 8: 1, 11: 1, 9: 2, 6: 3, 10: 3}
_CYCLIC_TRIVIAL_K0 = frozenset(range(1, 12)) | {13, 14, 17, 19}


def k0_tilde_lookup(group: FiniteGroup) -> AbelianGroupExpr | Unknown:
    """Reduced K_0 from the Swan tables; Unknown outside them."""
    kind = group.family.kind
    if kind == BINARY_TETRAHEDRAL:
        return AbelianGroupExpr.torsion_group(2)
    if kind == BINARY_OCTAHEDRAL:
        return AbelianGroupExpr.torsion_group(2, 2)
    if kind == BINARY_ICOSAHEDRAL:
        return AbelianGroupExpr.torsion_group(2, 2, 2)
    if kind == CYCLIC:
        m = group.family.param
        return AbelianGroupExpr.zero() if m in _CYCLIC_TRIVIAL_K0 else UNKNOWN
    m = dicyclic_parameter(group)
    if m is not None:
        copies = _SWAN_DICYCLIC.get(m)
        return UNKNOWN if copies is None else AbelianGroupExpr.torsion_group(*(2,) * copies)
    return UNKNOWN


def wedderburn_shape(group: FiniteGroup) -> tuple[WedderburnComponent, ...]:
    """Symbolic simple components of Q[G] for the supported families."""
    kind = group.family.kind
    if kind == BINARY_TETRAHEDRAL:
        return (
            _field("Q"),
            _field("Q(zeta_3)"),
            _matrix(3, "Q"),
            _skew(4),
            _algebra("H(Q(zeta_3))"),
        )
    if kind == BINARY_OCTAHEDRAL:
        return (
            _field("Q"),
            _field("Q"),
            _matrix(2, "Q"),
            _matrix(3, "Q"),
            _matrix(3, "Q"),
            _skew(8),
            _matrix(2, "H_hat"),
        )
    if kind == BINARY_ICOSAHEDRAL:
        return (
            _field("Q"),
            _matrix(4, "Q"),
            _skew(5),
            _matrix(2, "H_hat"),
            _matrix(5, "Q"),
            _matrix(3, "H(Q)"),
            _matrix(3, "Q(sqrt5)"),
        )
    m = dicyclic_parameter(group)
    if m is None:
        raise UnsupportedFamilyError(f"no Wedderburn shape for family {group.family}")
    if m % 2 == 1:
        comps = [_field("Q"), _field("Q")]
        comps += [_matrix(2, _real_cyclotomic(d)) for d in divisors(m) if d > 2]
        comps.append(_field("Q(i)"))
        comps += [_skew(2 * d0) for d0 in divisors(m) if d0 > 1]
        return tuple(comps)
    if m & (m - 1) == 0:
        k = (4 * m).bit_length() - 1
        comps = [_field("Q")] * 4
        comps += [_matrix(2, _real_cyclotomic(2 ** i)) for i in range(2, k - 1)]
        comps.append(_skew(2 ** (k - 1)))
        return tuple(comps)
    raise UnsupportedFamilyError(
        f"no Wedderburn shape rule for Dic_{4 * m} with even m={m} not a power of two"
    )


_BHS_INPUTS = {1: ("wh", "k0", "nk1"), 0: ("k0", "kminus1", "nk0")}


def bhs_decompose(values: dict[str, AbelianGroupExpr], i: int) -> AbelianGroupExpr:
    """Bass-Heller-Swan splitting for G x Z in reduced degree i (0 or 1).

    i=1: Wh(G x Z) = Wh(G) (+) K0~(Z[G]) (+) 2 NK_1(Z[G]);
    i=0: K0~(Z[G x Z]) = K0~(Z[G]) (+) K_-1(Z[G]) (+) 2 NK_0(Z[G]).
    """
    if i not in _BHS_INPUTS:
        raise ValueError(f"degree must be 0 or 1, got {i}")
    keys = _BHS_INPUTS[i]
    missing = [k for k in keys if k not in values]
    if missing:
        raise KeyError(f"missing summand values {missing} for degree {i}")
    a, b, nk = (values[k] for k in keys)
    return a + b + nk.times(2)
