"""Rule-based enumeration of the finite and virtually cyclic subgroup classes.

The known classification of subgroups of sphere braid groups is encoded as
congruence/divisor predicates; descriptors re-validate their own constraint
and lists are emitted in a fixed sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois import divisors


def _dicyclic_name(m: int) -> str:
    # dicyclic of order 4m; the power-of-two members are the quaternion groups
    if m >= 2 and m & (m - 1) == 0:
        return f"Q{4 * m}"
    return f"Dic_{4 * m}"


@dataclass(frozen=True)
class SubgroupDescriptor:
    """One isomorphism class of subgroups, finite or virtually cyclic."""

    kind: str  # cyclic | dicyclic | tstar | ostar | istar | type_I | type_II
    m: int | None = None                    # Z_m, or Dic_{4m}
    finite_part: str | None = None          # type I: torsion subgroup name
    action_order: int | None = None         # type I: order of the Z-action
    factors: tuple[str, str] | None = None  # type II
    core: str | None = None                 # type II
    maximal: bool | None = None
    notes: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "cyclic":
            return f"Z_{self.m}"
        if self.kind == "dicyclic":
            assert self.m is not None
            return _dicyclic_name(self.m)
        if self.kind == "tstar":
            return "T*"
        if self.kind == "ostar":
            return "O*"
        if self.kind == "istar":
            return "I*"
        if self.kind == "type_I":
            if self.finite_part in (None, "Z_1"):
                return "Z"
            if self.action_order == 1:
                return f"{self.finite_part} x Z"
            return f"{self.finite_part} x|_{self.action_order} Z"
        assert self.factors is not None and self.core is not None
        return f"{self.factors[0]} *_{{{self.core}}} {self.factors[1]}"

    @property
    def order(self) -> int | None:
        """Group order for the finite kinds, None for the infinite ones."""
        if self.kind == "cyclic":
            return self.m
        if self.kind == "dicyclic":
            assert self.m is not None
            return 4 * self.m
        return {"tstar": 24, "ostar": 48, "istar": 120}.get(self.kind)

    def sort_key(self):
        rank = {
            "cyclic": 0, "dicyclic": 1, "tstar": 2, "ostar": 3, "istar": 4,
            "type_I": 5, "type_II": 6,
        }[self.kind]
        return (
            rank,
            self.m or 0,
            self.finite_part or "",
            self.action_order or 0,
            self.factors or (),
            self.core or "",
        )

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "name": self.name}
        if self.m is not None:
            out["m"] = self.m
        if self.order is not None:
            out["order"] = self.order
        if self.finite_part is not None:
            out["finite_part"] = self.finite_part
        if self.action_order is not None:
            out["action_order"] = self.action_order
        if self.factors is not None:
            out["factors"] = list(self.factors)
            out["core"] = self.core
        if self.maximal is not None:
            out["maximal"] = self.maximal
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _cyclic(m: int, **kw) -> SubgroupDescriptor:
    return SubgroupDescriptor(kind="cyclic", m=m, **kw)


def _dicyclic(m: int, **kw) -> SubgroupDescriptor:
    return SubgroupDescriptor(kind="dicyclic", m=m, **kw)


def _type_i(finite_part: str, action_order: int) -> SubgroupDescriptor:
    return SubgroupDescriptor(
        kind="type_I", finite_part=finite_part, action_order=action_order
    )


def _type_ii(f1: str, f2: str, core: str) -> SubgroupDescriptor:
    return SubgroupDescriptor(kind="type_II", factors=(f1, f2), core=core)


def maximal_finite_subgroups(n: int) -> list[SubgroupDescriptor]:
    """Maximal finite subgroup classes of the n-strand sphere braid group.

    For n <= 3 the group itself is finite (trivial, Z_2, Dic_12).
    """
    if n < 1:
        raise ValueError(f"strand count must be >= 1, got {n}")
    if n == 1:
        return [_cyclic(1, maximal=True)]
    if n == 2:
        return [_cyclic(2, maximal=True)]
    if n == 3:
        return [_dicyclic(3, maximal=True)]
    notes = ("single conjugacy class",) if n == 4 else ()
    out: list[SubgroupDescriptor] = []
    if n >= 5:
        out.append(_cyclic(2 * (n - 1), maximal=True))
    out.append(_dicyclic(n, maximal=True, notes=notes))
    if n == 5 or n >= 7:
        out.append(_dicyclic(n - 2, maximal=True))
    if n % 6 == 4:
        out.append(SubgroupDescriptor(kind="tstar", maximal=True, notes=notes))
    if n % 6 in (0, 2):
        out.append(SubgroupDescriptor(kind="ostar", maximal=True))
    if n % 30 in (0, 2, 12, 20):
        out.append(SubgroupDescriptor(kind="istar", maximal=True))
    return sorted(out, key=SubgroupDescriptor.sort_key)


def virtually_cyclic_classes_odd(n: int) -> list[SubgroupDescriptor]:
    """Isomorphism classes of virtually cyclic subgroups for odd n >= 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"classification requires odd n >= 3, got {n}")
    found: set[SubgroupDescriptor] = set()

    for m in divisors(n) + divisors(n - 2):
        if m >= 3:
            found.add(_dicyclic(m))
    for q in (2 * n, 2 * (n - 1), 2 * (n - 2)):
        for m in divisors(q):
            found.add(_cyclic(m))

    if n >= 5:
        for i in (0, 2):
            target = 2 * (n - i)
            for m in divisors(target):
                if m == target or m == n - i:
                    continue
                found.add(_type_i(f"Z_{m}", 1))
                if m >= 3:
                    found.add(_type_i(f"Z_{m}", 2))
        for m in divisors(2 * (n - 1)):
            if m != 2 * (n - 1):
                found.add(_type_i(f"Z_{m}", 1))
        for i in (0, 2):
            for m in divisors(n - i):
                if m >= 3 and m != n - i:
                    found.add(_type_i(_dicyclic_name(m), 1))
        for q in divisors((n - 1) // 2):
            found.add(_type_ii(f"Z_{4 * q}", f"Z_{4 * q}", f"Z_{2 * q}"))
        for i in (0, 2):
            for q in divisors(n - i):
                if 2 <= q < n - i:
                    found.add(_type_ii(_dicyclic_name(q), _dicyclic_name(q), f"Z_{2 * q}"))

    return sorted(found, key=SubgroupDescriptor.sort_key)


_INFINITELY_MANY = "infinitely many conjugacy classes of maximal representatives"
_BOTH_KINDS = "maximal and non-maximal realisations both occur"


def vc_classes_b4() -> list[SubgroupDescriptor]:
    """Isomorphism classes of infinite virtually cyclic subgroups for n = 4."""
    type_i = [
        _type_i("Z_1", 1),
        _type_i("Z_2", 1),
        _type_i("Z_4", 1),
        _type_i("Z_4", 2),
        _type_i("Q8", 1),
        _type_i("Q8", 2),
        _type_i("Q8", 3),
    ]
    type_ii = [
        _type_ii("Z_4", "Z_4", "Z_2"),
        _type_ii("Z_8", "Z_8", "Z_4"),
        _type_ii("Z_8", "Q8", "Z_4"),
        _type_ii("Q8", "Q8", "Z_4"),
        SubgroupDescriptor(
            kind="type_II", factors=("Q16", "Q16"), core="Q8",
            notes=("two abstract isomorphism classes",),
        ),
    ]
    return sorted(type_i + type_ii, key=SubgroupDescriptor.sort_key)


def maximal_vc_classes_b4() -> list[SubgroupDescriptor]:
    """Maximal virtually cyclic classes for n = 4, with realisation flags."""
    out = [
        SubgroupDescriptor(kind="tstar", maximal=True,
                           notes=("the only finite maximal class",)),
        _dicyclic(4, maximal=False,
                  notes=("not maximal: it is a factor of Q16 *_{Q8} Q16",)),
    ]
    for j in (1, 2, 3):
        out.append(SubgroupDescriptor(
            kind="type_I", finite_part="Q8", action_order=j, maximal=True,
            notes=(_BOTH_KINDS, _INFINITELY_MANY),
        ))
    out.append(SubgroupDescriptor(
        kind="type_II", factors=("Q16", "Q16"), core="Q8", maximal=True,
        notes=("two abstract isomorphism classes", _BOTH_KINDS, _INFINITELY_MANY),
    ))
    return sorted(out, key=SubgroupDescriptor.sort_key)
