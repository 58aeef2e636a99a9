"""Per-group invariant reports and the assembled n = 4 lower-K report.

Reports serialise to canonical JSON (fixed key order, sorted torsion and
summands), so identical inputs produce byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .galois import FieldDescriptor
from .fconj import r_f
from .groups import (
    FiniteGroup,
    build_binary_polyhedral,
    build_cyclic,
    build_dicyclic,
    dicyclic_parameter,
    generalized_quaternion,
)
from .lowerk import (
    AbelianGroupExpr,
    UnsupportedFamilyError,
    Unknown,
    W_NAME,
    WedderburnComponent,
    Z2_INF,
    k0_tilde_lookup,
    k_minus_one,
    wedderburn_shape,
    whitehead_rank,
)

SCHEMA = "lowk/1"

INVARIANT_ORDER = ("wh", "k0", "kminus1", "rf", "wedderburn")

_DEFINITIONS = {
    Z2_INF: "countable direct sum of copies of Z_2",
    W_NAME: "infinitely generated abelian group of exponent 2 or 4",
    "Nil_0": "countable direct sum of copies of [2 (Z2)^oo (+) 2 W]",
    "Nil_1": "countable direct sum of copies of [2 (Z2)^oo (+) 2 W]",
}


class UnsupportedParameterError(ValueError):
    pass


@dataclass(frozen=True)
class KReport:
    """Invariant values for one group, each summand backed by a rule citation."""

    group: dict
    wh: AbelianGroupExpr | None = None
    k0: AbelianGroupExpr | Unknown | None = None
    kminus1: AbelianGroupExpr | None = None
    rf: dict | None = None
    wedderburn: tuple[WedderburnComponent, ...] | None = None
    nil_terms: dict | None = None
    definitions: dict | None = None
    provenance: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"schema": SCHEMA, "group": self.group}
        if self.wh is not None:
            out["wh"] = self.wh.to_json()
        if self.k0 is not None:
            out["k0"] = "unknown" if isinstance(self.k0, Unknown) else self.k0.to_json()
        if self.kminus1 is not None:
            out["kminus1"] = self.kminus1.to_json()
        if self.rf is not None:
            out["r_F"] = self.rf
        if self.wedderburn is not None:
            out["wedderburn"] = [c.to_json() for c in self.wedderburn]
        if self.nil_terms is not None:
            out["nil"] = self.nil_terms
        if self.definitions is not None:
            out["definitions"] = self.definitions
        out["provenance"] = list(self.provenance)
        return out

    def render_text(self) -> str:
        lines = [f"group: {self.group.get('name', self.group)}"]
        if self.wh is not None:
            lines.append(f"Wh: {self.wh.render()}")
        if self.k0 is not None:
            k0 = "unknown" if isinstance(self.k0, Unknown) else self.k0.render()
            lines.append(f"K0~: {k0}")
        if self.kminus1 is not None:
            lines.append(f"K_-1: {self.kminus1.render()}")
        if self.rf is not None:
            lines.append(f"r_{self.rf['field']}: {self.rf['value']}")
        if self.wedderburn is not None:
            lines.append("Q[G] components: " + ", ".join(c.symbol() for c in self.wedderburn))
        if self.nil_terms is not None:
            for name, term in self.nil_terms.items():
                block = AbelianGroupExpr(
                    free_rank=term["summand"]["rank"],
                    torsion=tuple(term["summand"]["torsion"]),
                    infinite=tuple(
                        (s["name"], s["copies"]) for s in term["summand"]["infinite"]
                    ),
                )
                lines.append(f"{name} = (+)_oo [{block.render()}]")
        for p in self.provenance:
            lines.append(f"  [{p}]")
        return "\n".join(lines)


def _build_group(family: str, m: int | None, k: int | None) -> FiniteGroup:
    try:
        if family == "cyclic":
            if m is None:
                raise UnsupportedParameterError("cyclic groups need --m")
            return build_cyclic(m)
        if family == "dicyclic":
            if m is None:
                raise UnsupportedParameterError("dicyclic groups need --m")
            return build_dicyclic(m)
        if family == "quaternion":
            if k is None:
                raise UnsupportedParameterError("quaternion groups need --k")
            return generalized_quaternion(k)
        if family == "tstar":
            return build_binary_polyhedral("T*")
        if family == "ostar":
            return build_binary_polyhedral("O*")
        if family == "istar":
            return build_binary_polyhedral("I*")
    except ValueError as exc:
        raise UnsupportedParameterError(str(exc)) from exc
    raise UnsupportedParameterError(f"unknown family {family!r}")


def _group_info(group: FiniteGroup) -> dict:
    info = {"name": group.name, "family": group.family.kind, "order": group.order}
    if group.family.param is not None:
        info["param"] = group.family.param
    return info


def _torsion_provenance(group: FiniteGroup) -> str:
    kind = group.family.kind
    if kind == "cyclic":
        return "kminus1 torsion: trivial for abelian groups"
    m = dicyclic_parameter(group)
    if m is not None:
        if m & (m - 1) == 0:
            return "kminus1 torsion: quaternion 2-group rule"
        return f"kminus1 torsion: dicyclic odd-prime rule, m = {m} = {m % 4} mod 4"
    return "kminus1 torsion: binary polyhedral induction/restriction rule"


def group_report(
    family: str,
    *,
    m: int | None = None,
    k: int | None = None,
    invariants: tuple[str, ...] = ("wh", "k0", "kminus1"),
    field_descriptor: FieldDescriptor | None = None,
    max_size: int = 5000,
) -> KReport:
    """Invariant report for one supported group; unknown values stay unknown."""
    for inv in invariants:
        if inv not in INVARIANT_ORDER:
            raise UnsupportedParameterError(
                f"unknown invariant {inv!r}; choose from {INVARIANT_ORDER}"
            )
    group = _build_group(family, m, k)
    wh = k0 = kminus1 = rf = wedderburn = None
    provenance: list[str] = []
    try:
        if "wh" in invariants:
            rank = whitehead_rank(group, max_size=max_size)
            wh = AbelianGroupExpr.free(rank)
            if group.order <= max_size:
                provenance.append(
                    "wh: class census sum of r1(d) - r2(d), cross-checked against "
                    "the family closed form"
                )
            else:
                provenance.append("wh: family closed form")
            provenance.append("wh torsion: SK_1 vanishes for the supported families")
        if "k0" in invariants:
            k0 = k0_tilde_lookup(group)
            if isinstance(k0, Unknown):
                provenance.append("k0: outside the Swan lookup tables -> unknown")
            else:
                provenance.append("k0: Swan lookup table")
        if "kminus1" in invariants:
            kminus1 = k_minus_one(group, max_size=max_size)
            if group.order <= max_size:
                provenance.append(
                    "kminus1 rank: Carter formula 1 - r_Q + sum_p (r_Qp - r_Fp) "
                    "from Witt-Berman counts"
                )
            else:
                provenance.append(
                    "kminus1 rank: dicyclic odd-prime closed form via |<2>| mod m"
                )
            provenance.append(_torsion_provenance(group))
        if "rf" in invariants:
            if field_descriptor is None:
                raise UnsupportedParameterError("the rf invariant needs --field")
            rf = {
                "field": field_descriptor.label,
                "value": r_f(group, field_descriptor, max_size=max_size),
            }
            provenance.append(
                f"r_F: Witt-Berman count of {field_descriptor.label}-conjugacy classes"
            )
        if "wedderburn" in invariants:
            wedderburn = wedderburn_shape(group)
            provenance.append("wedderburn: rational group algebra decomposition table")
    except UnsupportedFamilyError as exc:
        raise UnsupportedParameterError(str(exc)) from exc
    return KReport(
        group=_group_info(group),
        wh=wh,
        k0=k0,
        kminus1=kminus1,
        rf=rf,
        wedderburn=wedderburn,
        provenance=tuple(provenance),
    )


def nil_groups_q8(i: int, twist_order: int) -> AbelianGroupExpr:
    """Nil groups of the order-8 quaternion group ring, twisted or not.

    Trivial twist and the order-3 twist give a countable sum of Z_2; the
    order-2 twist gives the exponent-2-or-4 group W.
    """
    if i not in (0, 1):
        raise ValueError(f"degree must be 0 or 1, got {i}")
    if twist_order not in (1, 2, 3):
        raise ValueError(f"twist order must be 1, 2 or 3, got {twist_order}")
    if twist_order == 2:
        return AbelianGroupExpr.summand(W_NAME)
    return AbelianGroupExpr.summand(Z2_INF)


def b4_lower_k_report(*, max_size: int = 5000) -> KReport:
    """Assembled Whitehead and lower K-groups of the four-strand sphere braid group.

    Finite-group inputs are computed live; the two induction facts (the map
    of reduced K_0 from the core Q8 into the Q16 factor is zero, into the T*
    factor an isomorphism) collapse the Mayer-Vietoris pieces.
    """
    q8 = generalized_quaternion(3)
    q16 = generalized_quaternion(4)
    tstar = build_binary_polyhedral("T*")

    wh_cokernel = AbelianGroupExpr.free(
        whitehead_rank(q16, max_size=max_size)
    ) + AbelianGroupExpr.free(whitehead_rank(tstar, max_size=max_size))
    # K0~(Q8) -> K0~(T*) is an isomorphism, so the K0~ kernel term vanishes
    # and the cokernel keeps only the Q16 copy of Z_2.
    k0_assembled = k0_tilde_lookup(q16)
    assert isinstance(k0_assembled, AbelianGroupExpr)
    kminus1 = k_minus_one(q16, max_size=max_size) + k_minus_one(tstar, max_size=max_size)
    assert k_minus_one(q8, max_size=max_size).is_zero

    nil_block = (
        nil_groups_q8(1, 1).times(2) + nil_groups_q8(1, 2).times(2)
    )
    nil_terms = {
        name: {"copies": "countable", "summand": nil_block.to_json()}
        for name in ("Nil_0", "Nil_1")
    }
    wh = wh_cokernel + AbelianGroupExpr.summand("Nil_1")
    k0 = k0_assembled + AbelianGroupExpr.summand("Nil_0")

    provenance = (
        "wh: cokernel of the Q8 induction into Q16 and T* (Wh(Q8) = 0), plus Nil_1",
        "k0: cokernel of the reduced K_0 induction (zero into Q16, isomorphism "
        "into T*), plus Nil_0",
        "kminus1: cokernel of K_-1 induction; K_-1(Z[Q8]) = 0",
        "nil: one block 2 (Z2)^oo (+) 2 W per maximal infinite virtually cyclic "
        "class, summed over countably many conjugacy classes",
        "nil values: Bass Nil of Q8 and its order-2/order-3 twists",
    )
    return KReport(
        group={"name": "B4(S2)", "family": "amalgam", "order": "infinite"},
        wh=wh,
        k0=k0,
        kminus1=kminus1,
        nil_terms=nil_terms,
        definitions=dict(_DEFINITIONS),
        provenance=provenance,
    )
