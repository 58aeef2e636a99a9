"""The four-strand sphere braid group as an amalgam Q16 *_{Q8} T*.

Builds the amalgam with the braid generators named inside it, then verifies
the braid presentation, the conjugation tables, the quotient maps rho (to
Z3 * Z2), psi (permutation of the three order-4 core subgroups) and pi (the
abelianisation onto Z/6), the two Q16 *_{Q8} Q16 amalgams, and the
Reidemeister-Schreier bases of the two finite-index kernels.  Every claim is
checked by normal-form equality and reported as pass/fail, never assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .amalgam import (
    AmalgamElement,
    AmalgamError,
    AmalgamSpec,
    conjugate_subgroup,
    has_finite_order,
    invert,
    multiply,
    power,
    reduce_word,
)
from .groups import (
    BINARY_TETRAHEDRAL,
    CUSTOM,
    FamilyTag,
    FiniteGroup,
    generalized_quaternion,
)

# -- quaternion arithmetic ----------------------------------------------------

QUATERNION_NAMES = {
    (1, 0, 0, 0): "1", (-1, 0, 0, 0): "-1",
    (0, 1, 0, 0): "i", (0, -1, 0, 0): "-i",
    (0, 0, 1, 0): "j", (0, 0, -1, 0): "-j",
    (0, 0, 0, 1): "k", (0, 0, 0, -1): "-k",
}


def _qmul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _hmul(x, y):
    """Product of Hurwitz units stored with doubled coordinates."""
    a, b, c, d = _qmul(x, y)
    return (a // 2, b // 2, c // 2, d // 2)


def quaternion_core() -> FiniteGroup:
    """Q8 as the eight unit quaternions; ids are coordinate 4-tuples."""
    return FiniteGroup(
        name="Q8",
        family=FamilyTag(CUSTOM),
        elements=QUATERNION_NAMES,
        identity=(1, 0, 0, 0),
        generators=((0, 1, 0, 0), (0, 0, 1, 0)),
        mul=_qmul,
        inv=lambda q: (q[0], -q[1], -q[2], -q[3]),
        order_of=lambda q: 1 if q == (1, 0, 0, 0) else (2 if q == (-1, 0, 0, 0) else 4),
        exponent=4,
    )


def _hurwitz_tstar() -> FiniteGroup:
    """T* as the 24 Hurwitz unit quaternions (doubled integer coordinates)."""
    i2, j2 = (0, 2, 0, 0), (0, 0, 2, 0)
    r = (-1, -1, -1, -1)  # -(1+i+j+k)/2, of order 3; conjugation cycles i->j->k
    return FiniteGroup.from_closure(
        name="T*",
        generators=(i2, j2, r),
        mul=_hmul,
        identity=(2, 0, 0, 0),
        inv=lambda q: (q[0], -q[1], -q[2], -q[3]),
        family=FamilyTag(BINARY_TETRAHEDRAL),
        expect_order=24,
    )


def _hom_from_generators(
    src: FiniteGroup, dst: FiniteGroup, gen_map: dict
) -> dict:
    """Extend generator images to a homomorphism; fails on inconsistency."""
    mapping = {src.identity: dst.identity}
    frontier = [src.identity]
    while frontier:
        x = frontier.pop()
        for g, img in gen_map.items():
            y = src.mul(x, g)
            iy = dst.mul(mapping[x], img)
            if y in mapping:
                if mapping[y] != iy:
                    raise AmalgamError("generator images do not define a homomorphism")
            else:
                mapping[y] = iy
                frontier.append(y)
    if len(mapping) != src.order:
        raise AmalgamError("generator map does not cover the source group")
    return mapping


I_UNIT = (0, 1, 0, 0)
J_UNIT = (0, 0, 1, 0)
K_UNIT = (0, 0, 0, 1)
MINUS_ONE = (-1, 0, 0, 0)

R_REP = (-1, -1, -1, -1)
R2_REP = (-1, 1, 1, 1)


def build_b4_spec() -> AmalgamSpec:
    """Q16 *_{Q8} T* with the transversals {1, u} and {1, r, r^2}."""
    core = quaternion_core()
    q16 = generalized_quaternion(4)
    tstar = _hurwitz_tstar()
    embed1 = _hom_from_generators(core, q16, {I_UNIT: (2, 0), J_UNIT: (0, 1)})
    embed2 = {q: tuple(2 * c for c in q) for q in core.elements}
    return AmalgamSpec(
        name="B4(S2)",
        g1=q16,
        g2=tstar,
        core=core,
        embed1=embed1,
        embed2=embed2,
        transversal1=((0, 0), (1, 0)),
        transversal2=((2, 0, 0, 0), R_REP, R2_REP),
        letter_names={(1, (1, 0)): "u", (2, R_REP): "r", (2, R2_REP): "r2"},
        core_names=QUATERNION_NAMES,
    )


@dataclass(frozen=True, eq=False)
class B4Model:
    """The amalgam together with the named braid elements and core subgroups."""

    spec: AmalgamSpec
    named: dict[str, AmalgamElement]
    q_core: tuple  # the eight core ids (the normal Q8)
    q_prime: tuple  # the other Q8 conjugacy class, inside the Q16 factor
    h_subgroups: tuple  # H1 = <delta4>, H2 = <alpha0^2>, H3 = <alpha0^2 delta4>

    def __getitem__(self, name: str) -> AmalgamElement:
        return self.named[name]


def _element_order(a: AmalgamElement, cap: int = 64) -> int | None:
    if a.is_identity:
        return 1
    x = a
    for n in range(1, cap + 1):
        if x.is_identity:
            return n
        x = multiply(x, a)
    return None


def build_b4() -> B4Model:
    """Construct the model and run the order/relation self-checks."""
    spec = build_b4_spec()
    u = spec.from_factor(1, (1, 0))
    r = spec.from_factor(2, R_REP)
    ft = spec.from_core(MINUS_ONE)
    alpha0 = invert(u)
    delta4 = spec.from_core(J_UNIT)
    alpha1 = multiply(ft, invert(r))
    sigma3 = multiply(invert(alpha0), alpha1)
    sigma2 = multiply(multiply(invert(alpha0), sigma3), alpha0)
    sigma1 = multiply(multiply(invert(alpha0), sigma2), alpha0)
    alpha0_sq = multiply(alpha0, alpha0)
    x = multiply(multiply(alpha0_sq, delta4), power(sigma1, 2))
    y = multiply(delta4, power(sigma2, 2))
    z = multiply(power(sigma2, 7), sigma1)

    named = {
        "alpha0": alpha0,
        "alpha1": alpha1,
        "delta4": delta4,
        "ft": ft,
        "sigma1": sigma1,
        "sigma2": sigma2,
        "sigma3": sigma3,
        "x": x,
        "y": y,
        "z": z,
    }

    # self-checks: orders and the defining identities of the named elements
    if _element_order(alpha0) != 8:
        raise AmalgamError("alpha0 does not have order 8")
    if _element_order(alpha1) != 6:
        raise AmalgamError("alpha1 does not have order 6")
    if _element_order(delta4) != 4 or _element_order(ft) != 2:
        raise AmalgamError("delta4/full twist have wrong orders")
    if multiply(multiply(delta4, alpha0), invert(delta4)) != invert(alpha0):
        raise AmalgamError("half twist does not invert alpha0")
    if power(alpha0, 4) != ft:
        raise AmalgamError("alpha0^4 is not the full twist")
    if multiply(alpha0_sq.inverse(), delta4) != multiply(sigma1, invert(sigma3)):
        raise AmalgamError("alpha0^-2 delta4 != sigma1 sigma3^-1")

    q_prime = _subgroup_closure(spec, [alpha0_sq, multiply(alpha0, delta4)])
    h1 = frozenset(((1, 0, 0, 0), MINUS_ONE, J_UNIT, (0, 0, -1, 0)))
    h2 = frozenset(((1, 0, 0, 0), MINUS_ONE, I_UNIT, (0, -1, 0, 0)))
    h3 = frozenset(((1, 0, 0, 0), MINUS_ONE, K_UNIT, (0, 0, 0, -1)))
    return B4Model(
        spec=spec,
        named=named,
        q_core=tuple(sorted(spec.core.elements)),
        q_prime=tuple(q_prime),
        h_subgroups=(h1, h2, h3),
    )


def _subgroup_closure(
    spec: AmalgamSpec, gens: Sequence[AmalgamElement]
) -> list[AmalgamElement]:
    elems = {spec.identity()}
    frontier = [spec.identity()]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = multiply(a, g)
            if b not in elems:
                elems.add(b)
                frontier.append(b)
    return sorted(elems, key=lambda e: (e.letters, e.core))


# -- the quotient Z3 * Z2 -----------------------------------------------------

_A_INV = {"a": "a2", "a2": "a", "b": "b"}


@dataclass(frozen=True)
class FreeProductWord:
    """Reduced word in Z3 * Z2 = <a, b | a^3 = b^2 = 1> over tokens a, a2, b."""

    letters: tuple[str, ...] = ()

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "FreeProductWord":
        stack: list[str] = []
        for tok in tokens:
            if tok not in ("a", "a2", "b"):
                raise ValueError(f"bad token {tok!r}")
            if stack and (stack[-1] == "b") == (tok == "b"):
                if tok == "b":
                    stack.pop()
                else:
                    exp = (1 if stack[-1] == "a" else 2) + (1 if tok == "a" else 2)
                    stack.pop()
                    if exp % 3:
                        stack.append("a" if exp % 3 == 1 else "a2")
            else:
                stack.append(tok)
        return cls(tuple(stack))

    def __mul__(self, other: "FreeProductWord") -> "FreeProductWord":
        return FreeProductWord.from_tokens(self.letters + other.letters)

    def inverse(self) -> "FreeProductWord":
        return FreeProductWord.from_tokens(_A_INV[t] for t in reversed(self.letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return "e" if not self.letters else "".join(
            "a^2" if t == "a2" else t for t in self.letters
        )


def rho(model: B4Model, g: AmalgamElement) -> FreeProductWord:
    """Quotient by the core Q8: coset letters map u -> b, r^2 -> a, r -> a^2.

    The convention makes a the image of alpha1 and b the image of alpha0.
    """
    token_of = {(1, (1, 0)): "b", (2, R2_REP): "a", (2, R_REP): "a2"}
    return FreeProductWord.from_tokens(token_of[letter] for letter in g.letters)


def pi_tilde(word: FreeProductWord) -> int:
    """Abelianisation of Z3 * Z2 onto Z/6: a -> 4, b -> 3."""
    total = 0
    for t in word.letters:
        total += {"a": 4, "a2": 8, "b": 3}[t]
    return total % 6


def pi(model: B4Model, g: AmalgamElement) -> int:
    """Abelianisation of the braid group onto Z/6 (factors through rho)."""
    return pi_tilde(rho(model, g))


def psi(model: B4Model, g: AmalgamElement) -> tuple[int, int, int]:
    """Permutation of the order-4 core subgroups H1, H2, H3 under conjugation."""
    images = []
    for h in model.h_subgroups:
        conj = conjugate_subgroup(g, h)
        images.append(model.h_subgroups.index(conj) + 1)
    result = tuple(images)
    if sorted(result) != [1, 2, 3]:
        raise AmalgamError(f"conjugation does not permute the H subgroups: {result}")
    return result  # type: ignore[return-value]


def perm_cycles(perm: tuple[int, int, int]) -> str:
    """Cycle notation for a permutation of {1, 2, 3} given by its image tuple."""
    seen, cycles = set(), []
    for start in (1, 2, 3):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt - 1]
        if len(cycle) > 1:
            cycles.append("(" + ",".join(map(str, cycle)) + ")")
    return "".join(cycles) if cycles else "id"


# -- check harness ------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    check_id: str
    statement: str
    status: str  # "pass" | "fail"
    witness_normal_form: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "statement": self.statement,
            "status": self.status,
            "witness_normal_form": self.witness_normal_form,
        }


def _eq(cid: str, statement: str, lhs: AmalgamElement, rhs: AmalgamElement) -> CheckResult:
    fmt = lhs.spec.format_element
    if lhs == rhs:
        return CheckResult(cid, statement, "pass", fmt(lhs))
    return CheckResult(cid, statement, "fail", f"lhs={fmt(lhs)} rhs={fmt(rhs)}")


def _cond(cid: str, statement: str, ok: bool, witness: str = "") -> CheckResult:
    return CheckResult(cid, statement, "pass" if ok else "fail", witness)


def _conj(a: AmalgamElement, g: AmalgamElement) -> AmalgamElement:
    return multiply(multiply(a, g), invert(a))


def verify_braid_presentation(model: B4Model) -> list[CheckResult]:
    s1, s2, s3 = model["sigma1"], model["sigma2"], model["sigma3"]
    ft = model["ft"]
    ident = model.spec.identity()
    word = multiply(multiply(multiply(multiply(s1, s2), power(s3, 2)), s2), s1)
    checks = [
        _eq("braid.commute_13", "sigma1 sigma3 = sigma3 sigma1",
            multiply(s1, s3), multiply(s3, s1)),
        _eq("braid.braid_12", "sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2",
            multiply(multiply(s1, s2), s1), multiply(multiply(s2, s1), s2)),
        _eq("braid.braid_23", "sigma2 sigma3 sigma2 = sigma3 sigma2 sigma3",
            multiply(multiply(s2, s3), s2), multiply(multiply(s3, s2), s3)),
        _eq("braid.surface", "sigma1 sigma2 sigma3^2 sigma2 sigma1 = 1", word, ident),
        _eq("braid.fulltwist_121", "(sigma1 sigma2 sigma1)^2 = full twist",
            power(multiply(multiply(s1, s2), s1), 2), ft),
        _eq("braid.fulltwist_12", "(sigma1 sigma2)^3 = full twist",
            power(multiply(s1, s2), 3), ft),
        _eq("braid.fulltwist_21", "(sigma2 sigma1)^3 = full twist",
            power(multiply(s2, s1), 3), ft),
        _eq("braid.fulltwist_13", "(sigma1 sigma3^-1)^2 = full twist",
            power(multiply(s1, invert(s3)), 2), ft),
    ]
    return checks


def verify_action_tables(model: B4Model) -> list[CheckResult]:
    s1, s2, s3 = model["sigma1"], model["sigma2"], model["sigma3"]
    a0, d4, ft = model["alpha0"], model["delta4"], model["ft"]
    x, y = model["x"], model["y"]
    a0sq = power(a0, 2)
    a0sq_d4 = multiply(a0sq, d4)
    checks = [
        _eq("actions.alpha0_on_sigma1", "alpha0 sigma1 alpha0^-1 = sigma2",
            _conj(a0, s1), s2),
        _eq("actions.alpha0_on_sigma2", "alpha0 sigma2 alpha0^-1 = sigma3",
            _conj(a0, s2), s3),
        _eq("actions.alpha0sq_on_sigma3", "alpha0^2 sigma3 alpha0^-2 = sigma1",
            _conj(a0sq, s3), s1),
        _eq("actions.halftwist_on_sigma1", "delta4 sigma1 delta4^-1 = sigma3",
            _conj(d4, s1), s3),
        _eq("actions.halftwist_on_sigma2", "delta4 sigma2 delta4^-1 = sigma2",
            _conj(d4, s2), s2),
        _eq("actions.halftwist_on_sigma3", "delta4 sigma3 delta4^-1 = sigma1",
            _conj(d4, s3), s1),
        _eq("actions.halftwist_inverts_alpha0", "delta4 alpha0 delta4^-1 = alpha0^-1",
            _conj(d4, a0), invert(a0)),
        _eq("actions.alpha0_fourth_fulltwist", "alpha0^4 = full twist",
            power(a0, 4), ft),
        _eq("actions.s1s3inv", "alpha0^-2 delta4 = sigma1 sigma3^-1",
            multiply(invert(a0sq), d4), multiply(s1, invert(s3))),
        _eq("actions.sigma1_on_alpha0sq", "sigma1 alpha0^2 sigma1^-1 = delta4^-1",
            _conj(s1, a0sq), invert(d4)),
        _eq("actions.sigma1_on_halftwist_inv", "sigma1 delta4^-1 sigma1^-1 = alpha0^-2",
            _conj(s1, invert(d4)), invert(a0sq)),
        _eq("actions.sigma1_on_halftwist", "sigma1 delta4 sigma1^-1 = alpha0^2",
            _conj(s1, d4), a0sq),
        _eq("actions.sigma1_fixes_a0sq_d4", "sigma1 (alpha0^2 delta4) sigma1^-1 = alpha0^2 delta4",
            _conj(s1, a0sq_d4), a0sq_d4),
        _eq("actions.sigma2_on_alpha0sq", "sigma2 alpha0^2 sigma2^-1 = (alpha0^2 delta4)^-1",
            _conj(s2, a0sq), invert(a0sq_d4)),
        _eq("actions.sigma2_fixes_halftwist", "sigma2 delta4 sigma2^-1 = delta4",
            _conj(s2, d4), d4),
        _eq("actions.sigma2_on_a0sq_d4", "sigma2 (alpha0^2 delta4) sigma2^-1 = alpha0^2",
            _conj(s2, a0sq_d4), a0sq),
    ]
    taus = {
        "sigma1": s1,
        "sigma2": s2,
        "s121": multiply(multiply(s1, s2), s1),
        "s12": multiply(s1, s2),
        "s21": multiply(s2, s1),
    }
    x_targets = {
        "sigma1": x,
        "sigma2": multiply(ft, multiply(invert(x), invert(y))),
        "s121": multiply(ft, y),
        "s12": multiply(ft, y),
        "s21": multiply(ft, multiply(invert(x), invert(y))),
    }
    y_targets = {
        "sigma1": multiply(invert(y), invert(x)),
        "sigma2": y,
        "s121": multiply(ft, x),
        "s12": multiply(invert(y), invert(x)),
        "s21": multiply(ft, x),
    }
    for name, tau in taus.items():
        checks.append(
            _eq(f"actions.tau_{name}_on_x", f"{name} x {name}^-1 matches the table",
                _conj(tau, x), x_targets[name])
        )
        checks.append(
            _eq(f"actions.tau_{name}_on_y", f"{name} y {name}^-1 matches the table",
                _conj(tau, y), y_targets[name])
        )
    return checks


def verify_kernel_facts(model: B4Model, seed: int = 0xB4) -> list[CheckResult]:
    spec = model.spec
    s1, s2, s3 = model["sigma1"], model["sigma2"], model["sigma3"]
    x, y = model["x"], model["y"]
    checks: list[CheckResult] = []

    checks.append(_cond("kernel.psi_sigma1", "psi(sigma1) = (1,2)",
                        psi(model, s1) == (2, 1, 3), perm_cycles(psi(model, s1))))
    checks.append(_cond("kernel.psi_sigma2", "psi(sigma2) = (2,3)",
                        psi(model, s2) == (1, 3, 2), perm_cycles(psi(model, s2))))
    checks.append(_cond("kernel.psi_alpha0", "psi(alpha0) = (1,3)",
                        psi(model, model["alpha0"]) == (3, 2, 1),
                        perm_cycles(psi(model, model["alpha0"]))))
    checks.append(_cond("kernel.psi_alpha1", "psi(alpha1) cycles H1 -> H2 -> H3",
                        psi(model, model["alpha1"]) == (2, 3, 1),
                        perm_cycles(psi(model, model["alpha1"]))))
    checks.append(_cond(
        "kernel.psi_trivial_on_core", "psi(q) = id for every core element q",
        all(psi(model, spec.from_core(q)) == (1, 2, 3) for q in model.q_core),
    ))

    rng = random.Random(seed)
    pool = [s1, s2, s3, model["alpha0"], model["alpha1"], model["delta4"]]
    pool += [invert(g) for g in pool]

    def random_element() -> AmalgamElement:
        e = spec.identity()
        for _ in range(rng.randint(1, 8)):
            e = multiply(e, rng.choice(pool))
        return e

    hom_ok = True
    for _ in range(500):
        g, h = random_element(), random_element()
        pg, ph = psi(model, g), psi(model, h)
        composed = tuple(pg[ph[i] - 1] for i in range(3))
        if psi(model, multiply(g, h)) != composed:
            hom_ok = False
            break
    checks.append(_cond("kernel.psi_homomorphism_sample",
                        "psi(gh) = psi(g) psi(h) on 500 random pairs", hom_ok))

    checks.append(_cond(
        "kernel.rho_kills_core", "rho(q) = e for every core element q",
        all(rho(model, spec.from_core(q)).is_identity for q in model.q_core),
    ))
    checks.append(_cond("kernel.rho_sigma1", "rho(sigma1) = ba",
                        rho(model, s1) == FreeProductWord(("b", "a")),
                        str(rho(model, s1))))
    checks.append(_cond("kernel.rho_sigma1_sq", "rho(sigma1^2) = (ba)^2",
                        rho(model, power(s1, 2)) == FreeProductWord(("b", "a", "b", "a")),
                        str(rho(model, power(s1, 2)))))
    checks.append(_cond("kernel.rho_sigma2_sq", "rho(sigma2^2) = (ab)^2",
                        rho(model, power(s2, 2)) == FreeProductWord(("a", "b", "a", "b")),
                        str(rho(model, power(s2, 2)))))

    checks.append(_cond("kernel.pi_alpha0", "pi(alpha0) = 3",
                        pi(model, model["alpha0"]) == 3))
    checks.append(_cond("kernel.pi_halftwist", "pi(delta4) = 0",
                        pi(model, model["delta4"]) == 0))
    checks.append(_cond("kernel.pi_sigma1", "pi(sigma1) = 1", pi(model, s1) == 1))
    checks.append(_cond("kernel.pi_x_y_cubed", "pi(x y^3) lies outside {0, 3}",
                        pi(model, multiply(x, power(y, 3))) not in (0, 3),
                        str(pi(model, multiply(x, power(y, 3))))))

    sigma_pool = [(s1, 1), (s2, 1), (s3, 1), (invert(s1), -1), (invert(s2), -1), (invert(s3), -1)]
    oracle_ok = True
    for _ in range(500):
        e = spec.identity()
        total = 0
        for _ in range(rng.randint(1, 10)):
            g, sign = rng.choice(sigma_pool)
            e = multiply(e, g)
            total += sign
        if pi(model, e) != total % 6:
            oracle_ok = False
            break
    checks.append(_cond("kernel.pi_matches_exponent_sum",
                        "pi equals the braid exponent sum mod 6 on 500 random words",
                        oracle_ok))

    commute_ok = all(
        multiply(w, spec.from_core(q)) == multiply(spec.from_core(q), w)
        for w in (x, y)
        for q in model.q_core
    )
    checks.append(_cond("kernel.xy_commute_with_core",
                        "x and y commute with every core element", commute_ok))

    gens = {"x": x, "X": invert(x), "y": y, "Y": invert(y)}
    inverse_name = {"x": "X", "X": "x", "y": "Y", "Y": "y"}
    seen = {spec.identity(): ""}
    frontier = [("", spec.identity())]
    free_ok = True
    for _ in range(6):
        nxt = []
        for word, el in frontier:
            for nm, g in gens.items():
                if word and inverse_name[word[-1]] == nm:
                    continue
                el2 = multiply(el, g)
                if el2 in seen:
                    free_ok = False
                else:
                    seen[el2] = word + nm
                    nxt.append((word + nm, el2))
        frontier = nxt
    checks.append(_cond("kernel.xy_free_words_distinct",
                        "reduced words in x, y of length <= 6 have distinct normal forms",
                        free_ok, f"{len(seen)} words"))

    normal_ok = True
    for side, gen in ((1, (1, 0)), (2, R_REP)):
        g = spec.from_factor(side, gen)
        for q in model.q_core:
            if _conj(g, spec.from_core(q)).letters:
                normal_ok = False
    checks.append(_cond("kernel.core_normal",
                        "conjugates of the core by the factor generators stay in the core",
                        normal_ok))

    checks.extend(verify_z_infinite(model))
    return checks


def verify_z_infinite(model: B4Model) -> list[CheckResult]:
    """z = sigma2^7 sigma1: order-3 action on the core, itself of infinite order."""
    spec = model.spec
    z = model["z"]
    a0sq = power(model["alpha0"], 2)
    d4 = model["delta4"]
    a0sq_d4 = multiply(a0sq, d4)
    checks = [
        _cond("kernel.z_psi_three_cycle", "psi(z) is a 3-cycle",
              sorted(psi(model, z)) == [1, 2, 3] and psi(model, z) != (1, 2, 3)
              and perm_cycles(psi(model, z)).count(",") == 2,
              perm_cycles(psi(model, z))),
        _eq("kernel.z_cycle_1", "z alpha0^2 z^-1 = delta4^-1",
            _conj(z, a0sq), invert(d4)),
        _eq("kernel.z_cycle_2", "z delta4^-1 z^-1 = (alpha0^2 delta4)^-1",
            _conj(z, invert(d4)), invert(a0sq_d4)),
        _eq("kernel.z_cycle_3", "z (alpha0^2 delta4)^-1 z^-1 = alpha0^2",
            _conj(z, invert(a0sq_d4)), a0sq),
        _cond("kernel.z_infinite_order", "z has infinite order",
              not has_finite_order(z), spec.format_element(z)),
        _cond("kernel.z_cube_nontrivial", "z^3 is not the identity",
              not power(z, 3).is_identity, spec.format_element(power(z, 3))),
        _cond("kernel.z_pi", "pi(z) = 2", pi(model, z) == 2, str(pi(model, z))),
    ]
    return checks


# -- the two Q16 *_{Q8} Q16 amalgams ------------------------------------------

def build_gamma_specs() -> tuple[AmalgamSpec, AmalgamSpec]:
    """The two isomorphism classes of Q16 *_{Q8} Q16, with transversals {1,a} and {1,x}."""
    core = quaternion_core()
    g1 = generalized_quaternion(4)
    g2 = generalized_quaternion(4)
    embed_a = _hom_from_generators(core, g1, {I_UNIT: (2, 0), J_UNIT: (0, 1)})
    letter_names = {(1, (1, 0)): "a", (2, (1, 0)): "x"}
    spec1 = AmalgamSpec(
        name="Gamma1",
        g1=g1,
        g2=g2,
        core=core,
        embed1=embed_a,
        embed2=_hom_from_generators(core, g2, {I_UNIT: (2, 0), J_UNIT: (0, 1)}),
        transversal1=((0, 0), (1, 0)),
        transversal2=((0, 0), (1, 0)),
        letter_names=letter_names,
        core_names=QUATERNION_NAMES,
    )
    spec2 = AmalgamSpec(
        name="Gamma2",
        g1=g1,
        g2=g2,
        core=core,
        embed1=embed_a,
        embed2=_hom_from_generators(core, g2, {J_UNIT: (2, 0), K_UNIT: (0, 1)}),
        transversal1=((0, 0), (1, 0)),
        transversal2=((0, 0), (1, 0)),
        letter_names=letter_names,
        core_names=QUATERNION_NAMES,
    )
    return spec1, spec2


def verify_gamma_identities() -> list[CheckResult]:
    spec1, spec2 = build_gamma_specs()
    checks: list[CheckResult] = []

    # In both presentations a^2 = i, b = j, a^2 b = k as core elements.
    for spec, tag in ((spec1, "g1"), (spec2, "g2")):
        a_inv_x = reduce_word(spec, [(1, (7, 0)), (2, (1, 0))])
        i_el = spec.from_core(I_UNIT)
        j_el = spec.from_core(J_UNIT)
        k_el = spec.from_core(K_UNIT)
        if tag == "g1":
            checks += [
                _eq("gamma.g1_actxa_a2", "a^-1 x fixes a^2", _conj(a_inv_x, i_el), i_el),
                _eq("gamma.g1_actxa_b", "a^-1 x fixes b", _conj(a_inv_x, j_el), j_el),
                _eq("gamma.g1_actxa_a2b", "a^-1 x fixes a^2 b", _conj(a_inv_x, k_el), k_el),
            ]
            x_ainv_x = reduce_word(spec, [(2, (1, 0)), (1, (7, 0)), (2, (1, 0))])
            checks += [
                _eq("gamma.g1_actxax_a2", "x a^-1 x fixes a^2", _conj(x_ainv_x, i_el), i_el),
                _eq("gamma.g1_actxax_b", "x a^-1 x maps b to a^2 b", _conj(x_ainv_x, j_el), k_el),
                _eq("gamma.g1_actxax_a2b", "x a^-1 x maps a^2 b to b^-1",
                    _conj(x_ainv_x, k_el), invert(j_el)),
            ]
            checks.append(_cond("gamma.g1_ax_infinite_order",
                                "a^-1 x has infinite order in Gamma1",
                                not has_finite_order(a_inv_x)))
        else:
            b_inv = invert(j_el)
            a2inv_binv = multiply(invert(i_el), b_inv)
            checks += [
                _eq("gamma.g2_cycle_a2", "a^-1 x maps a^2 to b^-1",
                    _conj(a_inv_x, i_el), b_inv),
                _eq("gamma.g2_cycle_binv", "a^-1 x maps b^-1 to a^-2 b^-1",
                    _conj(a_inv_x, b_inv), a2inv_binv),
                _eq("gamma.g2_cycle_a2inv_binv", "a^-1 x maps a^-2 b^-1 to a^2",
                    _conj(a_inv_x, a2inv_binv), i_el),
            ]
            orbit = {i_el}
            cur = i_el
            for _ in range(6):
                cur = _conj(a_inv_x, cur)
                if cur in orbit:
                    break
                orbit.add(cur)
            checks.append(_cond("gamma.g2_orbit_size_3",
                                "the a^-1 x conjugation orbit of a^2 has size 3",
                                len(orbit) == 3, f"orbit size {len(orbit)}"))
            checks.append(_cond("gamma.g2_ax_infinite_order",
                                "a^-1 x has infinite order in Gamma2",
                                not has_finite_order(a_inv_x)))
    return checks


# -- Reidemeister-Schreier ----------------------------------------------------

@dataclass(frozen=True)
class RSResult:
    index: int
    rank: int
    generators: tuple[FreeProductWord, ...]


def reidemeister_schreier(
    quotient: FiniteGroup,
    a_image,
    b_image,
    transversal: Sequence[FreeProductWord],
) -> RSResult:
    """Schreier generators of the kernel of Z3 * Z2 -> quotient.

    The map must embed both free factors (a_image of order 3, b_image of
    order 2), so the kernel is torsion-free and its rank is certified by the
    Euler characteristic: rank = 1 + index/6.
    """
    if quotient.order_of(a_image) != 3 or quotient.order_of(b_image) != 2:
        raise ValueError(
            "kernel is not torsion-free: the images of a and b must have orders 3 and 2"
        )
    image = {quotient.identity}
    frontier = [quotient.identity]
    while frontier:
        g = frontier.pop()
        for h in (a_image, b_image):
            y = quotient.mul(g, h)
            if y not in image:
                image.add(y)
                frontier.append(y)
    index = len(image)
    if len(transversal) != index:
        raise ValueError(f"transversal has {len(transversal)} words, index is {index}")

    token_img = {
        "a": a_image,
        "a2": quotient.mul(a_image, a_image),
        "b": b_image,
    }

    def word_image(w: FreeProductWord):
        g = quotient.identity
        for t in w.letters:
            g = quotient.mul(g, token_img[t])
        return g

    rep_of = {}
    for t in transversal:
        img = word_image(t)
        if img in rep_of:
            raise ValueError("transversal words repeat a coset")
        rep_of[img] = t
    if set(rep_of) != image:
        raise ValueError("transversal does not cover the image")

    generators: list[FreeProductWord] = []
    seen: set[tuple[str, ...]] = set()
    for t in transversal:
        for tok in ("a", "b"):
            w = t * FreeProductWord((tok,))
            rep = rep_of[word_image(w)]
            gen = w * rep.inverse()
            if not gen.is_identity and gen.letters not in seen:
                seen.add(gen.letters)
                generators.append(gen)
    if index % 6:
        raise ValueError(f"index {index} is not divisible by 6")
    rank = 1 + index // 6
    return RSResult(index=index, rank=rank, generators=tuple(generators))


def _sym3() -> FiniteGroup:
    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    return FiniteGroup.from_closure(
        name="S3",
        generators=((2, 0, 1), (2, 1, 0)),
        mul=compose,
        identity=(0, 1, 2),
        family=FamilyTag(CUSTOM),
        expect_order=6,
    )


_STANDARD_TRANSVERSAL = tuple(
    FreeProductWord(t) for t in ((), ("a",), ("a2",), ("b",), ("a", "b"), ("a2", "b"))
)


def verify_reidemeister_schreier() -> list[CheckResult]:
    checks: list[CheckResult] = []

    def contains_up_to_inverse(result: RSResult, target: FreeProductWord) -> bool:
        return any(g == target or g == target.inverse() for g in result.generators)

    sym3 = _sym3()
    rs1 = reidemeister_schreier(sym3, (2, 0, 1), (2, 1, 0), _STANDARD_TRANSVERSAL)
    checks.append(_cond("rs.sym3_index", "the permutation quotient has index 6",
                        rs1.index == 6, str(rs1.index)))
    checks.append(_cond("rs.sym3_rank", "Euler characteristic certifies rank 2",
                        rs1.rank == 2, str(rs1.rank)))
    basis1 = (FreeProductWord(("a", "b", "a", "b")), FreeProductWord(("b", "a", "b", "a")))
    checks.append(_cond(
        "rs.sym3_basis", "the Schreier generators contain (ab)^2 and (ba)^2",
        all(contains_up_to_inverse(rs1, w) for w in basis1),
        "; ".join(str(g) for g in rs1.generators),
    ))

    from .groups import build_cyclic

    z6 = build_cyclic(6)
    rs2 = reidemeister_schreier(z6, 4, 3, _STANDARD_TRANSVERSAL)
    checks.append(_cond("rs.abelianized_index", "the abelianised quotient has index 6",
                        rs2.index == 6, str(rs2.index)))
    checks.append(_cond("rs.abelianized_rank", "Euler characteristic certifies rank 2",
                        rs2.rank == 2, str(rs2.rank)))
    # commutator basis, written for a of order 3 and b of order 2
    basis2 = (
        FreeProductWord(("b", "a", "b", "a2")),   # [b, a]
        FreeProductWord(("b", "a2", "b", "a")),   # [b, a^2]
    )
    checks.append(_cond(
        "rs.abelianized_basis",
        "the Schreier generators contain [b,a] and [b,a^2] up to inversion",
        all(contains_up_to_inverse(rs2, w) for w in basis2),
        "; ".join(str(g) for g in rs2.generators),
    ))
    return checks


SUITES = ("braid", "actions", "gamma", "kernel", "rs")


def verify_suite(name: str, model: B4Model | None = None) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES} or 'all'")
    if name in ("braid", "actions", "kernel") and model is None:
        model = build_b4()
    if name == "braid":
        return verify_braid_presentation(model)  # type: ignore[arg-type]
    if name == "actions":
        return verify_action_tables(model)  # type: ignore[arg-type]
    if name == "kernel":
        return verify_kernel_facts(model)  # type: ignore[arg-type]
    if name == "gamma":
        return verify_gamma_identities()
    return verify_reidemeister_schreier()


def verify_all(model: B4Model | None = None) -> dict[str, list[CheckResult]]:
    model = model or build_b4()
    return {name: verify_suite(name, model) for name in SUITES}
