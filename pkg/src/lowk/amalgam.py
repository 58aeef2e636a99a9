"""Normal-form arithmetic in an amalgamated free product G1 *_F G2.

Elements are stored as t_1 t_2 ... t_k f: alternating nontrivial left-coset
representatives from the two factors, followed by a core element of F.  Once
an AmalgamSpec fixes the transversals, this form is unique, which makes
equality a tuple comparison and golden tests possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import ElementId, FiniteGroup

Letter = tuple[int, ElementId]  # (side 1|2, transversal representative)
Word = Sequence[tuple[int, ElementId]]  # arbitrary factor elements tagged by side


class AmalgamError(Exception):
    pass


class AmalgamSpec:
    """Two finite factors glued along embeddings of a common finite core.

    `transversal1`/`transversal2` are left-coset representatives (t F), with
    the identity representing F itself.  Compared by identity; specs are
    immutable after validation.
    """

    def __init__(
        self,
        name: str,
        g1: FiniteGroup,
        g2: FiniteGroup,
        core: FiniteGroup,
        embed1: dict[ElementId, ElementId],
        embed2: dict[ElementId, ElementId],
        transversal1: Sequence[ElementId],
        transversal2: Sequence[ElementId],
        letter_names: dict[tuple[int, ElementId], str] | None = None,
        core_names: dict[ElementId, str] | None = None,
    ) -> None:
        self.name = name
        self.factors = (g1, g2)
        self.core = core
        self.embeddings = (embed1, embed2)
        self.transversals = (tuple(transversal1), tuple(transversal2))
        self.letter_names = dict(letter_names or {})
        self.core_names = dict(core_names or {})
        self._validate()
        self._unembed = tuple(
            {img: src for src, img in emb.items()} for emb in self.embeddings
        )
        self._split = (self._split_table(0), self._split_table(1))
        self.core_is_normal = self._core_normal()

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        for side in (0, 1):
            g = self.factors[side]
            emb = self.embeddings[side]
            if set(emb) != set(self.core.elements):
                raise AmalgamError(f"{self.name}: embedding {side + 1} is not total")
            if len(set(emb.values())) != self.core.order:
                raise AmalgamError(f"{self.name}: embedding {side + 1} not injective")
            if emb[self.core.identity] != g.identity:
                raise AmalgamError(f"{self.name}: embedding {side + 1} moves identity")
            for a in self.core.elements:
                for b in self.core.elements:
                    if emb[self.core.mul(a, b)] != g.mul(emb[a], emb[b]):
                        raise AmalgamError(
                            f"{self.name}: embedding {side + 1} is not a homomorphism"
                        )
            trans = self.transversals[side]
            index, rem = divmod(g.order, self.core.order)
            if rem:
                raise AmalgamError(f"{self.name}: core order does not divide factor {side + 1}")
            if len(trans) != index or g.identity not in trans:
                raise AmalgamError(
                    f"{self.name}: transversal {side + 1} must hold {index} coset reps "
                    "including the identity"
                )
            image = set(emb.values())
            for i, t in enumerate(trans):
                for u in trans[i + 1:]:
                    if g.mul(g.inv(t), u) in image:
                        raise AmalgamError(
                            f"{self.name}: transversal {side + 1} repeats a coset"
                        )

    def _split_table(self, side: int) -> dict[ElementId, tuple[ElementId | None, ElementId]]:
        """g -> (t, f) with g = t f, t the coset rep (None when g lies in F)."""
        g = self.factors[side]
        emb = self.embeddings[side]
        unembed = self._unembed[side]
        table: dict[ElementId, tuple[ElementId | None, ElementId]] = {}
        for x in g.elements:
            for t in self.transversals[side]:
                rest = g.mul(g.inv(t), x)
                if rest in unembed:
                    table[x] = (None if t == g.identity else t, unembed[rest])
                    break
            else:
                raise AmalgamError(f"{self.name}: transversal {side + 1} misses {x!r}")
        return table

    def _core_normal(self) -> bool:
        for side in (0, 1):
            g = self.factors[side]
            image = set(self.embeddings[side].values())
            for gen in g.generators:
                for f in image:
                    if g.conj(gen, f) not in image:
                        return False
        return True

    # -- helpers used by the arithmetic --------------------------------------

    def embed(self, side: int, f: ElementId) -> ElementId:
        return self.embeddings[side][f]

    def split(self, side: int, x: ElementId) -> tuple[ElementId | None, ElementId]:
        return self._split[side][x]

    def identity(self) -> "AmalgamElement":
        return AmalgamElement(self, (), self.core.identity)

    def from_factor(self, side: int, x: ElementId) -> "AmalgamElement":
        return reduce_word(self, [(side, x)])

    def from_core(self, f: ElementId) -> "AmalgamElement":
        if f not in self.core:
            raise AmalgamError(f"{f!r} is not a core element")
        return AmalgamElement(self, (), f)

    def format_element(self, el: "AmalgamElement") -> str:
        def core_str(f: ElementId) -> str:
            return self.core_names.get(f, repr(f))

        if not el.letters:
            return core_str(el.core)
        parts = [
            self.letter_names.get((side, t), f"{side}:{t!r}") for side, t in el.letters
        ]
        if el.core != self.core.identity:
            parts.append(core_str(el.core))
        return "*".join(parts)


@dataclass(frozen=True, eq=False)
class AmalgamElement:
    """Unique normal form: alternating coset letters, then a core element."""

    spec: AmalgamSpec
    letters: tuple[Letter, ...]
    core: ElementId

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AmalgamElement)
            and self.spec is other.spec
            and self.letters == other.letters
            and self.core == other.core
        )

    def __hash__(self) -> int:
        return hash((id(self.spec), self.letters, self.core))

    @property
    def syllable_length(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters and self.core == self.spec.core.identity

    def __mul__(self, other: "AmalgamElement") -> "AmalgamElement":
        return multiply(self, other)

    def inverse(self) -> "AmalgamElement":
        return invert(self)

    def __repr__(self) -> str:
        return f"<{self.spec.format_element(self)}>"


def _append(
    spec: AmalgamSpec, letters: list[Letter], core: ElementId, side: int, x: ElementId
) -> ElementId:
    """Multiply the normal form (letters, core) by the factor element x on the right.

    Mutates `letters`, returns the new core.
    """
    g = spec.factors[side - 1]
    u = g.mul(spec.embed(side - 1, core), x)
    if letters and letters[-1][0] == side:
        u = g.mul(letters.pop()[1], u)
    t, f = spec.split(side - 1, u)
    if t is not None:
        letters.append((side, t))
    return f


def reduce_word(spec: AmalgamSpec, word: Word) -> AmalgamElement:
    """Normal form of a word of factor elements tagged by side (1 or 2)."""
    letters: list[Letter] = []
    core = spec.core.identity
    for side, x in word:
        if side not in (1, 2):
            raise AmalgamError(f"letter side must be 1 or 2, got {side!r}")
        if x not in spec.factors[side - 1]:
            raise AmalgamError(f"{x!r} is not an element of factor {side}")
        core = _append(spec, letters, core, side, x)
    return AmalgamElement(spec, tuple(letters), core)


def multiply(a: AmalgamElement, b: AmalgamElement) -> AmalgamElement:
    if a.spec is not b.spec:
        raise AmalgamError("cannot multiply elements of different amalgams")
    spec = a.spec
    letters = list(a.letters)
    core = a.core
    for side, t in b.letters:
        core = _append(spec, letters, core, side, t)
    core = spec.core.mul(core, b.core)
    return AmalgamElement(spec, tuple(letters), core)


def invert(a: AmalgamElement) -> AmalgamElement:
    spec = a.spec
    letters: list[Letter] = []
    core = spec.core.inv(a.core)
    for side, t in reversed(a.letters):
        g = spec.factors[side - 1]
        core = _append(spec, letters, core, side, g.inv(t))
    return AmalgamElement(spec, tuple(letters), core)


def power(a: AmalgamElement, k: int) -> AmalgamElement:
    if k < 0:
        a, k = invert(a), -k
    result = a.spec.identity()
    base = a
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def has_finite_order(a: AmalgamElement) -> bool:
    """True iff the cyclic reduction of `a` has at most one syllable."""
    b = a
    while b.syllable_length >= 2 and b.letters[0][0] == b.letters[-1][0]:
        side, t = b.letters[0]
        first = b.spec.from_factor(side, t)
        shorter = multiply(multiply(invert(first), b), first)
        assert shorter.syllable_length < b.syllable_length
        b = shorter
    return b.syllable_length <= 1


def conjugate_subgroup(
    a: AmalgamElement, subset: Iterable[ElementId]
) -> frozenset[ElementId]:
    """a S a^-1 for a subset S of the core; requires the core to be normal."""
    spec = a.spec
    if not spec.core_is_normal:
        raise AmalgamError(f"{spec.name}: core is not normal in both factors")
    a_inv = invert(a)
    out = set()
    for s in subset:
        conj = multiply(multiply(a, spec.from_core(s)), a_inv)
        if conj.letters:
            raise AmalgamError("conjugate left the core despite normality")
        out.add(conj.core)
    return frozenset(out)
