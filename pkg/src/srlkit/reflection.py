"""The reflection construction: embed an unbounded, involution-free algebra
into an involutive one on a disjoint primed copy plus new extremes.

Layout of the result's carrier is fixed: index 0 is the new bottom, indices
1..n are the base block (in base order), n+1..2n the primed block, 2n+1 the
new top.  The new extremes are term-definable (the square of the negated
identity, and its negation), so every subalgebra of a reflection contains
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    find_isomorphism,
    is_subuniverse,
    subalgebra,
)
from .cones import all_subuniverses
from .errors import NotASubalgebra, VerificationFailure, WrongSignature
from .filters import (
    Congruence,
    all_congruences,
    is_congruence,
    quotient_by_congruence,
    _normalize_blocks,
)


@dataclass(frozen=True)
class ReflectionAlgebra:
    """A reflected algebra with its base and the tag of every result index."""

    base: FiniteAlgebra
    algebra: FiniteAlgebra
    tags: tuple[tuple, ...]

    def base_index(self, a: int) -> int:
        return 1 + a

    def primed_index(self, a: int) -> int:
        return self.base.size + 1 + a

    @property
    def bottom_index(self) -> int:
        return 0

    @property
    def top_index(self) -> int:
        return 2 * self.base.size + 1


def reflect(base: FiniteAlgebra) -> ReflectionAlgebra:
    """Build the reflection of an unbounded involution-free algebra."""
    if base.signature != Signature(False, False):
        raise WrongSignature("reflection needs an involution-free unbounded algebra")
    n = base.size
    size = 2 * n + 2
    bot, top = 0, 2 * n + 1
    b = lambda a: 1 + a          # base block index
    p = lambda a: n + 1 + a      # primed block index

    kind = [None] * size
    kind[bot] = ("bot",)
    kind[top] = ("top",)
    for a in range(n):
        kind[b(a)] = ("base", a)
        kind[p(a)] = ("primed", a)

    def leq(x: int, y: int) -> bool:
        if x == bot or y == top or x == y:
            return True
        if y == bot or x == top:
            return False
        kx, ky = kind[x], kind[y]
        if kx[0] == "base" and ky[0] == "primed":
            return True
        if kx[0] == "primed" and ky[0] == "base":
            return False
        if kx[0] == "base":
            return base.leq(kx[1], ky[1])
        return base.leq(ky[1], kx[1])  # primed block reversed

    def meet_op(x: int, y: int) -> int:
        if leq(x, y):
            return x
        if leq(y, x):
            return y
        kx, ky = kind[x], kind[y]
        if kx[0] == "base" and ky[0] == "base":
            return b(base.meet[kx[1]][ky[1]])
        if kx[0] == "primed" and ky[0] == "primed":
            return p(base.join[kx[1]][ky[1]])
        raise VerificationFailure("meet fell through the reflection order")

    def join_op(x: int, y: int) -> int:
        if leq(x, y):
            return y
        if leq(y, x):
            return x
        kx, ky = kind[x], kind[y]
        if kx[0] == "base" and ky[0] == "base":
            return b(base.join[kx[1]][ky[1]])
        if kx[0] == "primed" and ky[0] == "primed":
            return p(base.meet[kx[1]][ky[1]])
        raise VerificationFailure("join fell through the reflection order")

    def fusion_op(x: int, y: int) -> int:
        if x == bot or y == bot:
            return bot
        if x == top or y == top:
            return top
        kx, ky = kind[x], kind[y]
        if kx[0] == "base" and ky[0] == "base":
            return b(base.fusion[kx[1]][ky[1]])
        if kx[0] == "primed" and ky[0] == "primed":
            return top
        if kx[0] == "primed":
            kx, ky = ky, kx
        return p(base.residual[kx[1]][ky[1]])  # a * b' = (a -> b)'

    neg = [0] * size
    neg[bot], neg[top] = top, bot
    for a in range(n):
        neg[b(a)] = p(a)
        neg[p(a)] = b(a)

    meet = tuple(tuple(meet_op(x, y) for y in range(size)) for x in range(size))
    join = tuple(tuple(join_op(x, y) for y in range(size)) for x in range(size))
    fusion = tuple(tuple(fusion_op(x, y) for y in range(size)) for x in range(size))
    residual = tuple(
        tuple(neg[fusion[x][neg[y]]] for y in range(size)) for x in range(size)
    )
    result = FiniteAlgebra(
        size=size,
        meet=meet,
        join=join,
        fusion=fusion,
        residual=tuple(residual),
        e=b(base.e),
        neg=tuple(neg),
        signature=Signature(True, False),
        name=None if base.name is None else f"reflection({base.name})",
    )
    return ReflectionAlgebra(base=base, algebra=result, tags=tuple(kind))


def reflect_subalgebra(
    refl: ReflectionAlgebra, members: Iterable[int]
) -> tuple[frozenset[int], Homomorphism]:
    """The subuniverse of the reflection induced by a base subuniverse,
    verified isomorphic to the reflection of the subalgebra."""
    base_mask = sorted(set(members))
    if not is_subuniverse(refl.base, base_mask):
        raise NotASubalgebra(f"{base_mask} is not a subuniverse of the base")
    lifted = frozenset(
        {refl.bottom_index, refl.top_index}
        | {refl.base_index(a) for a in base_mask}
        | {refl.primed_index(a) for a in base_mask}
    )
    sub, _ = subalgebra(refl.algebra, lifted)
    base_sub, _ = subalgebra(refl.base, base_mask)
    iso = find_isomorphism(reflect(base_sub).algebra, sub)
    if iso is None:
        raise VerificationFailure("lifted subalgebra is not a reflection copy")
    return lifted, iso


def subalgebra_census_matches(refl: ReflectionAlgebra) -> bool:
    """Every subuniverse of the reflection arises from a base subuniverse."""
    expected = set()
    for mask in all_subuniverses(refl.base):
        lifted, _ = reflect_subalgebra(refl, mask)
        expected.add(lifted)
    return set(all_subuniverses(refl.algebra)) == expected


def reflect_congruence(refl: ReflectionAlgebra, congruence: Congruence) -> Congruence:
    """Duplicate a base congruence onto the primed block, keeping the new
    extremes in singleton classes; verified to be a congruence whose
    quotient is the reflection of the base quotient."""
    n = refl.base.size
    raw = [0] * (2 * n + 2)
    shift = congruence.block_count
    raw[refl.bottom_index] = 2 * shift
    raw[refl.top_index] = 2 * shift + 1
    for a in range(n):
        raw[refl.base_index(a)] = congruence.blocks[a]
        raw[refl.primed_index(a)] = shift + congruence.blocks[a]
    blocks = _normalize_blocks(raw)
    if not is_congruence(refl.algebra, blocks):
        raise VerificationFailure("reflected relation is not a congruence")
    lifted = Congruence(refl.algebra, blocks)
    base_quotient, _ = quotient_by_congruence(refl.base, congruence)
    big_quotient, _ = quotient_by_congruence(refl.algebra, lifted)
    if find_isomorphism(reflect(base_quotient).algebra, big_quotient) is None:
        raise VerificationFailure("reflected quotient is not a reflection copy")
    return lifted


def congruence_census_matches(refl: ReflectionAlgebra) -> bool:
    """Every proper congruence of the reflection is a reflected base
    congruence; the only extra one is the total relation."""
    expected = {
        reflect_congruence(refl, theta).blocks
        for theta in all_congruences(refl.base)
    }
    expected.add(tuple(0 for _ in range(refl.algebra.size)))
    return {c.blocks for c in all_congruences(refl.algebra)} == expected


def reflection_epic_transfer(
    algebra: FiniteAlgebra, members: Iterable[int], generators: Iterable[FiniteAlgebra]
) -> tuple[bool, bool]:
    """Evaluate epicity of a subalgebra on the base side and on the
    reflected side; the verdicts provably agree, so disagreement raises."""
    from .varieties import VarietySpec, is_epic_subalgebra

    gens = tuple(generators)
    base_verdict = is_epic_subalgebra(algebra, members, VarietySpec(gens))
    refl = reflect(algebra)
    lifted, _ = reflect_subalgebra(refl, members)
    lifted_spec = VarietySpec(tuple(reflect(g).algebra for g in gens))
    refl_verdict = is_epic_subalgebra(refl.algebra, lifted, lifted_spec)
    if base_verdict != refl_verdict:
        raise VerificationFailure("epicity transfer verdicts disagree")
    return base_verdict, refl_verdict
