"""Deductive filters, the filter-congruence correspondence, filter
generation, prime filters, quotients, and the FSI test.

Filters are stored as frozensets of element indices.  In a finite algebra
every deductive filter is the principal up-set of its minimum, which lies in
the negative cone; the production enumeration exploits this while the
brute-force partition enumeration stays available as the congruence-side
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import FiniteAlgebra, Homomorphism, subalgebra
from .errors import NotAFilter, VerificationFailure


@dataclass(frozen=True)
class DeductiveFilter:
    """An upward-closed, meet-closed subset containing the identity."""

    algebra: FiniteAlgebra
    members: frozenset[int]

    @property
    def is_improper(self) -> bool:
        return len(self.members) == self.algebra.size

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class Congruence:
    """A partition compatible with every operation, as a block id per
    element; block ids are normalized to first-occurrence order."""

    algebra: FiniteAlgebra
    blocks: tuple[int, ...]

    @property
    def block_count(self) -> int:
        return max(self.blocks) + 1

    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for a, b in enumerate(self.blocks):
            out[b].append(a)
        return tuple(tuple(c) for c in out)

    def related(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    @property
    def is_identity(self) -> bool:
        return self.block_count == self.algebra.size

    @property
    def is_total(self) -> bool:
        return self.block_count == 1


def _normalize_blocks(raw: Iterable[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for b in raw:
        if b not in seen:
            seen[b] = len(seen)
        out.append(seen[b])
    return tuple(out)


def is_deductive_filter(algebra: FiniteAlgebra, members: Iterable[int]) -> bool:
    mask = frozenset(members)
    if algebra.e not in mask:
        return False
    for a in mask:
        for b in algebra.elements:
            if algebra.leq(a, b) and b not in mask:
                return False
        for b in mask:
            if algebra.meet[a][b] not in mask:
                return False
    return True


def deductive_filter(algebra: FiniteAlgebra, members: Iterable[int]) -> DeductiveFilter:
    mask = frozenset(members)
    if not is_deductive_filter(algebra, mask):
        raise NotAFilter(f"{sorted(mask)} is not a deductive filter")
    return DeductiveFilter(algebra, mask)


def generated_filter(algebra: FiniteAlgebra, elements: Iterable[int]) -> DeductiveFilter:
    """Smallest deductive filter containing the given set: fixpoint of
    up-closure and binary meets over the set plus the identity."""
    current = set(elements) | {algebra.e}
    changed = True
    while changed:
        changed = False
        for a in list(current):
            for b in algebra.elements:
                if algebra.leq(a, b) and b not in current:
                    current.add(b)
                    changed = True
            for b in list(current):
                m = algebra.meet[a][b]
                if m not in current:
                    current.add(m)
                    changed = True
    return DeductiveFilter(algebra, frozenset(current))


def all_deductive_filters(algebra: FiniteAlgebra) -> list[DeductiveFilter]:
    """Every deductive filter: the principal up-sets of negative-cone
    elements, ordered by sorted member tuples."""
    filters = []
    for c in algebra.below_e:
        members = frozenset(b for b in algebra.elements if algebra.leq(c, b))
        filters.append(DeductiveFilter(algebra, members))
    filters.sort(key=lambda f: f.sorted_members())
    return filters


def is_prime_filter(algebra: FiniteAlgebra, members: frozenset[int]) -> bool:
    """Prime: the complement is closed under join."""
    outside = [a for a in algebra.elements if a not in members]
    return all(algebra.join[a][b] not in members for a in outside for b in outside)


def prime_deductive_filters(algebra: FiniteAlgebra, mode: str) -> list[DeductiveFilter]:
    """Prime deductive filters.

    pointed: includes the improper filter (the whole carrier);
    proper:   proper primes only (may be empty for the 1-element algebra).
    """
    if mode not in ("pointed", "proper"):
        raise ValueError(f"unknown mode {mode!r}")
    primes = [f for f in all_deductive_filters(algebra) if is_prime_filter(algebra, f.members)]
    if mode == "proper":
        primes = [f for f in primes if not f.is_improper]
    return primes


def lattice_filters(algebra: FiniteAlgebra) -> list[frozenset[int]]:
    """All filters of the lattice reduct (principal up-sets), deterministic."""
    out = []
    for c in algebra.elements:
        out.append(frozenset(b for b in algebra.elements if algebra.leq(c, b)))
    out.sort(key=sorted)
    return out


def leibniz_congruence(flt: DeductiveFilter) -> Congruence:
    """The congruence identifying a and b exactly when (a->b) meet (b->a)
    lies in the filter."""
    algebra = flt.algebra
    raw = []
    reps: list[int] = []
    for a in algebra.elements:
        for i, r in enumerate(reps):
            if algebra.iff(a, r) in flt.members:
                raw.append(i)
                break
        else:
            raw.append(len(reps))
            reps.append(a)
    return Congruence(algebra, _normalize_blocks(raw))


def congruence_filter(congruence: Congruence) -> DeductiveFilter:
    """Inverse direction of the correspondence: all a with a meet e congruent
    to e."""
    algebra = congruence.algebra
    members = frozenset(
        a for a in algebra.elements
        if congruence.related(algebra.meet[a][algebra.e], algebra.e)
    )
    return DeductiveFilter(algebra, members)


def is_congruence(algebra: FiniteAlgebra, blocks: tuple[int, ...]) -> bool:
    n = algebra.size
    if len(blocks) != n:
        return False
    same = lambda a, b: blocks[a] == blocks[b]
    for a in range(n):
        for b in range(a + 1, n):
            if not same(a, b):
                continue
            if algebra.neg is not None and not same(algebra.neg[a], algebra.neg[b]):
                return False
            for table in (algebra.meet, algebra.join, algebra.fusion, algebra.residual):
                for c in range(n):
                    if not same(table[a][c], table[b][c]):
                        return False
                    if not same(table[c][a], table[c][b]):
                        return False
    return True


def all_congruences(algebra: FiniteAlgebra) -> list[Congruence]:
    """Production enumeration through the filter correspondence."""
    return [leibniz_congruence(f) for f in all_deductive_filters(algebra)]


def enumerate_congruences_bruteforce(algebra: FiniteAlgebra) -> list[Congruence]:
    """Oracle: scan every partition (restricted growth strings) and keep the
    ones compatible with all operations."""
    n = algebra.size
    found = []

    def grow(prefix: list[int], used: int) -> None:
        if len(prefix) == n:
            blocks = tuple(prefix)
            if is_congruence(algebra, blocks):
                found.append(Congruence(algebra, blocks))
            return
        for b in range(used + 1):
            prefix.append(b)
            grow(prefix, max(used, b + 1))
            prefix.pop()

    grow([0], 1)
    return found


def quotient_by_congruence(
    algebra: FiniteAlgebra, congruence: Congruence
) -> tuple[FiniteAlgebra, Homomorphism]:
    """The quotient algebra and the canonical surjection."""
    blocks = congruence.blocks
    k = congruence.block_count
    reps = [None] * k
    for a in algebra.elements:
        if reps[blocks[a]] is None:
            reps[blocks[a]] = a
    table = lambda t: tuple(
        tuple(blocks[t[reps[i]][reps[j]]] for j in range(k)) for i in range(k)
    )
    quotient = FiniteAlgebra(
        size=k,
        meet=table(algebra.meet),
        join=table(algebra.join),
        fusion=table(algebra.fusion),
        residual=table(algebra.residual),
        e=blocks[algebra.e],
        neg=None if algebra.neg is None else tuple(blocks[algebra.neg[reps[i]]] for i in range(k)),
        bottom=None if algebra.bottom is None else blocks[algebra.bottom],
        signature=algebra.signature,
        name=None if algebra.name is None else f"{algebra.name}/θ",
    )
    return quotient, Homomorphism(algebra, quotient, blocks)


def quotient(
    algebra: FiniteAlgebra, flt: DeductiveFilter
) -> tuple[FiniteAlgebra, Homomorphism]:
    """Quotient by the congruence paired with the filter."""
    return quotient_by_congruence(algebra, leibniz_congruence(flt))


def is_fsi(algebra: FiniteAlgebra) -> bool:
    """Finitely subdirectly irreducible: the identity is join-irreducible in
    the lattice reduct.  The 1-element algebra is not FSI by convention."""
    if algebra.size <= 1:
        return False
    e = algebra.e
    for a in algebra.elements:
        for b in algebra.elements:
            if algebra.join[a][b] == e and a != e and b != e:
                return False
    return True


def restrict_congruence(congruence: Congruence, carrier: list[int], sub: FiniteAlgebra) -> Congruence:
    """The restriction of a congruence to a subalgebra (given by its carrier
    in the parent's indices, ascending)."""
    return Congruence(sub, _normalize_blocks(congruence.blocks[x] for x in carrier))


@dataclass(frozen=True)
class QuotientEmbedding:
    """The injective map B/(mu|B) -> A/mu induced by a subalgebra inclusion,
    together with both quotients and their canonical surjections."""

    sub_algebra: FiniteAlgebra
    inclusion: Homomorphism
    sub_quotient: FiniteAlgebra
    sub_quotient_map: Homomorphism
    quotient: FiniteAlgebra
    quotient_map: Homomorphism
    embedding: Homomorphism


def restrict_quotient_embedding(
    algebra: FiniteAlgebra, members: Iterable[int], congruence: Congruence
) -> QuotientEmbedding:
    """For a subalgebra B and congruence mu of A, build the injective
    homomorphism B/(mu|B) -> A/mu sending b's class to b's class.

    Cross-checks that the restricted congruence is the one paired with the
    restricted filter (a theorem; failure means a bug)."""
    sub, inclusion = subalgebra(algebra, members)
    carrier = list(inclusion.mapping)
    restricted = restrict_congruence(congruence, carrier, sub)

    parent_filter = congruence_filter(congruence)
    trace = frozenset(
        i for i, x in enumerate(carrier) if x in parent_filter.members
    )
    if leibniz_congruence(DeductiveFilter(sub, trace)) != restricted:
        raise VerificationFailure(
            "restricted congruence does not match the restricted filter"
        )

    sub_quotient, sub_map = quotient_by_congruence(sub, restricted)
    full_quotient, full_map = quotient_by_congruence(algebra, congruence)
    embedding_map = [-1] * sub_quotient.size
    for i, x in enumerate(carrier):
        embedding_map[sub_map.mapping[i]] = full_map.mapping[x]
    embedding = Homomorphism(sub_quotient, full_quotient, tuple(embedding_map))
    if not embedding.is_injective:
        raise VerificationFailure("quotient embedding is not injective")
    return QuotientEmbedding(
        sub_algebra=sub,
        inclusion=inclusion,
        sub_quotient=sub_quotient,
        sub_quotient_map=sub_map,
        quotient=full_quotient,
        quotient_map=full_map,
        embedding=embedding,
    )
