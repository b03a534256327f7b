"""Finite duality for Brouwerian algebras (pointed mode) and Heyting
algebras (proper mode): dual spaces, up-set algebras, morphism duals,
subspaces of quotients, and depth.

Every space here is finite, so it carries the discrete topology: clopen
means arbitrary subset, and the separation axioms of the topological theory
hold automatically.  Modes are always explicit; nothing is inferred from the
presence of a bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    classify,
    is_homomorphism,
)
from .errors import (
    NoTop,
    NotAFilter,
    NotBrouwerian,
    VerificationFailure,
)
from .filters import (
    DeductiveFilter,
    is_deductive_filter,
    prime_deductive_filters,
    quotient,
)


@dataclass(frozen=True)
class PointedPoset:
    """A finite poset, with a designated greatest element in pointed mode."""

    size: int
    leq: tuple[tuple[bool, ...], ...]
    top: Optional[int] = None

    def covers(self, a: int, b: int) -> bool:
        """b covers a."""
        if a == b or not self.leq[a][b]:
            return False
        return not any(
            z != a and z != b and self.leq[a][z] and self.leq[z][b]
            for z in range(self.size)
        )

    def up_set(self, members) -> bool:
        mask = frozenset(members)
        return all(
            b in mask
            for a in mask
            for b in range(self.size)
            if self.leq[a][b]
        )


def check_poset(poset: PointedPoset) -> None:
    """Reflexive, antisymmetric, transitive; pointed top greatest if set."""
    n = poset.size
    leq = poset.leq
    for a in range(n):
        if not leq[a][a]:
            raise VerificationFailure(f"not reflexive at {a}")
        for b in range(n):
            if a != b and leq[a][b] and leq[b][a]:
                raise VerificationFailure(f"not antisymmetric at ({a}, {b})")
            for c in range(n):
                if leq[a][b] and leq[b][c] and not leq[a][c]:
                    raise VerificationFailure(f"not transitive at ({a}, {b}, {c})")
    if poset.top is not None and not all(leq[a][poset.top] for a in range(n)):
        raise VerificationFailure("designated point is not greatest")


def poset_from_pairs(size: int, pairs, top: Optional[int] = None) -> PointedPoset:
    rel = frozenset(pairs)
    leq = tuple(
        tuple(a == b or (a, b) in rel for b in range(size)) for a in range(size)
    )
    return PointedPoset(size, leq, top)


def all_up_sets(poset: PointedPoset, include_empty: bool) -> list[frozenset[int]]:
    """All up-sets, ordered by subset bitmask (deterministic)."""
    n = poset.size
    out = []
    for mask in range(1 << n):
        members = frozenset(a for a in range(n) if mask >> a & 1)
        if not members and not include_empty:
            continue
        if poset.up_set(members):
            out.append(members)
    return out


@dataclass(frozen=True)
class EsakiaMorphism:
    """An isotone map where everything above an image point is itself an
    image of something above."""

    source: PointedPoset
    target: PointedPoset
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def is_esakia_morphism(
    source: PointedPoset, target: PointedPoset, mapping: Sequence[int], pointed: bool = True
) -> bool:
    n = source.size
    for x in range(n):
        for y in range(n):
            if source.leq[x][y] and not target.leq[mapping[x]][mapping[y]]:
                return False
    for x in range(n):
        for y in range(target.size):
            if target.leq[mapping[x]][y]:
                if not any(source.leq[x][z] and mapping[z] == y for z in range(n)):
                    return False
    if pointed and source.top is not None:
        if mapping[source.top] != target.top:
            return False
    return True


def _require_mode(algebra: FiniteAlgebra, mode: str) -> None:
    if mode not in ("pointed", "proper"):
        raise ValueError(f"unknown mode {mode!r}")
    flags = classify(algebra)
    if mode == "pointed" and not flags.brouwerian:
        raise NotBrouwerian("pointed-mode duality needs a Brouwerian algebra")
    if mode == "proper" and not flags.heyting:
        raise NotBrouwerian("proper-mode duality needs a Heyting algebra")


def dual_space(algebra: FiniteAlgebra, mode: str = "pointed") -> PointedPoset:
    """The poset of prime filters under inclusion.  Point i is the i-th
    entry of `prime_deductive_filters(algebra, mode)`; pointed mode includes
    the improper filter as the designated top."""
    _require_mode(algebra, mode)
    primes = prime_deductive_filters(algebra, mode)
    leq = tuple(
        tuple(f.members <= g.members for g in primes) for f in primes
    )
    top = None
    if mode == "pointed":
        top = next(i for i, f in enumerate(primes) if f.is_improper)
    return PointedPoset(len(primes), leq, top)


def dual_algebra(poset: PointedPoset, mode: str = "pointed") -> FiniteAlgebra:
    """The algebra of up-sets: non-empty ones in pointed mode, all of them
    (with empty as bottom) in proper mode.  The residual of U, V is the
    complement of the down-set of U minus V."""
    if mode not in ("pointed", "proper"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "pointed" and poset.top is None:
        raise NoTop("pointed-mode dual algebra needs a designated top")
    ups = all_up_sets(poset, include_empty=(mode == "proper"))
    index = {u: i for i, u in enumerate(ups)}
    n = poset.size
    full = frozenset(range(n))

    def down_closure(s: frozenset[int]) -> frozenset[int]:
        return frozenset(a for a in range(n) if any(poset.leq[a][b] for b in s))

    def arrow(u: frozenset[int], v: frozenset[int]) -> frozenset[int]:
        return full - down_closure(u - v)

    k = len(ups)
    meet = tuple(tuple(index[ups[i] & ups[j]] for j in range(k)) for i in range(k))
    join = tuple(tuple(index[ups[i] | ups[j]] for j in range(k)) for i in range(k))
    residual = tuple(
        tuple(index[arrow(ups[i], ups[j])] for j in range(k)) for i in range(k)
    )
    return FiniteAlgebra(
        size=k,
        meet=meet,
        join=join,
        fusion=meet,
        residual=residual,
        e=index[full],
        neg=None,
        bottom=index[frozenset()] if mode == "proper" else None,
        signature=Signature(False, mode == "proper"),
    )


def canonical_iso(algebra: FiniteAlgebra, mode: str = "pointed") -> Homomorphism:
    """The map sending a to the set of prime filters containing it, verified
    to be an isomorphism onto the double dual."""
    _require_mode(algebra, mode)
    if mode == "pointed" and algebra.signature.has_bottom:
        raise NotBrouwerian("pointed-mode round trip needs an unbounded algebra")
    primes = prime_deductive_filters(algebra, mode)
    space = dual_space(algebra, mode)
    double = dual_algebra(space, mode)
    ups = all_up_sets(space, include_empty=(mode == "proper"))
    index = {u: i for i, u in enumerate(ups)}
    mapping = []
    for a in algebra.elements:
        image = frozenset(i for i, f in enumerate(primes) if a in f.members)
        if image not in index:
            raise VerificationFailure("canonical image is not an up-set")
        mapping.append(index[image])
    hom = Homomorphism(algebra, double, tuple(mapping))
    if not (hom.is_bijective and is_homomorphism(algebra, double, hom.mapping)):
        raise VerificationFailure("canonical map is not an isomorphism")
    return hom


def dualize_morphism(hom: Homomorphism, mode: str = "pointed") -> EsakiaMorphism:
    """The preimage map on prime filters, from the dual of the target to the
    dual of the source; verified to satisfy the morphism condition."""
    source_primes = prime_deductive_filters(hom.source, mode)
    target_primes = prime_deductive_filters(hom.target, mode)
    source_index = {f.members: i for i, f in enumerate(source_primes)}
    mapping = []
    for f in target_primes:
        preimage = frozenset(a for a in hom.source.elements if hom.mapping[a] in f.members)
        if preimage not in source_index:
            raise VerificationFailure("preimage of a prime filter is not prime")
        mapping.append(source_index[preimage])
    morphism = EsakiaMorphism(
        dual_space(hom.target, mode), dual_space(hom.source, mode), tuple(mapping)
    )
    if not is_esakia_morphism(
        morphism.source, morphism.target, morphism.mapping, pointed=(mode == "pointed")
    ):
        raise VerificationFailure("dualized map violates the morphism condition")
    return morphism


@dataclass(frozen=True)
class ESubspace:
    """The up-set of the dual space above a filter, together with the
    isomorphism from the quotient onto its up-set algebra."""

    poset: PointedPoset                 # the subspace, locally re-indexed
    points: tuple[int, ...]             # parent dual-space point ids
    quotient: FiniteAlgebra
    quotient_map: Homomorphism
    iso: Homomorphism                   # quotient -> up-set algebra of poset
    point_sets: tuple[frozenset[int], ...]  # per quotient element, parent ids


def e_subspace(
    algebra: FiniteAlgebra,
    flt: DeductiveFilter,
    chain_filter: Optional[DeductiveFilter] = None,
) -> ESubspace:
    """The subspace of prime filters above `flt`, with the verified
    isomorphism from the quotient by `flt` onto its up-set algebra.

    The first commuting square (restriction of the canonical map along the
    subspace inclusion equals the isomorphism after the quotient map) is
    always verified; when `chain_filter` extends `flt`, the tower square for
    the two quotients is verified as well."""
    if classify(algebra).heyting:
        raise NotBrouwerian(
            "e_subspace works in pointed mode; pass the unbounded reduct"
        )
    _require_mode(algebra, "pointed")
    if not is_deductive_filter(algebra, flt.members):
        raise NotAFilter("e_subspace needs a deductive filter")
    primes = prime_deductive_filters(algebra, "pointed")
    parent_ids = tuple(
        i for i, f in enumerate(primes) if flt.members <= f.members
    )
    local = {p: i for i, p in enumerate(parent_ids)}
    leq = tuple(
        tuple(primes[p].members <= primes[q].members for q in parent_ids)
        for p in parent_ids
    )
    top = next(
        i for i, p in enumerate(parent_ids) if primes[p].is_improper
    )
    sub_poset = PointedPoset(len(parent_ids), leq, top)

    q_algebra, q_map = quotient(algebra, flt)
    point_sets = []
    for cls in q_algebra.elements:
        a = q_map.mapping.index(cls)
        point_sets.append(
            frozenset(p for p in parent_ids if a in primes[p].members)
        )

    ups = all_up_sets(sub_poset, include_empty=False)
    index = {u: i for i, u in enumerate(ups)}
    mapping = []
    for cls in q_algebra.elements:
        local_set = frozenset(local[p] for p in point_sets[cls])
        if local_set not in index:
            raise VerificationFailure("quotient image is not a non-empty up-set")
        mapping.append(index[local_set])
    upset_algebra = dual_algebra(sub_poset, "pointed")
    iso = Homomorphism(q_algebra, upset_algebra, tuple(mapping))
    if not (iso.is_bijective and is_homomorphism(q_algebra, upset_algebra, iso.mapping)):
        raise VerificationFailure("subspace map is not an isomorphism")

    # square one: restricting the canonical image of a to the subspace gives
    # the image of a's class
    parent_set = frozenset(parent_ids)
    for a in algebra.elements:
        canonical = frozenset(i for i, f in enumerate(primes) if a in f.members)
        if canonical & parent_set != point_sets[q_map.mapping[a]]:
            raise VerificationFailure("subspace square does not commute")

    if chain_filter is not None:
        if not is_deductive_filter(algebra, chain_filter.members):
            raise NotAFilter("tower verification needs a deductive filter")
        if not flt.members <= chain_filter.members:
            raise NotAFilter("tower verification needs a filter extending the first")
        upper = e_subspace(algebra, chain_filter)
        upper_set = frozenset(upper.points)
        g_algebra, g_map = quotient(algebra, chain_filter)
        for a in algebra.elements:
            lower_image = point_sets[q_map.mapping[a]]
            upper_image = upper.point_sets[g_map.mapping[a]]
            if lower_image & upper_set != upper_image:
                raise VerificationFailure("tower square does not commute")

    return ESubspace(
        poset=sub_poset,
        points=parent_ids,
        quotient=q_algebra,
        quotient_map=q_map,
        iso=iso,
        point_sets=tuple(point_sets),
    )


def depth_of_point(poset: PointedPoset, x: int) -> int:
    """Longest chain from x up to the designated top, counted in steps."""
    if poset.top is None:
        raise NoTop("point depth needs a designated top")
    memo: dict[int, int] = {}

    def rec(a: int) -> int:
        if a == poset.top:
            return 0
        if a not in memo:
            memo[a] = 1 + max(
                (rec(b) for b in range(poset.size) if b != a and poset.leq[a][b]),
                default=0,
            )
        return memo[a]

    return rec(x)


def depth_of_poset(poset: PointedPoset) -> int:
    """With a top: longest chain to it in steps.  Without one (proper-mode
    spaces): longest chain counted in points, which keeps a bounded algebra
    and its unbounded reduct at the same depth."""
    if poset.size == 0:
        return 0
    if poset.top is not None:
        return max(depth_of_point(poset, x) for x in range(poset.size))
    memo: dict[int, int] = {}

    def chain_from(a: int) -> int:
        if a not in memo:
            memo[a] = 1 + max(
                (chain_from(b) for b in range(poset.size) if b != a and poset.leq[a][b]),
                default=0,
            )
        return memo[a]

    return max(chain_from(x) for x in range(poset.size))


def depth(target, point: Optional[int] = None) -> int:
    """Depth of a point in a pointed poset, of a poset, or of an algebra.

    For an algebra the depth is that of its negative cone's pointed dual
    (bounded algebras use their unbounded reduct, so marking a bottom never
    changes the depth)."""
    if isinstance(target, PointedPoset):
        if point is not None:
            return depth_of_point(target, point)
        return depth_of_poset(target)
    if isinstance(target, FiniteAlgebra):
        from .core import brouwerian_reduct
        from .cones import negative_cone

        cone, _ = negative_cone(target)
        return depth_of_poset(dual_space(brouwerian_reduct(cone), "pointed"))
    raise TypeError(f"cannot take the depth of {type(target).__name__}")


def poset_round_trip(poset: PointedPoset, mode: str = "pointed") -> tuple[int, ...]:
    """Verify the point-side round trip: x maps to the set of up-sets
    containing it, which is a prime filter of the up-set algebra; the map is
    an order isomorphism onto the double dual's points."""
    upset_algebra = dual_algebra(poset, mode)
    ups = all_up_sets(poset, include_empty=(mode == "proper"))
    primes = prime_deductive_filters(upset_algebra, mode)
    prime_index = {f.members: i for i, f in enumerate(primes)}
    mapping = []
    for x in range(poset.size):
        flt = frozenset(i for i, u in enumerate(ups) if x in u)
        if flt not in prime_index:
            raise VerificationFailure("point image is not a prime filter")
        mapping.append(prime_index[flt])
    if len(set(mapping)) != len(primes):
        raise VerificationFailure("point round trip is not bijective")
    for x in range(poset.size):
        for y in range(poset.size):
            le_points = poset.leq[x][y]
            le_filters = primes[mapping[x]].members <= primes[mapping[y]].members
            if le_points != le_filters:
                raise VerificationFailure("point round trip is not an order isomorphism")
    if mode == "pointed" and poset.top is not None:
        target_top = next(i for i, f in enumerate(primes) if f.is_improper)
        if mapping[poset.top] != target_top:
            raise VerificationFailure("point round trip moves the top")
    return tuple(mapping)
