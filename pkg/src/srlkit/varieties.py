"""FSI spectra of finitely generated varieties, epicity testing, the
epimorphism-surjectivity decision, and the mechanized epi-refutation
pipeline.

For finitely many finite generators every ultraproduct is isomorphic to a
factor, so the FSI members of the generated variety are, up to isomorphism,
exactly the FSI quotients of subalgebras of generators; and two
homomorphisms into any member stay distinct after projecting onto some
subdirectly irreducible (hence FSI) factor, so epicity only needs checking
against the spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .cones import (
    all_subuniverses,
    eval_term,
    generate_subalgebra,
    is_negatively_generated,
    negative_cone,
    subuniverse_closure,
)
from .core import (
    FiniteAlgebra,
    Homomorphism,
    brouwerian_reduct,
    compose,
    find_isomorphism,
    homomorphisms,
    identity_homomorphism,
    is_homomorphism,
    is_subuniverse,
    subalgebra,
    validate,
)
from .duality import depth, depth_of_point, dual_space, e_subspace
from .errors import (
    HypothesesNotMet,
    NotASubalgebra,
    ValidationError,
    VerificationFailure,
    WrongSignature,
)
from .filters import (
    Congruence,
    DeductiveFilter,
    all_deductive_filters,
    generated_filter,
    is_fsi,
    leibniz_congruence,
    prime_deductive_filters,
    quotient,
    restrict_quotient_embedding,
)


@dataclass(frozen=True)
class VarietySpec:
    """A finitely generated variety, given by its generators."""

    generators: tuple[FiniteAlgebra, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a variety spec needs at least one generator")
        sig = self.generators[0].signature
        for g in self.generators:
            if g.signature != sig:
                raise WrongSignature("variety generators must share a signature")
            report = validate(g)
            if not report.ok:
                raise ValidationError(report, "variety generator fails validation")

    @property
    def signature(self):
        return self.generators[0].signature


@dataclass(frozen=True)
class FsiSpectrum:
    """All FSI members of the variety up to isomorphism."""

    spec: VarietySpec
    algebras: tuple[FiniteAlgebra, ...]


def fsi_spectrum(spec: VarietySpec) -> FsiSpectrum:
    """Quotients of subalgebras of generators, filtered to the FSI ones and
    deduplicated up to isomorphism, in deterministic order."""
    members: list[FiniteAlgebra] = []
    for gen in spec.generators:
        for mask in all_subuniverses(gen):
            sub, _ = subalgebra(gen, mask)
            for flt in all_deductive_filters(sub):
                candidate, _ = quotient(sub, flt)
                if not is_fsi(candidate):
                    continue
                if any(find_isomorphism(candidate, m) is not None for m in members):
                    continue
                members.append(replace(candidate, name=f"fsi{len(members)}"))
    return FsiSpectrum(spec=spec, algebras=tuple(members))


def variety_depth(spec: VarietySpec) -> int:
    """Depth of the variety: the maximum over its FSI spectrum (finitely
    generated varieties attain it there)."""
    spectrum = fsi_spectrum(spec)
    return max((depth(m) for m in spectrum.algebras), default=0)


@dataclass(frozen=True)
class GateEntry:
    name: str
    size: int
    depth: int
    negatively_generated: bool


@dataclass(frozen=True)
class GateReport:
    """Per-FSI-member hypotheses of the surjectivity theorem: finite depth
    (always finite here, reported numerically) and negative generation."""

    entries: tuple[GateEntry, ...]

    @property
    def passed(self) -> bool:
        return all(entry.negatively_generated for entry in self.entries)


def hypotheses_gate(spec: VarietySpec) -> GateReport:
    spectrum = fsi_spectrum(spec)
    entries = tuple(
        GateEntry(
            name=m.name or f"member{i}",
            size=m.size,
            depth=depth(m),
            negatively_generated=is_negatively_generated(m),
        )
        for i, m in enumerate(spectrum.algebras)
    )
    return GateReport(entries)


def is_epic_subalgebra(
    algebra: FiniteAlgebra,
    members: Iterable[int],
    spec: VarietySpec,
    spectrum: Optional[FsiSpectrum] = None,
    refutation: Optional[list] = None,
) -> bool:
    """Does the subalgebra determine every homomorphism from the algebra
    into the variety?  Checked against the FSI spectrum; when `refutation`
    is a list, the first separating triple (codomain, map, map) is appended
    on a negative verdict."""
    mask = sorted(set(members))
    if not is_subuniverse(algebra, mask):
        raise NotASubalgebra(f"{mask} is not a subuniverse")
    if spectrum is None:
        spectrum = fsi_spectrum(spec)
    for codomain in spectrum.algebras:
        seen: dict[tuple[int, ...], Homomorphism] = {}
        for hom in homomorphisms(algebra, codomain):
            key = tuple(hom.mapping[b] for b in mask)
            other = seen.get(key)
            if other is not None and other.mapping != hom.mapping:
                if refutation is not None:
                    refutation.append((codomain, other, hom))
                return False
            seen.setdefault(key, hom)
    return True


@dataclass(frozen=True)
class EsDecision:
    """Outcome of the surjectivity decision, with the witnessing pair
    (FSI member, proper epic subuniverse) when it fails."""

    surjective: bool
    witness: Optional[tuple[FiniteAlgebra, frozenset[int]]]
    spectrum: FsiSpectrum


def decide_es(spec: VarietySpec) -> EsDecision:
    """Epimorphisms in the variety are surjective iff no FSI spectrum member
    has an epic proper subalgebra."""
    spectrum = fsi_spectrum(spec)
    for member in spectrum.algebras:
        full = frozenset(member.elements)
        for mask in all_subuniverses(member):
            if mask == full:
                continue
            if is_epic_subalgebra(member, mask, spec, spectrum=spectrum):
                return EsDecision(False, (member, mask), spectrum)
    return EsDecision(True, None, spectrum)


@dataclass
class EpiAnalysis:
    """The data extracted from a proper negatively generated subalgebra of a
    negatively generated FSI algebra on the way to refuting epicity.

    `collisions` holds the pairs of distinct prime cone filters with equal
    traces on the subalgebra; the two selected filters are depth-minimal
    (first over all pairs, then among the first one's partners).  The case
    is "nested" when the second filter sits directly below the first, and
    "incomparable" otherwise.  `gap` lists the quotient-cone elements
    missing from the embedded subalgebra quotient; each is covered by the
    identity's class."""

    algebra: FiniteAlgebra
    sub_mask: frozenset[int]
    collisions: tuple[tuple[frozenset[int], frozenset[int]], ...]
    first_filter: frozenset[int]
    second_filter: frozenset[int]
    case: str
    congruence: Congruence
    first_witness: int
    second_witness: int
    gap: frozenset[int]
    quotient: FiniteAlgebra
    quotient_map: Homomorphism
    sub_quotient: FiniteAlgebra
    sub_quotient_map: Homomorphism
    embedding: Homomorphism


def _cone_prime_data(algebra: FiniteAlgebra):
    """The unbounded cone, its carrier injection, and its prime filters as
    sets of parent indices (in dual-space point order)."""
    cone, carrier = negative_cone(algebra)
    cone = brouwerian_reduct(cone)
    primes_local = prime_deductive_filters(cone, "pointed")
    primes = [frozenset(carrier[i] for i in f.members) for f in primes_local]
    return cone, carrier, primes


def epi_analysis(algebra: FiniteAlgebra, members: Iterable[int]) -> EpiAnalysis:
    """Run the construction behind the surjectivity theorem and verify every
    step: colliding prime pair, depth-minimal choices, the case split, the
    generated congruence, the embedded quotient, the missing cone elements
    and their cover property, and the commuting retract square."""
    sub_mask = frozenset(members)
    if not is_subuniverse(algebra, sub_mask):
        raise HypothesesNotMet("B is not a subalgebra")
    if len(sub_mask) == algebra.size:
        raise HypothesesNotMet("B is not proper")
    if not is_fsi(algebra):
        raise HypothesesNotMet("A is not FSI")
    if not is_negatively_generated(algebra):
        raise HypothesesNotMet("A is not negatively generated")
    sub_alg, inclusion = subalgebra(algebra, sub_mask)
    if not is_negatively_generated(sub_alg):
        raise HypothesesNotMet("B is not negatively generated")

    cone, carrier, primes = _cone_prime_data(algebra)
    cone_local = {x: i for i, x in enumerate(carrier)}
    space = dual_space(cone, "pointed")
    depths = [depth_of_point(space, i) for i in range(space.size)]
    sub_neg = frozenset(x for x in carrier if x in sub_mask)

    collisions = tuple(
        (primes[i], primes[j])
        for i in range(len(primes))
        for j in range(len(primes))
        if i != j and primes[i] & sub_neg == primes[j] & sub_neg
    )
    if not collisions:
        raise HypothesesNotMet("no colliding prime-filter pair (cones coincide)")

    def select(candidates: list[int]) -> int:
        return min(candidates, key=lambda i: (depths[i], tuple(sorted(primes[i]))))

    participants = sorted(
        {
            i
            for i in range(len(primes))
            for j in range(len(primes))
            if i != j and primes[i] & sub_neg == primes[j] & sub_neg
        }
    )
    first_idx = select(participants)
    partners = [
        j
        for j in range(len(primes))
        if j != first_idx and primes[j] & sub_neg == primes[first_idx] & sub_neg
    ]
    second_idx = select(partners)
    first, second = primes[first_idx], primes[second_idx]

    if first < second:
        raise VerificationFailure("first filter properly inside the second")
    for g in primes:
        if first < g and not (second < g):
            raise VerificationFailure("strict bound of the first filter misses the second")
        if second < g and not (first <= g):
            raise VerificationFailure("strict bound of the second filter misses the first")

    if second < first:
        case = "nested"
        between = [g for g in primes if second < g < first]
        if between:
            raise VerificationFailure("second filter is not covered by the first")
        if any(second < g and not (first <= g) for g in primes):
            raise VerificationFailure("first filter is not the least strict bound")
    else:
        case = "incomparable"
        if first <= second or second <= first:
            raise VerificationFailure("case split saw comparable filters")
        if depths[first_idx] != depths[second_idx]:
            raise VerificationFailure("incomparable filters with different depths")
        uppers_first = {tuple(sorted(g)) for g in primes if first < g}
        uppers_second = {tuple(sorted(g)) for g in primes if second < g}
        if uppers_first != uppers_second:
            raise VerificationFailure("incomparable filters with different strict bounds")

    kernel = first & second
    theta = leibniz_congruence(generated_filter(algebra, kernel))
    qe = restrict_quotient_embedding(algebra, sorted(sub_mask), theta)
    quot, q_map = qe.quotient, qe.quotient_map
    sub_quot, j_hom = qe.sub_quotient, qe.embedding

    j_cone_image = frozenset(j_hom.mapping[u] for u in sub_quot.below_e)
    gap = frozenset(quot.below_e) - j_cone_image

    first_witness = min(first - second)
    second_witness = algebra.e if case == "nested" else min(second - first)
    expected_gap = {q_map.mapping[first_witness]}
    if case == "incomparable":
        expected_gap.add(q_map.mapping[second_witness])
    if gap != frozenset(expected_gap):
        raise VerificationFailure("missing cone elements differ from the expected ones")
    for u in gap:
        e_q = quot.e
        if u == e_q or not quot.leq(u, e_q):
            raise VerificationFailure("missing element is not strictly below the identity")
        if any(z != u and z != e_q and quot.leq(u, z) and quot.leq(z, e_q)
               for z in quot.elements):
            raise VerificationFailure("missing element is not covered by the identity")

    _verify_retract_square(
        algebra, sub_mask, cone, carrier, cone_local, primes,
        first, second, qe,
    )

    return EpiAnalysis(
        algebra=algebra,
        sub_mask=sub_mask,
        collisions=collisions,
        first_filter=first,
        second_filter=second,
        case=case,
        congruence=theta,
        first_witness=first_witness,
        second_witness=second_witness,
        gap=gap,
        quotient=quot,
        quotient_map=q_map,
        sub_quotient=sub_quot,
        sub_quotient_map=qe.sub_quotient_map,
        embedding=j_hom,
    )


def _verify_retract_square(
    algebra, sub_mask, cone, carrier, cone_local, primes, first, second, qe
):
    """Compose the retract square elementwise: going through the subalgebra
    quotient, its cone quotient, and the subspace isomorphisms agrees with
    going through the full quotient."""
    kernel = first & second
    kernel_local = frozenset(cone_local[x] for x in kernel)
    first_local = frozenset(cone_local[x] for x in first)
    sub_x = e_subspace(cone, DeductiveFilter(cone, kernel_local))
    sub_y = e_subspace(cone, DeductiveFilter(cone, first_local))

    sub_alg, inclusion = qe.sub_algebra, qe.inclusion
    b_cone, b_carrier = negative_cone(sub_alg)
    b_cone = brouwerian_reduct(b_cone)
    b_primes_local = prime_deductive_filters(b_cone, "pointed")
    b_primes = [
        frozenset(inclusion.mapping[b_carrier[i]] for i in f.members)
        for f in b_primes_local
    ]
    sub_neg = frozenset(x for x in carrier if x in sub_mask)
    trace_local = frozenset(
        i for i, x in enumerate(b_carrier)
        if inclusion.mapping[x] in first
    )
    sub_z = e_subspace(b_cone, DeductiveFilter(b_cone, trace_local))

    # i_* on dual points: intersect with the subalgebra's cone
    istar = []
    for p in range(len(primes)):
        image = primes[p] & sub_neg
        matches = [i for i, bp in enumerate(b_primes) if bp == image]
        if len(matches) != 1:
            raise VerificationFailure("prime trace is not a unique prime of the subcone")
        istar.append(matches[0])

    y_points = set(sub_y.points)
    z_points = set(sub_z.points)
    restricted = [istar[p] for p in sub_y.points]
    if len(set(restricted)) != len(restricted) or set(restricted) != z_points:
        raise VerificationFailure("trace map is not a bijection on the subspace")

    # the two cone identifications on the quotient sides
    q_cone, q_carrier = negative_cone(qe.quotient)
    q_cone = brouwerian_reduct(q_cone)
    i1 = {}
    for u in q_carrier:
        a = qe.quotient_map.mapping.index(u)
        m = qe.quotient_map.source.meet[a][qe.quotient_map.source.e]
        i1[u] = sub_x.quotient_map.mapping[cone_local[m]]
    i1_vec = [i1[u] for u in q_carrier]
    if len(set(i1_vec)) != len(i1_vec) or set(i1_vec) != set(range(sub_x.quotient.size)):
        raise VerificationFailure("cone of the quotient does not match the cone quotient")
    if not is_homomorphism(q_cone, sub_x.quotient, i1_vec):
        raise VerificationFailure("cone identification is not a homomorphism")

    bq_cone, bq_carrier = negative_cone(qe.sub_quotient)
    bq_cone = brouwerian_reduct(bq_cone)
    b_local = {x: i for i, x in enumerate(b_carrier)}
    i2 = {}
    for u in bq_carrier:
        s = qe.sub_quotient_map.mapping.index(u)
        m = sub_alg.meet[s][sub_alg.e]
        i2[u] = sub_z.quotient_map.mapping[b_local[m]]
    i2_vec = [i2[u] for u in bq_carrier]
    if len(set(i2_vec)) != len(i2_vec) or set(i2_vec) != set(range(sub_z.quotient.size)):
        raise VerificationFailure("subcone of the quotient does not match its cone quotient")
    if not is_homomorphism(bq_cone, sub_z.quotient, i2_vec):
        raise VerificationFailure("subcone identification is not a homomorphism")

    # the connecting quotient map between the two cone quotients
    arrow = {}
    for cls in range(sub_x.quotient.size):
        rep = sub_x.quotient_map.mapping.index(cls)
        arrow[cls] = sub_y.quotient_map.mapping[rep]

    # inner square: restricting a class's point set to the upper subspace
    for cls in range(sub_x.quotient.size):
        left = sub_x.point_sets[cls] & y_points
        right = sub_y.point_sets[arrow[cls]]
        if left != right:
            raise VerificationFailure("inner subspace square does not commute")

    # outer square, one element of the subquotient cone at a time
    for u in bq_carrier:
        z_set = sub_z.point_sets[i2[u]]
        left = frozenset(p for p in sub_y.points if istar[p] in z_set)
        via_j = qe.embedding.mapping[u]
        right = sub_y.point_sets[arrow[i1[via_j]]]
        if left != right:
            raise VerificationFailure("retract square does not commute")


def separating_retraction(
    algebra: FiniteAlgebra, members: Iterable[int], coatom: int
) -> tuple[Homomorphism, Homomorphism]:
    """The endomorphism that rewrites every element's witness term with the
    identity substituted for the distinguished generator, paired with the
    identity map.  It fixes the subalgebra, moves the distinguished cover of
    the identity into it, and lands inside it."""
    sub_mask = frozenset(members)
    if not is_subuniverse(algebra, sub_mask):
        raise HypothesesNotMet("C is not a subalgebra")
    if not (0 <= coatom < algebra.size):
        raise HypothesesNotMet("distinguished element out of range")
    if coatom in sub_mask:
        raise HypothesesNotMet("distinguished element already lies in C")
    e = algebra.e
    if coatom == e or not algebra.leq(coatom, e):
        raise HypothesesNotMet("distinguished element is not strictly below the identity")
    if any(z != coatom and z != e and algebra.leq(coatom, z) and algebra.leq(z, e)
           for z in algebra.elements):
        raise HypothesesNotMet("distinguished element is not covered by the identity")
    sub_neg = frozenset(x for x in sub_mask if algebra.leq(x, e))
    if subuniverse_closure(algebra, sub_neg) != sub_mask:
        raise HypothesesNotMet("C is not generated by its negative cone")
    generators = sorted(sub_neg | {coatom})
    if subuniverse_closure(algebra, generators) != frozenset(algebra.elements):
        raise HypothesesNotMet("C's cone plus the distinguished element does not generate")

    generated = generate_subalgebra(algebra, generators, distinguished=coatom)
    assignment = dict(generated.assignment)
    assignment["x"] = e
    mapping = tuple(
        eval_term(algebra, generated.witnesses[a], assignment) for a in algebra.elements
    )
    retraction = Homomorphism(algebra, algebra, mapping)
    ok = (
        is_homomorphism(algebra, algebra, mapping)
        and all(mapping[c] == c for c in sub_mask)
        and mapping[coatom] != coatom
        and set(mapping) <= sub_mask
    )
    if not ok:
        raise VerificationFailure("retraction construction failed its checks")
    return retraction, identity_homomorphism(algebra)


@dataclass(frozen=True)
class EpiCertificate:
    """Two distinct homomorphisms out of the algebra that agree on the
    subalgebra: a concrete refutation of epicity."""

    target: FiniteAlgebra
    first_map: Homomorphism
    second_map: Homomorphism
    witness: int


def refute_epic(algebra: FiniteAlgebra, members: Iterable[int]) -> EpiCertificate:
    """Produce a certificate that the subalgebra is not epic in the algebra
    relative to any variety containing the quotient (in particular the one
    the algebra generates)."""
    analysis = epi_analysis(algebra, members)
    quot = analysis.quotient
    q_map = analysis.quotient_map
    image = frozenset(analysis.embedding.mapping)
    a1q = q_map.mapping[analysis.first_witness]
    a2q = q_map.mapping[analysis.second_witness]

    if analysis.case == "nested":
        target_sub, pivot = image, a1q
    else:
        image_neg = frozenset(u for u in image if quot.leq(u, quot.e))
        closure = subuniverse_closure(quot, image_neg | {a1q})
        if a2q in closure:
            target_sub, pivot = image, a1q
        else:
            target_sub, pivot = closure, a2q

    retraction, _ = separating_retraction(quot, target_sub, pivot)
    g = compose(retraction, q_map)
    h = q_map
    witness = q_map.mapping.index(pivot)
    ok = (
        g.mapping != h.mapping
        and g.mapping[witness] != h.mapping[witness]
        and all(g.mapping[x] == h.mapping[x] for x in analysis.sub_mask)
    )
    if not ok:
        raise VerificationFailure("certificate construction failed its checks")
    return EpiCertificate(target=quot, first_map=g, second_map=h, witness=witness)


def verify_certificate(cert: EpiCertificate, members: Iterable[int]) -> bool:
    """Independent check: both maps are homomorphisms to the target, they
    agree on the subalgebra, and they differ at the witness."""
    sub = frozenset(members)
    g, h = cert.first_map, cert.second_map
    return (
        g.source == h.source
        and g.target == cert.target
        and h.target == cert.target
        and is_homomorphism(g.source, g.target, g.mapping)
        and is_homomorphism(h.source, h.target, h.mapping)
        and all(g.mapping[x] == h.mapping[x] for x in sub)
        and g.mapping[cert.witness] != h.mapping[cert.witness]
    )
