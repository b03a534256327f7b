import pytest

from srlkit.catalog import (
    brouwerian_chain,
    brouwerian_diamond,
    c4,
    heyting_chain,
    trivial,
)
from srlkit.core import (
    brouwerian_reduct,
    classify,
    find_isomorphism,
    homomorphisms,
    subalgebra,
    validate,
)
from srlkit.duality import (
    PointedPoset,
    all_up_sets,
    canonical_iso,
    check_poset,
    depth,
    depth_of_point,
    depth_of_poset,
    dual_algebra,
    dual_space,
    dualize_morphism,
    e_subspace,
    is_esakia_morphism,
    poset_from_pairs,
    poset_round_trip,
)
from srlkit.enumeration import posets_with_top
from srlkit.errors import NoTop, NotAFilter, NotBrouwerian
from srlkit.filters import all_deductive_filters, deductive_filter, quotient


def psets_with_top(n):
    out = []
    for leq in posets_with_top(n):
        size = len(leq)
        top = next(t for t in range(size) if all(leq[a][t] for a in range(size)))
        out.append(PointedPoset(size, leq, top))
    return out


def test_dual_space_two_chain():
    space = dual_space(brouwerian_chain(2))
    assert space.size == 2 and space.top is not None
    check_poset(space)


def test_dual_space_one_element_proper_is_empty():
    space = dual_space(heyting_chain(1), "proper")
    assert space.size == 0 and space.top is None


def test_dual_space_diamond():
    space = dual_space(brouwerian_diamond())
    assert space.size == 3
    below_top = [x for x in range(3) if x != space.top]
    a, b = below_top
    assert not space.leq[a][b] and not space.leq[b][a]
    assert space.leq[a][space.top] and space.leq[b][space.top]


def test_dual_space_rejects_wrong_class():
    with pytest.raises(NotBrouwerian):
        dual_space(c4())
    with pytest.raises(NotBrouwerian):
        dual_space(brouwerian_chain(3), "proper")


def test_dual_algebra_point():
    point = poset_from_pairs(1, [], top=0)
    algebra = dual_algebra(point)
    assert algebra.size == 1 and validate(algebra).ok


def test_dual_algebra_two_chain():
    chain = poset_from_pairs(2, [(0, 1)], top=1)
    algebra = dual_algebra(chain)
    assert find_isomorphism(algebra, brouwerian_chain(2)) is not None


def test_dual_algebra_antichain_plus_top_proper():
    poset = poset_from_pairs(3, [(1, 0), (2, 0)], top=0)
    algebra = dual_algebra(poset, "proper")
    assert algebra.size == 5  # empty, {top}, two slanted ones, everything
    assert validate(algebra).ok and classify(algebra).heyting


def test_dual_algebra_needs_top_in_pointed_mode():
    with pytest.raises(NoTop):
        dual_algebra(poset_from_pairs(2, []), "pointed")


def test_canonical_iso_examples():
    for algebra in (brouwerian_chain(2), brouwerian_diamond(), trivial()):
        iso = canonical_iso(algebra)
        assert iso.is_bijective
    # the diamond has four elements and four up-sets of its 3-point dual
    assert dual_algebra(dual_space(brouwerian_diamond())).size == 4


def test_canonical_iso_heyting_proper(suite):
    for algebra in suite:
        if classify(algebra).heyting:
            canonical_iso(algebra, "proper")


def test_round_trip_brouwerian_size_8():
    from srlkit.enumeration import enumerate_models

    for algebra in enumerate_models("brouwerian", 8, bound=8):
        canonical_iso(algebra)  # verified internally, raises on failure


def test_poset_round_trip_size_6():
    for poset in psets_with_top(6):
        poset_round_trip(poset)


def test_dualize_identity():
    algebra = brouwerian_chain(3)
    ident = homomorphisms(algebra, algebra, partial={0: 0, 1: 1, 2: 2})[0]
    m = dualize_morphism(ident)
    assert m.mapping == tuple(range(3))


def test_dualize_inclusion_collides():
    algebra = brouwerian_chain(4)
    sub, inclusion = subalgebra(algebra, [0, 2, 3])
    m = dualize_morphism(inclusion)
    assert len(set(m.mapping)) < len(m.mapping)  # two prime filters trace equally


def test_dual_surjective_iff_injective(suite):
    # quotient covers dualize to injections; inclusions dualize to surjections
    from srlkit.cones import all_subuniverses

    for algebra in suite:
        if algebra.size > 5 or not classify(algebra).brouwerian or algebra.bottom is not None:
            continue
        for flt in all_deductive_filters(algebra):
            q, cover = quotient(algebra, flt)
            m = dualize_morphism(cover)
            assert len(set(m.mapping)) == m.source.size  # injective
            # image is an up-set of the codomain
            image = frozenset(m.mapping)
            assert m.target.up_set(image)
        for mask in all_subuniverses(algebra):
            sub, inclusion = subalgebra(algebra, mask)
            m = dualize_morphism(inclusion)
            assert set(m.mapping) == set(range(m.target.size))  # surjective


def test_esakia_condition_on_dualized_morphisms(suite):
    for algebra in suite:
        if algebra.size > 4 or not classify(algebra).brouwerian or algebra.bottom is not None:
            continue
        for codomain in (brouwerian_chain(2), brouwerian_chain(3)):
            for hom in homomorphisms(algebra, codomain):
                m = dualize_morphism(hom)
                assert is_esakia_morphism(m.source, m.target, m.mapping)


def test_is_esakia_morphism_rejects_non_bounded_maps():
    # isotone but the image's up-set is not covered: 2-chain into 3-chain
    # bottom, skipping the middle
    two = poset_from_pairs(2, [(0, 1)], top=1)
    three = poset_from_pairs(3, [(0, 1), (0, 2), (1, 2)], top=2)
    assert not is_esakia_morphism(two, three, (0, 2))
    assert is_esakia_morphism(two, three, (1, 2))


def test_e_subspace_least_filter_is_whole_space():
    algebra = brouwerian_chain(4)
    es = e_subspace(algebra, deductive_filter(algebra, {3}))
    assert es.poset.size == dual_space(algebra).size
    assert es.quotient.size == 4


def test_e_subspace_upper_filter():
    algebra = brouwerian_chain(4)
    es = e_subspace(algebra, deductive_filter(algebra, {2, 3}))
    assert es.poset.size == 3 and es.quotient.size == 3


def test_e_subspace_improper_filter_is_point():
    algebra = brouwerian_chain(4)
    es = e_subspace(algebra, deductive_filter(algebra, set(range(4))))
    assert es.poset.size == 1 and es.quotient.size == 1


def test_e_subspace_tower_square(suite):
    for algebra in suite:
        if algebra.size > 5 or not classify(algebra).brouwerian or algebra.bottom is not None:
            continue
        filters = all_deductive_filters(algebra)
        for f in filters:
            for g in filters:
                if f.members <= g.members:
                    e_subspace(algebra, f, chain_filter=g)  # raises on failure


def test_e_subspace_rejects_non_filter():
    algebra = brouwerian_chain(4)
    from srlkit.filters import DeductiveFilter

    with pytest.raises(NotAFilter):
        e_subspace(algebra, DeductiveFilter(algebra, frozenset({0})))
    with pytest.raises(NotAFilter):
        # an extension chain must actually extend
        e_subspace(
            algebra,
            deductive_filter(algebra, {1, 2, 3}),
            chain_filter=deductive_filter(algebra, {3}),
        )


def test_depth_point_of_top_is_zero():
    for poset in psets_with_top(4):
        assert depth_of_point(poset, poset.top) == 0


def test_depth_examples():
    assert depth(c4()) == 1
    for n in (1, 2, 4, 6):
        assert depth(brouwerian_chain(n)) == n - 1
    assert depth(trivial()) == 0
    assert depth(brouwerian_diamond()) == 1


def test_depth_heyting_matches_reduct(suite):
    # bounded algebras take their depth from the unbounded reduct; the
    # proper-mode dual (no top) counts chains by points and agrees
    for algebra in suite:
        if not classify(algebra).heyting:
            continue
        reduct = brouwerian_reduct(algebra)
        pointed = depth_of_poset(dual_space(reduct, "pointed"))
        proper = depth_of_poset(dual_space(algebra, "proper"))
        assert depth(algebra) == pointed == proper
        # the pointed space counted by points exceeds the pointed depth by 1
        space = dual_space(reduct, "pointed")
        as_unpointed = PointedPoset(space.size, space.leq, None)
        assert depth_of_poset(as_unpointed) == pointed + 1


def test_depth_antitone_along_quotients(suite):
    for algebra in suite:
        if algebra.size > 5:
            continue
        for flt in all_deductive_filters(algebra):
            q, _ = quotient(algebra, flt)
            assert depth(q) <= depth(algebra)


def test_enumeration_closed_under_duality(brouwerian6):
    for algebra in brouwerian6:
        double = dual_algebra(dual_space(algebra))
        assert find_isomorphism(algebra, double) is not None


def test_up_sets_deterministic():
    poset = poset_from_pairs(3, [(1, 0), (2, 0)], top=0)
    ups = all_up_sets(poset, include_empty=True)
    assert ups[0] == frozenset()
    assert ups == sorted(ups, key=lambda s: sum(1 << x for x in s))


def test_dualize_morphism_proper_mode():
    algebra = heyting_chain(3)
    q, cover = quotient(algebra, deductive_filter(algebra, {1, 2}))
    m = dualize_morphism(cover, "proper")
    assert is_esakia_morphism(m.source, m.target, m.mapping, pointed=False)
    assert len(set(m.mapping)) == m.source.size  # dual of a surjection embeds


def test_e_subspace_on_bounded_input_requires_reduct():
    with pytest.raises(NotBrouwerian):
        e_subspace(heyting_chain(3), deductive_filter(heyting_chain(3), {2}))
    reduct = brouwerian_reduct(heyting_chain(3))
    es = e_subspace(reduct, deductive_filter(reduct, {1, 2}))
    assert es.quotient.size == 2
