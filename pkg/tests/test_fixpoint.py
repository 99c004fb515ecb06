import random

import pytest

from dualfix import (
    CycleReport,
    LatticeHom,
    MaxStepsExceeded,
    MonotoneMap,
    NotAnIdealOfC,
    OrderIdeal,
    QuotientNotAntisymmetric,
    algorithm1,
    bruteforce_fixpoints,
    build_poset,
    coequalizer_general,
    enumerate_ideals,
    fixpoints_via_duality,
    hom_from_dual,
    hom_quotient,
    ideal_lattice,
    is_homomorphism,
    is_monotone,
    iter_ideal_masks,
    kleene_iterate,
    lattice_from_order,
    phi_components,
)
from helpers import (
    brute_preorder_pairs,
    monotone_selfmaps,
    noniso_posets_upto,
    random_monotone_selfmap,
    random_poset,
)


def collapse_phi(two_chain):
    return is_monotone({"p": "q", "q": "q"}, two_chain, two_chain)


class TestPhiComponents:
    def test_chain_collapse_single_class(self, two_chain):
        quo = phi_components(collapse_phi(two_chain))
        assert quo.classes == (("p", "q"),)
        assert quo.class_poset.elements == ("[p]",)

    def test_antichain_swap_single_class(self, two_antichain):
        phi = is_monotone({"a": "b", "b": "a"}, two_antichain, two_antichain)
        quo = phi_components(phi)
        assert quo.classes == (("a", "b"),)

    def test_identity_gives_isomorphic_quotient(self):
        rng = random.Random(67)
        for _ in range(15):
            base = random_poset(rng, rng.randrange(0, 7))
            quo = phi_components(MonotoneMap.identity(base))
            assert all(len(c) == 1 for c in quo.classes)
            assert len(quo) == len(base)
            for x in base:
                for y in base:
                    assert base.leq(x, y) == quo.class_leq(
                        quo.class_name_of(x), quo.class_name_of(y)
                    )

    def test_antisymmetry_failure_on_a_crafted_non_monotone_map(self):
        # a<b and c<d; swapping a~d and b~c forces [a,d] and [b,c] into a
        # 2-cycle of the induced class relation.  No monotone map can do
        # this, so the bypass constructor is used.
        base = build_poset(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
        phi = MonotoneMap.unchecked({"a": "d", "d": "a", "b": "c", "c": "b"}, base, base)
        with pytest.raises(QuotientNotAntisymmetric) as exc:
            phi_components(phi)
        assert set(exc.value.payload["witness"]) == {"[a]", "[b]"}
        # the general construction instead merges everything into one class
        assert coequalizer_general(phi).classes == (("a", "b", "c", "d"),)


class TestCoequalizerGeneral:
    def test_same_results_as_components_on_examples(self, two_chain, two_antichain):
        for base, table in [
            (two_chain, {"p": "q", "q": "q"}),
            (two_antichain, {"a": "b", "b": "a"}),
            (two_chain, {"p": "p", "q": "q"}),
        ]:
            phi = is_monotone(table, base, base)
            assert coequalizer_general(phi) == phi_components(phi)

    def test_three_chain_partial_collapse(self, three_chain):
        phi = is_monotone({"0": "0", "m": "0", "1": "1"}, three_chain, three_chain)
        quo = coequalizer_general(phi)
        assert quo.classes == (("0", "m"), ("1",))
        assert quo.class_leq("[0]", "[1]")
        assert not quo.class_leq("[1]", "[0]")

    def test_identity_isomorphic_to_base(self, three_chain):
        quo = coequalizer_general(MonotoneMap.identity(three_chain))
        assert len(quo) == 3

    def test_generating_preorder_matches_brute_closure(self):
        rng = random.Random(71)
        for _ in range(40):
            base = random_poset(rng, rng.randrange(0, 7))
            phi = random_monotone_selfmap(rng, base)
            quo = coequalizer_general(phi)
            expected = brute_preorder_pairs(base, phi)
            rows = quo.gen_preorder()
            got = {
                (x, base.elements[j])
                for i, x in enumerate(base.elements)
                for j in range(len(base))
                if rows[i] >> j & 1
            }
            assert got == expected

    def test_class_order_iff_preorder(self):
        # the class relation must reflect the generating preorder exactly,
        # in both directions
        rng = random.Random(73)
        for _ in range(25):
            base = random_poset(rng, rng.randrange(1, 7))
            phi = random_monotone_selfmap(rng, base)
            quo = coequalizer_general(phi)
            pre = brute_preorder_pairs(base, phi)
            for x in base:
                for y in base:
                    assert ((x, y) in pre) == quo.class_leq(
                        quo.class_name_of(x), quo.class_name_of(y)
                    )

    def test_base_order_embeds_into_class_order(self):
        rng = random.Random(79)
        for _ in range(25):
            base = random_poset(rng, rng.randrange(0, 7))
            phi = random_monotone_selfmap(rng, base)
            quo = coequalizer_general(phi)
            for x in base:
                for y in base:
                    if base.leq(x, y):
                        assert quo.class_leq(quo.class_name_of(x), quo.class_name_of(y))

    def test_classes_partition_the_base(self):
        rng = random.Random(83)
        for _ in range(25):
            base = random_poset(rng, rng.randrange(0, 7))
            phi = random_monotone_selfmap(rng, base)
            quo = coequalizer_general(phi)
            flat = [x for c in quo.classes for x in c]
            assert sorted(flat) == sorted(base.elements)
            assert len(flat) == len(set(flat))

    def test_agreement_with_components_exhaustive_small(self):
        for base in noniso_posets_upto(3):
            for phi in monotone_selfmaps(base):
                assert phi_components(phi) == coequalizer_general(phi)


class TestFixpointsViaDuality:
    def test_chain_collapse_frozen(self, two_chain):
        fx = fixpoints_via_duality(collapse_phi(two_chain))
        assert [m.name for m in fx.iter_members()] == ["{}", "{p,q}"]
        # {p} is correctly excluded: the induced endomorphism sends it to {}
        hom = hom_from_dual(collapse_phi(two_chain))
        assert hom("{p}") == "{}"

    def test_antichain_swap_frozen(self, two_antichain):
        phi = is_monotone({"a": "b", "b": "a"}, two_antichain, two_antichain)
        fx = fixpoints_via_duality(phi)
        assert [m.name for m in fx.iter_members()] == ["{}", "{a,b}"]

    def test_identity_fixes_every_ideal(self):
        rng = random.Random(89)
        for _ in range(10):
            base = random_poset(rng, rng.randrange(0, 6))
            fx = fixpoints_via_duality(MonotoneMap.identity(base))
            assert [m.name for m in fx.iter_members()] == [
                i.name for i in enumerate_ideals(base)
            ]

    def test_count_never_builds_members(self, two_antichain):
        phi = MonotoneMap.identity(two_antichain)
        assert fixpoints_via_duality(phi).count() == 4

    def test_members_against_bruteforce_exhaustive_small(self):
        for base in noniso_posets_upto(3):
            lat = ideal_lattice(base)
            for phi in monotone_selfmaps(base):
                dual = sorted(m.name for m in fixpoints_via_duality(phi).iter_members())
                brute = sorted(bruteforce_fixpoints(hom_from_dual(phi, lat, lat)))
                assert dual == brute

    def test_members_against_bruteforce_random_medium(self):
        rng = random.Random(97)
        for _ in range(60):
            base = random_poset(rng, rng.randrange(0, 9))
            phi = random_monotone_selfmap(rng, base)
            lat = ideal_lattice(base)
            dual = sorted(m.name for m in fixpoints_via_duality(phi).iter_members())
            brute = sorted(bruteforce_fixpoints(hom_from_dual(phi, lat, lat)))
            assert dual == brute

    def test_union_map_is_injective_and_order_preserving(self):
        rng = random.Random(101)
        for _ in range(25):
            base = random_poset(rng, rng.randrange(0, 7))
            phi = random_monotone_selfmap(rng, base)
            fx = fixpoints_via_duality(phi)
            quo = fx.quotient
            pairs = []
            for qmask in iter_ideal_masks(quo.class_poset):
                union = 0
                for c in range(len(quo)):
                    if qmask >> c & 1:
                        union |= quo.member_masks[c]
                pairs.append((qmask, union))
            unions = [u for _, u in pairs]
            assert len(set(unions)) == len(unions)
            assert fx.count() == len(unions)
            for qa, ua in pairs:
                for qb, ub in pairs:
                    assert (qa & ~qb == 0) == (ua & ~ub == 0)

    def test_members_form_a_sublattice_with_bounds(self):
        rng = random.Random(103)
        for _ in range(25):
            base = random_poset(rng, rng.randrange(0, 7))
            phi = random_monotone_selfmap(rng, base)
            members = {m.mask for m in fixpoints_via_duality(phi).iter_members()}
            assert 0 in members
            assert (1 << len(base)) - 1 in members
            for a in members:
                for b in members:
                    assert a & b in members
                    assert a | b in members

    def test_source_hom_materializes(self, two_chain):
        fx = fixpoints_via_duality(collapse_phi(two_chain))
        hom = fx.source_hom()
        assert hom.table == {"{}": "{}", "{p}": "{}", "{p,q}": "{p,q}"}

    def test_empty_poset_has_single_fixpoint(self):
        base = build_poset([], [])
        fx = fixpoints_via_duality(MonotoneMap.identity(base))
        assert [m.name for m in fx.iter_members()] == ["{}"]


class TestAlgorithm1:
    @pytest.fixture
    def collapse_on_three_chain(self, three_chain):
        lat = lattice_from_order(three_chain)
        return is_homomorphism({"0": "0", "m": "0", "1": "1"}, lat, lat)

    def test_empty_ideal_gives_bottom(self, collapse_on_three_chain):
        assert algorithm1(collapse_on_three_chain, []) == "0"

    def test_full_ideal_gives_top(self, collapse_on_three_chain):
        quo = hom_quotient(collapse_on_three_chain)
        assert len(quo) == 1
        assert algorithm1(collapse_on_three_chain, quo.class_poset.elements, quotient=quo) == "1"

    def test_identity_selects_each_element(self, three_chain):
        lat = lattice_from_order(three_chain)
        ident = LatticeHom.identity(lat)
        quo = hom_quotient(ident)
        assert algorithm1(ident, ["[m]"], quotient=quo) == "m"

    def test_accepts_order_ideal_objects(self, collapse_on_three_chain):
        quo = hom_quotient(collapse_on_three_chain)
        ideal = OrderIdeal(quo.class_poset, quo.class_poset.elements)
        assert algorithm1(collapse_on_three_chain, ideal, quotient=quo) == "1"

    def test_rejects_non_ideals(self, three_chain):
        lat = lattice_from_order(three_chain)
        ident = LatticeHom.identity(lat)
        quo = hom_quotient(ident)
        # the quotient of the identity is a 2-chain of classes; its top alone
        # is not down-closed
        with pytest.raises(NotAnIdealOfC):
            algorithm1(ident, ["[1]"], quotient=quo)

    def test_enumerates_exactly_the_bruteforce_fixpoints(self):
        rng = random.Random(107)
        for _ in range(20):
            base = random_poset(rng, rng.randrange(0, 5))
            lat = ideal_lattice(base)
            phi = random_monotone_selfmap(rng, base)
            hom = hom_from_dual(phi, lat, lat)
            quo = hom_quotient(hom)
            got = sorted(
                algorithm1(hom, quo.class_poset.ids_from(qmask), quotient=quo)
                for qmask in iter_ideal_masks(quo.class_poset)
            )
            assert got == sorted(bruteforce_fixpoints(hom))
            for x in got:
                assert hom(x) == x


class TestBruteforceFixpoints:
    def test_three_chain_collapse(self, three_chain):
        lat = lattice_from_order(three_chain)
        hom = is_homomorphism({"0": "0", "m": "0", "1": "1"}, lat, lat)
        assert bruteforce_fixpoints(hom) == ("0", "1")

    def test_boolean_square_swap(self, two_antichain):
        lat = ideal_lattice(two_antichain)
        hom = is_homomorphism(
            {"{}": "{}", "{a}": "{b}", "{b}": "{a}", "{a,b}": "{a,b}"}, lat, lat
        )
        assert bruteforce_fixpoints(hom) == ("{a,b}", "{}")

    def test_identity_fixes_everything(self, three_chain):
        lat = lattice_from_order(three_chain)
        assert bruteforce_fixpoints(LatticeHom.identity(lat)) == lat.elements


class TestKleeneIterate:
    def test_bottom_is_fixed_immediately(self, two_antichain):
        lat = ideal_lattice(two_antichain)
        hom = is_homomorphism(
            {"{}": "{}", "{a}": "{b}", "{b}": "{a}", "{a,b}": "{a,b}"}, lat, lat
        )
        assert kleene_iterate(hom, lat.bot, max_steps=0) == "{}"

    def test_three_chain_one_step(self, three_chain):
        lat = lattice_from_order(three_chain)
        hom = is_homomorphism({"0": "0", "m": "0", "1": "1"}, lat, lat)
        assert kleene_iterate(hom, "m") == "0"

    def test_swap_cycles(self, two_antichain):
        lat = ideal_lattice(two_antichain)
        hom = is_homomorphism(
            {"{}": "{}", "{a}": "{b}", "{b}": "{a}", "{a,b}": "{a,b}"}, lat, lat
        )
        assert kleene_iterate(hom, "{a}") == CycleReport(entry="{a}", length=2)

    def test_max_steps_exceeded(self, three_chain):
        lat = lattice_from_order(three_chain)
        # a monotone, non-homomorphic walk needs the bypass constructor
        walk = LatticeHom.unchecked({"0": "m", "m": "1", "1": "1"}, lat, lat)
        with pytest.raises(MaxStepsExceeded):
            kleene_iterate(walk, "0", max_steps=1)
        assert kleene_iterate(walk, "0", max_steps=2) == "1"

    def test_within_lattice_size_always_concludes(self):
        rng = random.Random(109)
        for _ in range(20):
            base = random_poset(rng, rng.randrange(0, 5))
            lat = ideal_lattice(base)
            phi = random_monotone_selfmap(rng, base)
            hom = hom_from_dual(phi, lat, lat)
            for start in lat:
                result = kleene_iterate(hom, start, max_steps=len(lat))
                if isinstance(result, CycleReport):
                    assert result.length >= 2
                else:
                    assert hom(result) == result
