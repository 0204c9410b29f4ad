"""Finitary powerset under domination; multisets under embedding."""

import itertools
import random

import wqokit as W
from wqokit import (
    DownSet,
    FinIdeal,
    NatIdeal,
    PfIdeal,
    UpSet,
    alphabet,
    bag,
    finset,
    multiset,
    naturals,
    powerset_fin,
)
from wqokit.kernel import downward, member
from wqokit.oracle import Budget, check_presentation
from wqokit.termlang import parse_type, presentation_of

from conftest import words_up_to


class TestPowerset:
    def test_filter_intersection_is_union_of_supports(self, nat):
        pf = powerset_fin(nat)
        got = pf.if_(UpSetGen(pf, 2), UpSetGen(pf, 5))
        assert got == UpSet((finset(2, 5),))

    def test_cf_of_singleton(self, nat):
        pf = powerset_fin(nat)
        got = pf.cf(finset(2))
        assert got == DownSet((PfIdeal(DownSet((NatIdeal(1),))),))

    def test_empty_set_below_everything(self, nat):
        pf = powerset_fin(nat)
        assert pf.od(finset(), finset(9))

    def test_ci_lists_excluded_singletons(self, nat):
        pf = powerset_fin(nat)
        got = pf.ci(PfIdeal(DownSet((NatIdeal(3),))))
        assert got == UpSet((finset(4),))

    def test_ii_meets_supports(self, nat):
        pf = powerset_fin(nat)
        a = PfIdeal(DownSet((NatIdeal(3),)))
        b = PfIdeal(DownSet((W.NAT_OMEGA,)))
        assert pf.ii(a, b) == DownSet((a,))

    def test_pi_closes_the_support(self, nat):
        pf = powerset_fin(nat)
        assert pf.pi(finset(2, 4)) == PfIdeal(DownSet((NatIdeal(4),)))

    def test_hoare_quotient_fact(self, nat):
        pf = powerset_fin(nat)
        rng = random.Random(2)
        sets = [finset(*rng.sample(range(6), rng.randrange(4))) for _ in range(15)]
        for s in sets:
            for t in sets:
                assert member(pf, s, downward(pf.pi(t))) == pf.od(s, t)

    def test_oracle_agreement(self):
        t = parse_type("Pset(Nat)")
        report = check_presentation(
            presentation_of(t), t, Budget(max_elements=20, max_size=6), seed=4
        )
        assert report.passed, report.lines()

    def test_oracle_agreement_over_alphabet(self):
        t = parse_type("Pset(Fin{a,b | a<b})")
        report = check_presentation(
            presentation_of(t), t, Budget(max_elements=20, max_size=6), seed=4
        )
        assert report.passed, report.lines()


def UpSetGen(pf, n):
    return finset(n)


class TestMultiset:
    def test_permutation_equivalence(self, ab):
        m = multiset(ab)
        assert m.od(bag("a", "b"), bag("b", "a"))
        assert m.od(bag("b", "a"), bag("a", "b"))

    def test_embedding_examples(self, nat):
        m = multiset(nat)
        assert m.od(bag(1, 1, 1), bag(2, 1, 1))
        assert not m.od(bag(1, 1, 1), bag(2,))

    def test_closure_of_two_ones(self, ab):
        """The ideal named by one(a).one(b) under permutations contains
        exactly the subbags of {a,b}."""
        m = multiset(ab)
        p = m.pi(bag("a", "b"))
        inside = [b for b in all_bags("ab", 3) if m.id(m.pi(b), p)]
        assert set(inside) == {bag(), bag("a"), bag("b"), bag("a", "b")}

    def test_embedding_matches_permutation_oracle(self, ab):
        def emb(u, v):
            if len(u) > len(v):
                return False
            return any(
                all(x == y for x, y in zip(u, perm))
                for combo in itertools.combinations(range(len(v)), len(u))
                for perm in [tuple(v[i] for i in combo)]
            )

        def bag_le(s, t):
            return any(emb(p, t.items) for p in itertools.permutations(s.items))

        m = multiset(ab)
        bags = all_bags("ab", 4)
        for s in bags:
            for t in bags:
                assert m.od(s, t) == bag_le(s, t), (s, t)

    def test_oracle_agreement(self):
        t = parse_type("Mset(Fin{a,b})")
        report = check_presentation(
            presentation_of(t), t, Budget(max_elements=14, max_size=4), seed=4
        )
        assert report.passed, report.lines()


def all_bags(symbols, size):
    out = []
    for n in range(size + 1):
        for combo in itertools.combinations_with_replacement(symbols, n):
            out.append(bag(*combo))
    return sorted(set(out), key=W.term_key)
