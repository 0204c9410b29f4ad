"""Ground presentations: finite QOs, naturals, CNF ordinals."""

import itertools
import random

import pytest

import wqokit as W
from wqokit import (
    CNF_OMEGA,
    CNF_ONE,
    CNF_ZERO,
    CnfOrdinal,
    ConstructionError,
    DownSet,
    FinIdeal,
    FiniteQoSpec,
    MalformedOrdinal,
    NatIdeal,
    OrdCut,
    OutOfUniverse,
    UpSet,
    alphabet,
    cnf_from_int,
    cnf_leq,
    cnf_omega_power,
    cnf_succ,
    finite_qo,
    naturals,
    ordinal,
)
from wqokit.oracle import Budget, check_presentation, enumerate_elements
from wqokit.termlang import TNat, TOrd, parse_type


class TestFiniteQo:
    def test_rejects_duplicate_symbols(self):
        with pytest.raises(ConstructionError):
            finite_qo(FiniteQoSpec(("a", "a")))

    def test_rejects_dangling_pair(self):
        with pytest.raises(ConstructionError):
            finite_qo(FiniteQoSpec(("a", "b"), (("a", "z"),)))

    def test_discrete_ii_is_empty_unless_equal(self, abc):
        a, b = FinIdeal("a"), FinIdeal("b")
        assert abc.ii(a, b) == DownSet()
        assert abc.ii(a, a) == DownSet((a,))

    def test_discrete_cf(self, abc):
        assert abc.cf("a") == DownSet((FinIdeal("b"), FinIdeal("c")))

    def test_chain_cf(self):
        chain = finite_qo(FiniteQoSpec(("a", "b"), (("a", "b"),)))
        # extensional complement of the filter above b over two elements
        want = [s for s in ("a", "b") if not chain.od("b", s)]
        assert want == ["a"]
        assert chain.cf("b") == DownSet((FinIdeal("a"),))

    def test_equivalence_classes_share_representative(self):
        qo = finite_qo(FiniteQoSpec(("a", "b"), (("a", "b"), ("b", "a"))))
        assert qo.pi("a") == qo.pi("b") == FinIdeal("a")

    def test_all_operations_exhaustively(self):
        # complete check over every quasi-order on three symbols would be
        # large; a sampled family of closure-generated ones is exact
        rng = random.Random(7)
        symbols = ("a", "b", "c")
        for _ in range(25):
            pairs = tuple(
                (x, y)
                for x in symbols
                for y in symbols
                if x != y and rng.random() < 0.4
            )
            qo = finite_qo(FiniteQoSpec(symbols, pairs))
            report = check_presentation(
                qo, elements=list(symbols), seed=1, subject=f"fin{pairs}"
            )
            assert report.passed, report.lines()


class TestNaturals:
    def test_cf_golden(self, nat):
        assert nat.cf(4) == DownSet((NatIdeal(3),))
        assert nat.cf(0) == DownSet()

    def test_ci_golden(self, nat):
        assert nat.ci(W.NAT_OMEGA) == UpSet()
        assert nat.ci(NatIdeal(3)) == UpSet((4,))

    def test_if_is_max(self, nat):
        assert nat.if_(3, 5) == UpSet((5,))

    def test_ii_is_min_with_omega_absorbing(self, nat):
        assert nat.ii(NatIdeal(4), W.NAT_OMEGA) == DownSet((NatIdeal(4),))

    def test_oracle_agreement_at_64(self, nat):
        report = check_presentation(
            nat, TNat(), Budget(max_elements=64, max_size=64), seed=3
        )
        assert report.passed, report.lines()


def cnf(text):
    from wqokit.termlang import parse_value

    return parse_value(text, TOrd(cnf_omega_power(CNF_OMEGA, 2)))


class TestCnf:
    def test_total_order_samples(self):
        w2 = cnf_omega_power(cnf_from_int(2))
        chain = [CNF_ZERO, CNF_ONE, cnf_from_int(5), CNF_OMEGA,
                 cnf_succ(CNF_OMEGA), cnf_omega_power(CNF_ONE, 2), w2]
        for i, a in enumerate(chain):
            for j, b in enumerate(chain):
                assert cnf_leq(a, b) == (i <= j)

    def test_coefficient_monotonicity(self):
        assert cnf_leq(CNF_OMEGA, CnfOrdinal(((CNF_ONE, 2),)))

    def test_omega_tower_comparison(self):
        ww = cnf_omega_power(CNF_OMEGA)
        small = CnfOrdinal(((CNF_ONE, 5), (CNF_ZERO, 3)))  # w*5+3
        assert not cnf_leq(ww, small)
        assert cnf_leq(small, ww)

    def test_zero_is_least(self):
        for a in (CNF_ZERO, CNF_ONE, CNF_OMEGA, cnf_omega_power(CNF_OMEGA)):
            assert cnf_leq(CNF_ZERO, a)

    def test_validation_rejects_bad_forms(self):
        with pytest.raises(MalformedOrdinal):
            cnf_leq(CnfOrdinal(((CNF_ZERO, 0),)), CNF_ZERO)
        with pytest.raises(MalformedOrdinal):
            cnf_leq(CnfOrdinal(((CNF_ZERO, 1), (CNF_ONE, 1))), CNF_ZERO)

    def test_total_transitive_on_random_samples(self):
        rng = random.Random(11)
        pool = [a for s in range(6) for a in W.base.cnfs_of_size(s)] if hasattr(W, "base") else []
        from wqokit.base import cnfs_of_size

        pool = [a for s in range(6) for a in cnfs_of_size(s)]
        for _ in range(300):
            a, b, c = (rng.choice(pool) for _ in range(3))
            assert cnf_leq(a, b) or cnf_leq(b, a)  # total
            if cnf_leq(a, b) and cnf_leq(b, a):
                assert a == b  # antisymmetric up to structure
            if cnf_leq(a, b) and cnf_leq(b, c):
                assert cnf_leq(a, c)


class TestOrdinalPresentation:
    def test_zero_universe_rejected(self):
        with pytest.raises(ConstructionError):
            ordinal(CNF_ZERO)

    def test_cf_is_the_cut(self):
        w2 = ordinal(cnf_omega_power(cnf_from_int(2)))
        assert w2.cf(CNF_OMEGA) == DownSet((OrdCut(CNF_OMEGA),))
        assert w2.cf(CNF_ZERO) == DownSet()

    def test_ci_of_cut_is_filter_at_bound(self):
        w2 = ordinal(cnf_omega_power(cnf_from_int(2)))
        assert w2.ci(OrdCut(CNF_OMEGA)) == UpSet((CNF_OMEGA,))
        assert w2.ci(OrdCut(cnf_omega_power(cnf_from_int(2)))) == UpSet()

    def test_out_of_universe_error(self):
        five = ordinal(cnf_from_int(5))
        with pytest.raises(OutOfUniverse):
            five.pi(cnf_from_int(7))

    def test_matches_naturals_extensionally(self, nat):
        """omega as an ordinal and the naturals agree on every operation
        within budget, despite different ideal encodings."""
        om = ordinal(CNF_OMEGA)
        budget = list(range(20))
        for a in range(8):
            for b in range(8):
                assert om.od(cnf_from_int(a), cnf_from_int(b)) == (a <= b)
        for x in range(8):
            nat_cf = {y for y in budget if any(
                nat.id(nat.pi(y), i) for i in nat.cf(x).ideals)}
            om_cf = {y for y in budget if any(
                om.id(om.pi(cnf_from_int(y)), i) for i in om.cf(cnf_from_int(x)).ideals)}
            assert nat_cf == om_cf

    def test_oracle_agreement(self):
        t = parse_type("Ord[w^2]")
        from wqokit.termlang import presentation_of

        report = check_presentation(
            presentation_of(t), t, Budget(max_elements=64, max_size=8), seed=5
        )
        assert report.passed, report.lines()


class TestEnumeration:
    def test_ordinal_enumerator_is_fair(self):
        om2 = ordinal(cnf_omega_power(cnf_from_int(2)))
        first = list(itertools.islice(om2.enumerator(), 12))
        assert cnf_from_int(0) in first
        assert CNF_OMEGA in first

    def test_finite_ordinal_enumerator_terminates(self):
        five = ordinal(cnf_from_int(5))
        assert list(five.enumerator()) == [cnf_from_int(i) for i in range(5)]
