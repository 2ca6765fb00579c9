"""Exact-rational representability decisions and certificates."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cardinal_scale import (
    FiniteModel,
    ModelTooLarge,
    check_certificate,
    describe_constraint,
    exhaustive_check,
    solve_additive_representation,
)
from cardinal_scale.feasibility import (
    constraint_count,
    decode_constraint,
    diff_index,
    strict_index,
)


def _utilities_model(values):
    labels = tuple(f"a{i}" for i in range(len(values)))
    return FiniteModel(labels, tuple(Fraction(v) for v in values))


def _tables_equal(a: FiniteModel, b: FiniteModel) -> bool:
    n = a.size
    if b.size != n:
        return False
    for i in range(n):
        for j in range(n):
            if a.compare_indices(i, j) is not b.compare_indices(i, j):
                return False
            for k in range(n):
                for l in range(n):
                    if a.diff_compare_indices(i, j, k, l) is not (
                        b.diff_compare_indices(i, j, k, l)
                    ):
                        return False
    return True


def _perturb_one_diff(model: FiniteModel, i, j, k, l, symbol) -> FiniteModel:
    raw = model.to_raw()
    diff = [[[list(c) for c in b] for b in a] for a in raw.diff_table]
    diff[i][j][k][l] = symbol
    return FiniteModel(
        raw.labels,
        None,
        raw.strict_table,
        tuple(tuple(tuple(tuple(c) for c in b) for b in a) for a in diff),
    )


class TestConstraintIndexing:
    def test_count_covers_both_tables(self):
        assert constraint_count(3) == 9 + 81
        assert constraint_count(8) == 64 + 4096

    def test_indices_are_disjoint_and_decodable(self):
        m = _utilities_model([0, 1, 3])
        seen = set()
        n = m.size
        for i in range(n):
            for j in range(n):
                seen.add(strict_index(n, i, j))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        seen.add(diff_index(n, i, j, k, l))
        assert len(seen) == constraint_count(n)
        assert seen == set(range(constraint_count(n)))

    def test_decode_and_describe(self):
        m = _utilities_model([0, 1, 3])
        idx = strict_index(m.size, 2, 0)
        sym, coeffs = decode_constraint(m, idx)
        assert sym == ">"
        assert coeffs == {2: Fraction(1), 0: Fraction(-1)}
        assert describe_constraint(m, idx) == "u[a2] > u[a0]"
        didx = diff_index(m.size, 2, 1, 1, 0)
        assert "(u[a2] - u[a1])" in describe_constraint(m, didx)


class TestRepresentable:
    def test_equally_spaced(self):
        res = solve_additive_representation(_utilities_model([0, 1, 2]))
        assert res.status == "Representable"
        vals = res.values
        assert vals[1] - vals[0] == vals[2] - vals[1]

    def test_regenerated_table_is_identical(self):
        m = _utilities_model([0, Fraction(1, 3), 2, Fraction(7, 2)])
        res = solve_additive_representation(m)
        assert res.representable
        assert _tables_equal(m, FiniteModel(m.labels, res.values))

    def test_ties_are_preserved(self):
        m = _utilities_model([0, 1, 1, 4])
        res = solve_additive_representation(m)
        assert res.representable
        assert res.values[1] == res.values[2]
        assert _tables_equal(m, FiniteModel(m.labels, res.values))

    def test_single_alternative(self):
        res = solve_additive_representation(_utilities_model([7]))
        assert res.representable

    def test_all_tied(self):
        res = solve_additive_representation(_utilities_model([2, 2, 2]))
        assert res.representable
        assert len(set(res.values)) == 1

    def test_seeded_random_rationals(self):
        rng = random.Random(11)
        for _ in range(30):
            n = rng.randint(2, 6)
            values = [
                Fraction(rng.randint(-40, 40), rng.randint(1, 12))
                for _ in range(n)
            ]
            m = _utilities_model(values)
            res = solve_additive_representation(m)
            assert res.representable
            assert _tables_equal(m, FiniteModel(m.labels, res.values))

    @given(
        st.lists(
            st.fractions(min_value=-9, max_value=9, max_denominator=6),
            min_size=2,
            max_size=5,
        )
    )
    @settings(max_examples=25, deadline=None)
    def test_utility_models_always_representable(self, values):
        m = _utilities_model(values)
        res = solve_additive_representation(m)
        assert res.representable
        assert _tables_equal(m, FiniteModel(m.labels, res.values))


class TestInfeasible:
    def test_mirror_contradiction_yields_small_certificate(self):
        m = _utilities_model([0, 1, 3])
        bad = _perturb_one_diff(m, 2, 1, 1, 0, "<")
        res = solve_additive_representation(bad)
        assert res.status == "Infeasible"
        assert res.certificate is not None
        assert check_certificate(bad, res.certificate)
        for idx in res.certificate:
            assert describe_constraint(bad, idx)  # all indices decodable

    def test_intransitive_strict_table(self):
        m = _utilities_model([0, 1, 2])
        raw = m.to_raw()
        strict = [list(r) for r in raw.strict_table]
        # create a 3-cycle: a0 > a2 while a0 < a1 < a2
        strict[0][2], strict[2][0] = ">", "<"
        bad = FiniteModel(
            raw.labels,
            None,
            tuple(tuple(r) for r in strict),
            raw.diff_table,
        )
        res = solve_additive_representation(bad)
        assert not res.representable
        assert check_certificate(bad, res.certificate)

    def test_diagonal_tie_violation_rejected_at_validation(self):
        from cardinal_scale import InconsistentTable

        m = _utilities_model([0, 1])
        raw = m.to_raw()
        diff = [[[list(c) for c in b] for b in a] for a in raw.diff_table]
        diff[0][1][0][1] = ">"  # a pair must tie with itself
        with pytest.raises(InconsistentTable):
            FiniteModel(raw.labels, None, raw.strict_table,
                        tuple(tuple(tuple(tuple(c) for c in b) for b in a)
                              for a in diff))

    def test_shared_base_link_violation(self):
        m = _utilities_model([0, 1, 3])
        # strict says a1 > a0 but differences say (a1,a0) below the null gap
        bad = _perturb_one_diff(m, 1, 0, 0, 0, "<")
        res = solve_additive_representation(bad)
        assert not res.representable
        assert check_certificate(bad, res.certificate)

    def test_certificate_subsets_are_not_contradictory(self):
        m = _utilities_model([0, 1, 3])
        bad = _perturb_one_diff(m, 2, 1, 1, 0, "<")
        res = solve_additive_representation(bad)
        cert = res.certificate
        assert len(cert) >= 2
        for drop in range(len(cert)):
            subset = tuple(c for i, c in enumerate(cert) if i != drop)
            assert not check_certificate(bad, subset)

    def test_certificate_on_consistent_constraints_is_false(self):
        m = _utilities_model([0, 1, 3])
        idxs = (strict_index(m.size, 1, 0), strict_index(m.size, 2, 1))
        assert not check_certificate(m, idxs)


class TestSizeCap:
    def test_over_cap_raises(self):
        m = _utilities_model(list(range(9)))
        with pytest.raises(ModelTooLarge):
            solve_additive_representation(m)

    def test_cap_override(self):
        m = _utilities_model(list(range(9)))
        res = solve_additive_representation(m, cap=9)
        assert res.representable


class TestAgreementWithAxiomScan:
    """A perturbed model failing the axiom scan or the solver, never neither."""

    def test_single_entry_perturbations(self):
        rng = random.Random(23)
        m = _utilities_model([0, 1, 3, 4])
        raw = m.to_raw()
        n = m.size
        for _ in range(25):
            i, j, k, l = (rng.randrange(n) for _ in range(4))
            if (i, j) == (k, l):
                continue
            old = raw.diff_table[i][j][k][l]
            new = rng.choice([s for s in "<=>" if s != old])
            bad = _perturb_one_diff(m, i, j, k, l, new)
            axioms_fail = any(not r.passed for r in exhaustive_check(bad))
            res = solve_additive_representation(bad)
            assert axioms_fail or not res.representable
            if not res.representable:
                assert check_certificate(bad, res.certificate)
