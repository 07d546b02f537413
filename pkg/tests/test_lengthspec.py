import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zal import lengthspec as ls
from zal import oracles


class TestGroupSpec:
    def test_invariants(self):
        assert ls.group_invariants(ls.GroupSpec.principal2()) == (0, 3, 6)
        assert ls.group_invariants(ls.GroupSpec.gamma0(11)) == (1, 2, 12)
        assert ls.group_invariants(ls.GroupSpec.gamma1(11)) == (1, 10, 60)
        assert ls.group_invariants(ls.GroupSpec.full()) == (0, 1, 1)

    def test_gamma0_13_genus0(self):
        assert ls.group_invariants(ls.GroupSpec.gamma0(13)) == (0, 2, 14)

    def test_level_validation(self):
        with pytest.raises(ValueError):
            ls.GroupSpec.gamma0(12)
        with pytest.raises(ValueError):
            ls.GroupSpec.gamma0(7)
        with pytest.raises(ValueError):
            ls.GroupSpec(ls.GroupKind.FULL, p=11)

    def test_torsion_flags(self):
        assert ls.GroupSpec.principal2().torsion_free
        assert ls.GroupSpec.gamma0(11).torsion_free
        assert not ls.GroupSpec.gamma0(13).torsion_free
        assert ls.GroupSpec.gamma1(13).torsion_free
        assert not ls.GroupSpec.full().torsion_free

    def test_exponent_pipeline_admissibility(self):
        assert ls.GroupSpec.principal2().exponents_admissible()
        assert ls.GroupSpec.gamma0(11).exponents_admissible()
        assert ls.GroupSpec.gamma1(13).exponents_admissible()
        assert not ls.GroupSpec.gamma0(13).exponents_admissible()
        assert not ls.GroupSpec.full().exponents_admissible()


class TestClassNumber:
    def test_fundamental_cases(self):
        # brute-force reduction-cycle values, fixed by hand enumeration
        assert ls.class_number_indefinite(5) == 1
        assert ls.class_number_indefinite(12) == 2
        assert ls.class_number_indefinite(32) == 3
        assert ls.class_number_indefinite(45) == 3

    def test_square_rejected(self):
        with pytest.raises(ValueError):
            ls.class_number_indefinite(4)
        with pytest.raises(ValueError):
            ls.class_number_indefinite(7)   # 3 mod 4
        with pytest.raises(ValueError):
            ls.class_number_indefinite(-8)

    def test_cycle_partition_covers_reduced_forms(self):
        for D in (5, 8, 12, 13, 60, 140, 316):
            forms = ls.reduced_forms(D)
            cycles = ls.form_cycles(forms, D)
            assert sorted(f for c in cycles for f in c) == sorted(forms)
            for cyc in cycles:
                assert ls.rho_step(cyc[-1], D) == cyc[0]


class TestModularSpectrum:
    def test_trace3_entry(self):
        sp = ls.modular_spectrum(3)
        assert len(sp.entries) == 1
        e = sp.entries[0]
        assert e.trace == 3 and e.multiplicity == 1
        assert e.length == pytest.approx(2 * math.acosh(1.5), abs=1e-15)
        assert e.length == pytest.approx(1.9248473002384139, abs=1e-13)

    def test_empty_below_three(self):
        assert ls.modular_spectrum(2).entries == ()

    def test_word_oracle_through_12(self):
        words = oracles.word_class_counts(12)
        prod = {e.trace: e.multiplicity for e in ls.modular_spectrum(12).entries}
        assert words == prod

    def test_counting_function_monotone(self):
        # trace 34 >= 2 cosh(7/2), so the spectrum is complete to length 7
        sp = ls.modular_spectrum(34)
        grid = [sp.counting(L) for L in [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]]
        assert grid == sorted(grid)
        assert sp.counting(7.0) == oracles_count_below(7.0)

    @settings(max_examples=12, deadline=None)
    @given(st.integers(min_value=3, max_value=16), st.integers(min_value=3, max_value=16))
    def test_merging_invariance(self, t1, t2):
        lo, hi = sorted((t1, t2))
        assert ls.modular_spectrum(hi).filtered(lo).entries == \
            ls.modular_spectrum(lo).entries


def oracles_count_below(L: float) -> int:
    """Word-oracle count of primitive classes with length <= L."""
    tmax = int(2 * math.cosh(L / 2)) + 1
    counts = oracles.word_class_counts(tmax)
    return sum(m for t, m in counts.items() if 2 * math.acosh(t / 2) <= L)


class TestAmbientClasses:
    def test_representatives_have_right_trace_and_form(self):
        for t in range(3, 15):
            for M in ls.ambient_classes(t):
                assert M[0] + M[3] == t
                assert M[0] * M[3] - M[1] * M[2] == 1

    def test_representatives_pairwise_nonconjugate(self):
        for t in (6, 7, 10, 12):
            reps = ls.ambient_classes(t)
            for i in range(len(reps)):
                for j in range(i + 1, len(reps)):
                    assert oracles.ambient_conjugator(reps[i], reps[j]) is None

    def test_representatives_primitive(self):
        full = ls.GroupSpec.full()
        for t in (7, 14):  # traces where proper powers of the same trace exist
            for M in ls.ambient_classes(t):
                assert not oracles.is_power_in_group(M, full)


class TestSubgroupSpectrum:
    def test_full_group_lift_is_identity(self):
        assert ls.subgroup_spectrum(ls.GroupSpec.full(), 14).entries == \
            ls.modular_spectrum(14).entries

    def test_principal2_bruteforce(self):
        spec = ls.GroupSpec.principal2()
        bf = oracles.bruteforce_subgroup_counts(spec, 10, 60)
        prod = {e.trace: e.multiplicity for e in ls.subgroup_spectrum(spec, 10).entries}
        assert bf == prod

    def test_gamma0_11_bruteforce(self):
        spec = ls.GroupSpec.gamma0(11)
        bf = oracles.bruteforce_subgroup_counts(spec, 8, 200)
        prod = {e.trace: e.multiplicity for e in ls.subgroup_spectrum(spec, 8).entries}
        assert bf == prod

    def test_lengths_are_multiples_of_ambient(self):
        amb = {e.trace: e.length for e in ls.modular_spectrum(12).entries}
        for spec in (ls.GroupSpec.principal2(), ls.GroupSpec.gamma1(11)):
            for e in ls.subgroup_spectrum(spec, 12).entries:
                assert any(
                    abs(e.length - k * l0) < 1e-12 and ls.trace_of_power(t0, k) == e.trace
                    for t0, l0 in amb.items() for k in range(1, 9))

    def test_class_representatives_live_in_subgroup(self):
        spec = ls.GroupSpec.gamma0(11)
        reps = ls.subgroup_class_representatives(spec, 8)
        prod = {e.trace: e.multiplicity for e in ls.subgroup_spectrum(spec, 8).entries}
        assert {t: len(v) for t, v in reps.items()} == prod
        for t, mats in reps.items():
            for W in mats:
                assert ls.contains(spec, W) and W[0] + W[3] == t

    def test_orbit_sizes_divide_coset_count(self):
        spec = ls.GroupSpec.principal2()
        _, _, m = ls.group_invariants(spec)
        for t in range(3, 9):
            for M in ls.ambient_classes(t):
                perm = ls.coset_permutation(spec, M)
                assert sum(ls._orbit_lengths(perm)) == m


class TestCosetTables:
    @pytest.mark.parametrize("spec", [ls.GroupSpec.principal2(),
                                      ls.GroupSpec.gamma0(11),
                                      ls.GroupSpec.gamma1(11)])
    def test_table_size_and_labels(self, spec):
        labels, index, reps = ls._coset_table(spec)
        _, _, m = ls.group_invariants(spec)
        assert len(labels) == len(set(labels)) == m
        for lab, rep in zip(labels, reps):
            assert ls._label(spec, rep) == lab
            assert rep[0] * rep[3] - rep[1] * rep[2] == 1

    def test_label_action_matches_multiplication(self):
        spec = ls.GroupSpec.gamma1(11)
        labels, _, reps = ls._coset_table(spec)
        M = ls.ambient_classes(5)[0]
        for lab, rep in list(zip(labels, reps))[::7]:
            assert ls._label_act(spec, lab, M) == ls._label(spec, ls.mat_mul(rep, M))


class TestCSV:
    def test_header_and_precision(self):
        text = ls.spectrum_to_csv(ls.modular_spectrum(4))
        lines = text.strip().split("\n")
        assert lines[0] == "trace,length,multiplicity"
        assert lines[1].startswith("3,1.9248473002384139")
        assert lines[2].split(",")[2] == "2"

    def test_empty_spectrum_has_header_only(self):
        text = ls.spectrum_to_csv(ls.subgroup_spectrum(ls.GroupSpec.gamma0(11), 2))
        assert text == "trace,length,multiplicity\n"


class TestConjugacyOracle:
    def test_conjugates_detected(self):
        spec = ls.GroupSpec.principal2()
        reps = ls.subgroup_class_representatives(spec, 6)[6]
        g = (1, 2, 0, 1)  # an element of the subgroup
        for W in reps:
            conj = ls.mat_mul(ls.mat_mul(g, W), ls.mat_inv(g))
            assert oracles.gamma_conjugate(W, conj, spec)

    def test_distinct_classes_separated(self):
        spec = ls.GroupSpec.principal2()
        reps = ls.subgroup_class_representatives(spec, 6)[6]
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                assert not oracles.gamma_conjugate(reps[i], reps[j], spec)

    def test_ambient_conjugate_but_not_in_subgroup(self):
        # two level-2 classes over the same ambient class are ambient-conjugate
        spec = ls.GroupSpec.principal2()
        reps = ls.subgroup_class_representatives(spec, 6)[6]
        found_pair = False
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if oracles.ambient_conjugator(reps[i], reps[j]) is not None:
                    found_pair = True
        assert found_pair
