import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

import dncap as d
from conftest import dyck, golden_mean_system, mem_equal, mem_unequal, rll_system
from oracles import LN_GOLDEN, bisect_root


class TestSolveLevelRate:
    @pytest.mark.parametrize("level", [1, 5, 20])
    def test_equal_weights_pin_log_two(self, level):
        solution = d.solve_level_rate(mem_equal(), level)
        assert abs(solution.rate - math.log(2)) < 1e-9
        assert solution.support_size == 2 ** level

    def test_unequal_weights_level_one(self):
        solution = d.solve_level_rate(mem_unequal(), 1)
        assert abs(solution.rate - LN_GOLDEN) < 1e-9

    def test_dyck_level_two_by_hand(self):
        # support is {"((", "()"}, both of weight 2, so 2 e^{-2s} = 1
        paths = d.enumerate_level_paths(dyck(), 2)
        assert [(p, w) for p, w in paths] == [
            (("(", "("), 2), (("(", ")"), 2),
        ]
        solution = d.solve_level_rate(dyck(), 2)
        assert abs(solution.rate - math.log(2) / 2) < 1e-12

    @pytest.mark.parametrize(
        "factory,level",
        [(golden_mean_system, 7), (lambda: rll_system(1, 3), 9), (dyck, 12)],
    )
    def test_unit_weight_identity(self, factory, level):
        solution = d.solve_level_rate(factory(), level)
        assert abs(
            solution.rate - math.log(solution.support_size) / level
        ) < 1e-9

    @pytest.mark.parametrize(
        "factory,level", [(mem_unequal, 6), (golden_mean_system, 6), (dyck, 8)],
    )
    def test_root_certificate_and_entropy_identity(self, factory, level):
        system = factory()
        solution = d.solve_level_rate(system, level)
        buckets = d.level_support(system, level)
        partition = sum(
            c * math.exp(-float(w) * solution.rate) for w, c in buckets.items()
        )
        assert abs(partition - 1.0) <= 1e-10
        assert solution.entropy == pytest.approx(
            solution.rate * solution.avg_weight, rel=1e-9
        )

    def test_singleton_support_short_circuits(self):
        system = d.make_memoryless(d.symbols({"a": "7/2"}))
        solution = d.solve_level_rate(system, 4)
        assert solution.rate == 0.0
        assert solution.avg_weight == 14.0

    def test_budget_is_enforced(self):
        with pytest.raises(d.BudgetExceededError):
            d.solve_level_rate(dyck(), 30, budget=10)

    def test_inexact_weights_are_accepted_by_the_analytic_route(self):
        # exact enumeration refuses floats, the level solver does not
        system = d.make_memoryless(
            (d.Symbol("a", 1.0), d.Symbol("b", math.sqrt(2.0))),
        )
        solution = d.solve_level_rate(system, 3)
        buckets = d.level_support(system, 3)
        partition = sum(
            c * math.exp(-w * solution.rate) for w, c in buckets.items()
        )
        assert abs(partition - 1.0) <= 1e-10


class TestMaxentPmf:
    def test_uniform_on_equal_weights(self):
        rate = d.solve_level_rate(mem_equal(), 3).rate
        pmf = d.maxent_pmf(mem_equal(), 3, rate)
        assert len(pmf.probs) == 8
        assert all(p == pytest.approx(1 / 8, abs=1e-12) for p in pmf.probs.values())

    def test_golden_ratio_probabilities(self):
        system = mem_unequal()
        rate = d.solve_level_rate(system, 1).rate
        pmf = d.maxent_pmf(system, 1, rate)
        golden = (1 + math.sqrt(5)) / 2
        assert pmf.probs[("0",)] == pytest.approx(1 / golden, abs=1e-9)
        assert pmf.probs[("1",)] == pytest.approx(1 / golden ** 2, abs=1e-9)

    def test_dyck_level_two_is_fair(self):
        rate = d.solve_level_rate(dyck(), 2).rate
        pmf = d.maxent_pmf(dyck(), 2, rate)
        assert all(p == pytest.approx(0.5, abs=1e-12) for p in pmf.probs.values())

    def test_equal_weight_paths_get_equal_probability(self):
        system = golden_mean_system()
        rate = d.solve_level_rate(system, 5).rate
        pmf = d.maxent_pmf(system, 5, rate)
        assert len(set(round(p, 14) for p in pmf.probs.values())) == 1

    def test_stale_rate_is_an_error(self):
        rate = d.solve_level_rate(mem_unequal(), 2).rate
        with pytest.raises(ValueError, match="stale"):
            d.maxent_pmf(mem_unequal(), 2, rate + 0.05)


class TestEntropyAndAvgWeight:
    def test_uniform_cube(self):
        paths = d.enumerate_level_paths(mem_equal(), 3)
        pmf = d.LevelPmf(
            level=3,
            probs={labels: 0.125 for labels, _ in paths},
            weights={labels: w for labels, w in paths},
        )
        entropy, avg = d.entropy_and_avg_weight(pmf)
        assert entropy == pytest.approx(3 * math.log(2), abs=1e-12)
        assert avg == pytest.approx(3.0, abs=1e-12)

    def test_solved_maxent_pmf_reproduces_uniform_cube(self):
        rate = d.solve_level_rate(mem_equal(), 3).rate
        entropy, avg = d.entropy_and_avg_weight(d.maxent_pmf(mem_equal(), 3, rate))
        assert entropy == pytest.approx(3 * math.log(2), abs=1e-9)
        assert avg == pytest.approx(3.0, abs=1e-9)

    def test_golden_ratio_values(self):
        system = mem_unequal()
        rate = d.solve_level_rate(system, 1).rate
        entropy, avg = d.entropy_and_avg_weight(d.maxent_pmf(system, 1, rate))
        # frozen from the closed form H = R * L with L = (phi + 2)/(phi + 1)
        assert entropy == pytest.approx(0.6650183864440036, abs=1e-9)
        assert avg == pytest.approx(1.3819660112501049, abs=1e-9)
        assert entropy / avg == pytest.approx(rate, abs=1e-12)

    def test_point_mass(self):
        pmf = d.LevelPmf(
            level=3,
            probs={("1", "1", "0"): 1.0, ("0", "0", "0"): 0.0},
            weights={("1", "1", "0"): Fraction(5), ("0", "0", "0"): Fraction(3)},
        )
        entropy, avg = d.entropy_and_avg_weight(pmf)
        assert entropy == 0.0
        assert avg == 5.0

    def test_malformed_pmf(self):
        pmf = d.LevelPmf(
            level=1, probs={("a",): 0.7}, weights={("a",): Fraction(1)},
        )
        with pytest.raises(ValueError, match="sum"):
            d.entropy_and_avg_weight(pmf)
        negative = d.LevelPmf(
            level=1,
            probs={("a",): 1.5, ("b",): -0.5},
            weights={("a",): Fraction(1), ("b",): Fraction(1)},
        )
        with pytest.raises(ValueError, match="negative"):
            d.entropy_and_avg_weight(negative)


class TestRateEstimate:
    def test_memoryless_levels_are_constant(self):
        estimate, levels = d.maxent_rate_estimate(mem_unequal(), 10)
        rates = [sol.rate for sol in levels]
        assert max(abs(r - rates[0]) for r in rates) <= 1e-10
        assert estimate.value == pytest.approx(LN_GOLDEN, abs=1e-9)

    def test_equal_weights_constant_log_two(self):
        estimate, levels = d.maxent_rate_estimate(mem_equal(), 10)
        assert all(abs(sol.rate - math.log(2)) < 1e-9 for sol in levels)

    def test_dyck_rates_climb_toward_log_two(self):
        estimate, levels = d.maxent_rate_estimate(dyck(), 16)
        rates = [sol.rate for sol in levels]
        assert rates[-1] == pytest.approx(math.log(math.comb(16, 8)) / 16, abs=1e-9)
        assert all(b >= a - 0.01 for a, b in zip(rates, rates[1:]))
        assert estimate.value < math.log(2)

    def test_budget_exhaustion_reports_partial_sequence(self):
        estimate, levels = d.maxent_rate_estimate(dyck(), 30, budget=300)
        assert 1 <= len(levels) < 30
        assert estimate.value > 0

    def test_lmax_validation(self):
        with pytest.raises(ValueError):
            d.maxent_rate_estimate(mem_equal(), 1)


class TestKlGap:
    def test_gap_zero_at_the_optimum(self):
        system = mem_unequal()
        solution = d.solve_level_rate(system, 2)
        pmf = d.maxent_pmf(system, 2, solution.rate)
        gap, rate = d.kl_gap(pmf, system, 2)
        assert gap == 0.0
        assert abs(rate - solution.rate) <= 1e-10

    def test_fair_coin_against_golden_ratio(self):
        system = mem_unequal()
        pmf = d.LevelPmf(
            level=1,
            probs={("0",): 0.5, ("1",): 0.5},
            weights={("0",): Fraction(1), ("1",): Fraction(2)},
        )
        gap, rate = d.kl_gap(pmf, system, 1)
        assert rate == pytest.approx(math.log(2) / 1.5, abs=1e-12)
        assert gap == pytest.approx(0.02867055702946006, abs=1e-9)
        assert rate < d.solve_level_rate(system, 1).rate

    def test_biased_coin_on_equal_weights(self):
        system = mem_equal()
        pmf = d.LevelPmf(
            level=1,
            probs={("0",): 0.9, ("1",): 0.1},
            weights={("0",): Fraction(1), ("1",): Fraction(1)},
        )
        gap, rate = d.kl_gap(pmf, system, 1)
        assert rate == pytest.approx(0.3250829733914482, abs=1e-12)
        assert rate < math.log(2)
        assert gap > 0

    def test_mass_outside_support_rejected(self):
        system = golden_mean_system()
        pmf = d.LevelPmf(
            level=2,
            probs={("1", "1"): 1.0},
            weights={("1", "1"): Fraction(2)},
        )
        with pytest.raises(ValueError, match="outside"):
            d.kl_gap(pmf, system, 2)


class TestRepresentationIndependence:
    """One channel, two branch decompositions: alternating strings over a, b.

    The single-character tree has exactly one path per depth.  The block tree
    reaches the same strings through two chains of two-character branches
    (odd lengths via "a" then "ba" blocks, even lengths via "ab" blocks), so
    its depth-l support has two paths.  The per-level rates of the two
    decompositions must approach each other; both capacities are zero.
    """

    @staticmethod
    def char_tree():
        fsm = d.WeightedFsm(
            2, 0, ((0, d.Symbol("a", 1), 1), (1, d.Symbol("b", 1), 0)),
        )
        return d.fsm_to_branch_system(fsm, name="alternating-chars")

    @staticmethod
    def block_tree():
        fsm = d.WeightedFsm(
            3, 0,
            (
                (0, d.Symbol("a", 1), 1),
                (0, d.Symbol("ab", 2), 2),
                (1, d.Symbol("ba", 2), 1),
                (2, d.Symbol("ab", 2), 2),
            ),
        )
        return d.fsm_to_branch_system(fsm, name="alternating-blocks")

    def test_both_decompositions_flatten_to_the_same_strings(self):
        def flattened(system, levels):
            out = {}
            for level in levels:
                for path, weight in d.enumerate_level_paths(system, level):
                    word = "".join(path)
                    assert word not in out, "two paths share a flattened string"
                    out[word] = weight
            return out

        # block paths of <= 4 branches span <= 8 characters
        chars = flattened(self.char_tree(), range(1, 9))
        blocks = flattened(self.block_tree(), range(1, 5))
        assert set(blocks) <= set(chars)
        assert set(chars) >= {"a", "ab", "aba", "abab"}
        for word, weight in blocks.items():
            assert chars[word] == weight

    def test_rates_converge_to_each_other(self):
        char_rate = d.solve_level_rate(self.char_tree(), 40).rate
        block_20 = d.solve_level_rate(self.block_tree(), 20).rate
        block_40 = d.solve_level_rate(self.block_tree(), 40).rate
        assert char_rate == 0.0
        # independent check of the block-tree level equation
        expected = bisect_root(
            lambda s: math.exp(-79 * s) + math.exp(-80 * s) - 1.0, 0.0, 1.0,
        )
        assert block_40 == pytest.approx(expected, abs=1e-10)
        assert abs(block_40 - char_rate) <= 0.05
        assert block_40 < block_20


def test_level_report_tsv_format():
    _, levels = d.maxent_rate_estimate(mem_unequal(), 3)
    text = d.level_report_tsv(levels)
    lines = text.strip().split("\n")
    assert lines[0].startswith("# l")
    assert len(lines) == 4
    fields = lines[1].split("\t")
    assert fields[0] == "1"
    assert fields[1] == "2"
    assert float(fields[2]) == pytest.approx(LN_GOLDEN, abs=1e-9)


def test_level_solutions_are_thread_safe():
    system = dyck()
    with ThreadPoolExecutor(max_workers=4) as pool:
        parallel = list(pool.map(lambda l: d.solve_level_rate(system, l).rate,
                                 range(1, 13)))
    sequential = [d.solve_level_rate(system, l).rate for l in range(1, 13)]
    assert parallel == sequential
