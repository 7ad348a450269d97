#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waterfall/decomposition.hpp"
#include "waterfall/oracle.hpp"
#include "test_util.hpp"

using namespace waterfall;
using wtest::R;
using wtest::rvec;
using wtest::sched;

namespace {

DominancePair<Rational> pair_of(const char* x1, std::initializer_list<const char*> caps1,
                                const char* x2, std::initializer_list<const char*> caps2) {
    return DominancePair<Rational>{R(x1), sched(caps1), R(x2), sched(caps2)};
}

}  // namespace

TEST_CASE("check_dominance: pinned examples") {
    CHECK(check_dominance(pair_of("10", {"3", "4"}, "7", {"2", "4"})).ok());
    CHECK(check_dominance(pair_of("5", {"2", "2"}, "5", {"2", "2"})).ok());

    const auto report = check_dominance(pair_of("10", {"1", "4"}, "7", {"2", "4"}));
    REQUIRE(report.violations.size() == 1);
    const auto& v = report.violations[0];
    CHECK(v.which == Dominance::CapDominance);
    CHECK(v.index == std::size_t{0});  // first tranche
    CHECK(v.lhs == R("1"));
    CHECK(v.rhs == R("2"));
}

TEST_CASE("check_dominance: each precondition is reported with its values") {
    const auto report = check_dominance(pair_of("1", {"4"}, "2", {"1"}));
    // x1 < x2 and the amount gap (-1) misses the cap increment (3).
    REQUIRE(report.violations.size() == 2);
    CHECK(report.violations[0].which == Dominance::AmountOrder);
    CHECK(report.violations[0].lhs == R("1"));
    CHECK(report.violations[0].rhs == R("2"));
    CHECK(report.violations[1].which == Dominance::IncrementSumBound);
    CHECK(report.violations[1].lhs == R("-1"));
    CHECK(report.violations[1].rhs == R("3"));
}

TEST_CASE("check_dominance: partial-sum dominance is computed as a cross-check") {
    const auto good = check_dominance(pair_of("10", {"3", "4"}, "7", {"2", "4"}));
    CHECK(good.partial_sums_dominate);
    CHECK(!good.first_partial_sum_failure.has_value());

    // caps1 outgrow the amount gap: x1 - S1_1 = -5 < x2 - S2_1 = 0.
    const auto bad = check_dominance(pair_of("0", {"5"}, "0", {"0"}));
    CHECK(!bad.ok());
    CHECK(!bad.partial_sums_dominate);
    CHECK(bad.first_partial_sum_failure == std::size_t{1});
}

TEST_CASE("check_dominance: length mismatch is rejected") {
    CHECK_THROWS_AS(check_dominance(pair_of("1", {"1", "2"}, "1", {"1"})), LengthMismatch);
    CHECK_THROWS_AS(decompose_difference(pair_of("1", {"1", "2"}, "1", {"1"}),
                                         CheckMode::Unchecked),
                    LengthMismatch);
}

TEST_CASE("decompose_difference: pinned examples") {
    // allocate(10, [3,4]) = [3,4,3]; allocate(7, [2,4]) = [2,4,1].
    const auto d = decompose_difference(pair_of("10", {"3", "4"}, "7", {"2", "4"}),
                                        CheckMode::Checked);
    CHECK(d.term_diffs == rvec({"1", "0", "2"}));
    CHECK(d.total == R("3"));
    CHECK(d.identity_holds);
    CHECK(d.nonneg_certified);

    const auto zero = decompose_difference(pair_of("5", {"2", "2"}, "5", {"2", "2"}),
                                           CheckMode::Checked);
    CHECK(zero.term_diffs == rvec({"0", "0", "0"}));
    CHECK(zero.total == R("0"));
    CHECK(zero.identity_holds);
}

TEST_CASE("decompose_difference: checked mode refuses violated pairs") {
    const auto bad = pair_of("5", {"4"}, "5", {"1"});  // increment sum 3 > gap 0
    CHECK_THROWS_AS(decompose_difference(bad, CheckMode::Checked), PreconditionViolated);
    CHECK_THROWS_WITH_AS(decompose_difference(bad, CheckMode::Checked),
                         doctest::Contains("increment-sum-bound"), PreconditionViolated);
}

TEST_CASE("decompose_difference: unchecked mode reports an identity failure honestly") {
    // allocate(5, [4]) = [4,1]; allocate(5, [1]) = [1,4]: mixed-sign diffs.
    const auto d = decompose_difference(pair_of("5", {"4"}, "5", {"1"}), CheckMode::Unchecked);
    CHECK(d.term_diffs == rvec({"3", "3"}));
    CHECK(d.total == R("6"));
    CHECK(!d.identity_holds);
    CHECK(!d.nonneg_certified);
    CHECK(d.min_signed_diff == R("-3"));
}

TEST_CASE("decompose_via_psi: identity psi, aggregate bound at equality") {
    const auto r = decompose_via_psi(R("0"), R("3"), R("1"), rvec({"3"}), rvec({"1"}));
    CHECK(!r.swapped);
    CHECK(r.pair.x1 == R("3"));
    CHECK(r.pair.x2 == R("1"));
    CHECK(r.decomposition.term_diffs == rvec({"2", "0"}));
    CHECK(r.decomposition.total == R("2"));
    CHECK(r.decomposition.identity_holds);
}

TEST_CASE("decompose_via_psi: equal evaluation points give an all-zero decomposition") {
    const auto r = decompose_via_psi(R("5"), R("2"), R("2"), rvec({"1", "4"}), rvec({"1", "4"}));
    CHECK(!r.swapped);
    CHECK(r.decomposition.term_diffs == rvec({"0", "0", "0"}));
    CHECK(r.decomposition.total == R("0"));
}

TEST_CASE("decompose_via_psi: expanding psi evaluations are refused") {
    // psi doubles the gap: y1 - y2 = 2 but psi increments sum to 4.
    CHECK_THROWS_AS(decompose_via_psi(R("0"), R("3"), R("1"), rvec({"6"}), rvec({"2"})),
                    PreconditionViolated);
}

TEST_CASE("decompose_via_psi: negative psi evaluations are refused") {
    CHECK_THROWS_AS(decompose_via_psi(R("0"), R("3"), R("1"), rvec({"-1"}), rvec({"0"})),
                    NegativePsi);
    CHECK_THROWS_AS(decompose_via_psi(R("0"), R("3"), R("1"), rvec({"1"}), rvec({"-2"})),
                    NegativePsi);
}

TEST_CASE("decompose_via_psi: psi evaluation lists must have equal length") {
    CHECK_THROWS_AS(decompose_via_psi(R("0"), R("3"), R("1"), rvec({"1", "2"}), rvec({"1"})),
                    LengthMismatch);
}

TEST_CASE("decompose_via_psi: y1 < y2 swaps the sides and records it") {
    const auto direct = decompose_via_psi(R("1"), R("3"), R("1"), rvec({"2"}), rvec({"1"}));
    const auto swapped = decompose_via_psi(R("1"), R("1"), R("3"), rvec({"1"}), rvec({"2"}));
    CHECK(!direct.swapped);
    CHECK(swapped.swapped);
    CHECK(swapped.pair.x1 == direct.pair.x1);
    CHECK(swapped.pair.x2 == direct.pair.x2);
    CHECK(swapped.decomposition.term_diffs == direct.decomposition.term_diffs);
    CHECK(swapped.decomposition.total == direct.decomposition.total);
}

namespace {

const gen::FuzzConfig kCfg{/*seed=*/7, /*cases=*/1000, /*max_m=*/8,
                           /*magnitude_bound=*/Rational(1000), /*denominator_bound=*/50,
                           /*dyadic_denominators=*/false};

}  // namespace

TEST_CASE("property: the identity holds exactly on every generated dominant pair") {
    for (std::uint64_t i = 0; i < kCfg.cases; ++i) {
        const auto pair = gen::generate_dominance_pair(kCfg, i);
        const auto d = decompose_difference(pair, CheckMode::Checked);
        CAPTURE(i);
        REQUIRE(d.identity_holds);
        REQUIRE(d.nonneg_certified);
        REQUIRE(d.total == pair.x1 - pair.x2);
        REQUIRE(d.min_signed_diff >= Rational(0));
    }
}

TEST_CASE("property: equal caps make the identity unconditional") {
    for (std::uint64_t i = 0; i < kCfg.cases; ++i) {
        const auto pair = gen::generate_equal_caps_pair(kCfg, i);
        const auto d = decompose_difference(pair, CheckMode::Checked);
        CAPTURE(i);
        REQUIRE(d.identity_holds);
        REQUIRE(d.total == pair.x1 - pair.x2);
    }
}
