// decomposition.hpp — difference decomposition of two waterfall splits.
//
// Two amounts split over two schedules of equal length admit a clean
// decomposition under three dominance preconditions: the larger side
// dominates in amount, dominates cap-by-cap, and the amount gap covers the
// total cap increment. Then every per-term difference is non-negative and
// the absolute term differences sum exactly to x1 - x2.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waterfall/core.hpp"

namespace waterfall {

/// Two (amount, schedule) inputs under comparison. Schedules must have equal
/// length; side 1 is the intended dominant side.
template <Scalar T>
struct DominancePair {
    T x1;
    CapSchedule<T> schedule1;
    T x2;
    CapSchedule<T> schedule2;
};

/// The three dominance preconditions.
enum class Dominance {
    AmountOrder,        // x1 >= x2
    CapDominance,       // y1_i >= y2_i for every tranche i
    IncrementSumBound,  // x1 - x2 >= sum_i (y1_i - y2_i)
};

inline const char* dominance_name(Dominance d) {
    switch (d) {
        case Dominance::AmountOrder: return "amount-order";
        case Dominance::CapDominance: return "cap-dominance";
        case Dominance::IncrementSumBound: return "increment-sum-bound";
    }
    return "?";
}

/// One failed precondition: which one, where (0-based tranche position, only
/// for CapDominance), and the two compared values. The contract requires
/// lhs >= rhs; a violation records lhs < rhs.
template <Scalar T>
struct DominanceViolation {
    Dominance which;
    std::optional<std::size_t> index;
    T lhs;
    T rhs;

    std::string describe() const {
        std::string s = dominance_name(which);
        if (index) s += " at index " + std::to_string(*index);
        s += ": " + scalar_text(lhs) + " < " + scalar_text(rhs);
        return s;
    }
};

/// Verification status of a pair. `partial_sums_dominate` is the derived
/// consequence x1 - S1_j >= x2 - S2_j for every prefix count j in [1, m]; it
/// is computed as a cross-check and must hold whenever cap dominance and the
/// increment sum bound both hold.
template <Scalar T>
struct DominanceReport {
    std::vector<DominanceViolation<T>> violations;
    bool partial_sums_dominate = true;
    std::optional<std::size_t> first_partial_sum_failure;  // prefix count j

    bool ok() const { return violations.empty(); }
};

/// Per-term difference of the two splits. `term_diffs` holds the absolute
/// differences |t1_k - t2_k| for all m+1 terms, residual included;
/// `min_signed_diff` is the smallest pre-absolute-value difference, so
/// callers can see how far from non-negative the raw differences were.
/// Comparisons behind the two flags are raw; float-mode tolerance belongs to
/// the caller's assertions.
template <Scalar T>
struct DiffDecomposition {
    std::vector<T> term_diffs;
    T total;
    bool nonneg_certified;  // every pre-absolute-value difference >= 0
    bool identity_holds;    // total == x1 - x2
    T min_signed_diff;
};

enum class CheckMode { Checked, Unchecked };

template <Scalar T>
DominanceReport<T> check_dominance(const DominancePair<T>& pair) {
    const std::size_t m = pair.schedule1.size();
    if (m != pair.schedule2.size()) throw LengthMismatch(m, pair.schedule2.size());

    DominanceReport<T> report;
    if (pair.x1 < pair.x2)
        report.violations.push_back({Dominance::AmountOrder, std::nullopt, pair.x1, pair.x2});

    T increment_sum(0);
    for (std::size_t i = 0; i < m; ++i) {
        const T& c1 = pair.schedule1.cap(i);
        const T& c2 = pair.schedule2.cap(i);
        if (c1 < c2) report.violations.push_back({Dominance::CapDominance, i, c1, c2});
        increment_sum = increment_sum + (c1 - c2);
    }

    const T gap = pair.x1 - pair.x2;
    if (gap < increment_sum)
        report.violations.push_back({Dominance::IncrementSumBound, std::nullopt, gap, increment_sum});

    for (std::size_t j = 1; j <= m; ++j) {
        if (pair.x1 - pair.schedule1.prefix_sum(j) < pair.x2 - pair.schedule2.prefix_sum(j)) {
            report.partial_sums_dominate = false;
            report.first_partial_sum_failure = j;
            break;
        }
    }
    return report;
}

/// Term-by-term difference of allocate(x1, s1) and allocate(x2, s2).
/// Checked mode refuses pairs that fail check_dominance; for pairs that
/// pass, the decomposition is certified non-negative and total == x1 - x2
/// holds exactly over Rational. Unchecked mode computes both sides
/// regardless and leaves the verdict in the flags.
template <Scalar T>
DiffDecomposition<T> decompose_difference(const DominancePair<T>& pair, CheckMode mode) {
    if (pair.schedule1.size() != pair.schedule2.size())
        throw LengthMismatch(pair.schedule1.size(), pair.schedule2.size());

    if (mode == CheckMode::Checked) {
        const DominanceReport<T> report = check_dominance(pair);
        if (!report.ok()) {
            std::string msg = "dominance preconditions violated:";
            for (const auto& v : report.violations) msg += " [" + v.describe() + "]";
            throw PreconditionViolated(msg);
        }
    }

    const Allocation<T> a1 = allocate(pair.x1, pair.schedule1);
    const Allocation<T> a2 = allocate(pair.x2, pair.schedule2);

    DiffDecomposition<T> out{{}, T(0), true, false, T(0)};
    out.term_diffs.reserve(a1.terms.size());
    bool first = true;
    for (std::size_t k = 0; k < a1.terms.size(); ++k) {
        const T signed_diff = a1.terms[k] - a2.terms[k];
        if (first || signed_diff < out.min_signed_diff) out.min_signed_diff = signed_diff;
        first = false;
        const T abs_diff = signed_diff < T(0) ? T(-signed_diff) : signed_diff;
        out.total = out.total + abs_diff;
        out.term_diffs.push_back(abs_diff);
    }
    out.nonneg_certified = !(out.min_signed_diff < T(0));
    out.identity_holds = (out.total == pair.x1 - pair.x2);
    return out;
}

/// Result of the psi substitution: the constructed pair (after any swap),
/// whether the (y1, y2) arguments were swapped to restore y1 >= y2, and the
/// checked decomposition.
template <Scalar T>
struct PsiDecomposition {
    DominancePair<T> pair;
    bool swapped;
    DiffDecomposition<T> decomposition;
};

/// Difference decomposition for the substituted inputs x1 = x + y1,
/// x2 = x + y2 with caps taken from caller-supplied evaluations of m
/// functions at y1 and y2. If y1 < y2 the two sides are swapped (and the
/// swap recorded) rather than rejected. The aggregate precondition becomes
/// y1 - y2 >= sum_i (psi_i(y1) - psi_i(y2)); a failure means the supplied
/// evaluations are not cap-dominant or not nonexpansive in sum, and surfaces
/// as PreconditionViolated.
template <Scalar T>
PsiDecomposition<T> decompose_via_psi(const T& x, const T& y1, const T& y2,
                                      std::vector<T> psi_at_y1, std::vector<T> psi_at_y2) {
    if (psi_at_y1.size() != psi_at_y2.size())
        throw LengthMismatch(psi_at_y1.size(), psi_at_y2.size());
    for (std::size_t i = 0; i < psi_at_y1.size(); ++i)
        if (psi_at_y1[i] < T(0)) throw NegativePsi(i, scalar_text(psi_at_y1[i]));
    for (std::size_t i = 0; i < psi_at_y2.size(); ++i)
        if (psi_at_y2[i] < T(0)) throw NegativePsi(i, scalar_text(psi_at_y2[i]));

    T y_hi = y1;
    T y_lo = y2;
    const bool swapped = y1 < y2;
    if (swapped) {
        std::swap(y_hi, y_lo);
        std::swap(psi_at_y1, psi_at_y2);
    }

    DominancePair<T> pair{x + y_hi, CapSchedule<T>(std::move(psi_at_y1)),
                          x + y_lo, CapSchedule<T>(std::move(psi_at_y2))};
    DiffDecomposition<T> d = decompose_difference(pair, CheckMode::Checked);
    return PsiDecomposition<T>{std::move(pair), swapped, std::move(d)};
}

}  // namespace waterfall
