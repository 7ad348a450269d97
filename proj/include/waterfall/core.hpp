// core.hpp — capped waterfall split, pivot classification, interval splitting.
//
// The kernel distributes an amount x over an ordered schedule of tranche caps
// y^1..y^m: each tranche absorbs up to its cap, in order, and whatever exceeds
// the total of all caps lands in a trailing residual term. Everything here is
// a pure function of its inputs and is evaluated in closed form; the matching
// step-by-step simulation lives in oracle.hpp.

#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "waterfall/errors.hpp"
#include "waterfall/rational.hpp"

namespace waterfall {

/// Numeric requirements of the kernel: a totally ordered signed type with
/// closed +/- and a textual form for diagnostics. Satisfied by Rational
/// (exact mode) and double (float mode).
template <typename T>
concept Scalar = std::regular<T> && std::totally_ordered<T> && requires(const T a, const T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { scalar_text(a) } -> std::convertible_to<std::string>;
    T(0);
};

template <Scalar T>
T positive_part(const T& v) {
    return v < T(0) ? T(0) : v;
}

template <Scalar T>
const T& scalar_min(const T& a, const T& b) {
    return b < a ? b : a;
}

/// Ordered non-negative tranche caps [y^1..y^m], m >= 1, with prefix sums
/// S_0 = 0, S_j = y^1 + ... + y^j cached at construction. Prefix sums are
/// nondecreasing since every cap is >= 0.
template <Scalar T>
class CapSchedule {
public:
    explicit CapSchedule(std::vector<T> caps) : caps_(std::move(caps)) {
        if (caps_.empty()) throw EmptySchedule();
        prefix_.reserve(caps_.size() + 1);
        prefix_.push_back(T(0));
        for (std::size_t i = 0; i < caps_.size(); ++i) {
            if (caps_[i] < T(0)) throw NonNegativityViolation(i, scalar_text(caps_[i]));
            prefix_.push_back(prefix_.back() + caps_[i]);
        }
    }

    std::size_t size() const { return caps_.size(); }
    std::span<const T> caps() const { return caps_; }
    const T& cap(std::size_t i) const { return caps_[i]; }  // 0-based

    /// S_j for j in [0, m]; S_0 == 0.
    const T& prefix_sum(std::size_t j) const { return prefix_[j]; }
    const T& total() const { return prefix_.back(); }

    bool operator==(const CapSchedule&) const = default;

private:
    std::vector<T> caps_;
    std::vector<T> prefix_;
};

/// The m+1 ordered payout terms: m capped tranche terms followed by the
/// residual. Their sum reproduces the source amount (exactly over Rational).
template <Scalar T>
struct Allocation {
    std::vector<T> terms;    // [t^1 .. t^m, r]
    T source;                // the amount that was split
    CapSchedule<T> schedule;

    std::size_t tranche_count() const { return terms.size() - 1; }
    const T& residual() const { return terms.back(); }

    T sum() const {
        T s(0);
        for (const T& t : terms) s = s + t;
        return s;
    }
};

enum class PivotKind { BelowFirstCap, Interior, AtOrAboveTotal };

/// Where the amount runs out relative to the schedule. `pivot` is meaningful
/// only for Interior: it is the 1-based count i0 of fully saturated leading
/// tranches, with S_i0 < x <= S_{i0+1} and i0 in [1, m-1].
struct PivotClass {
    PivotKind kind = PivotKind::BelowFirstCap;
    std::size_t pivot = 0;

    static PivotClass below_first_cap() { return {PivotKind::BelowFirstCap, 0}; }
    static PivotClass at_or_above_total() { return {PivotKind::AtOrAboveTotal, 0}; }
    static PivotClass interior(std::size_t i0) { return {PivotKind::Interior, i0}; }

    bool operator==(const PivotClass&) const = default;
};

/// Closed-form waterfall split of x over the schedule:
///   t^1     = min{y^1, x}                      (no positive-part guard)
///   t^{j+1} = min{y^{j+1}, (x - S_j)^+}        for j = 1..m-1
///   r       = (x - S_m)^+
/// x may be any value, negative included; then t^1 = x and all later terms
/// are zero. The terms always sum back to x.
template <Scalar T>
Allocation<T> allocate(const T& x, const CapSchedule<T>& schedule) {
    const std::size_t m = schedule.size();
    std::vector<T> terms;
    terms.reserve(m + 1);
    terms.push_back(scalar_min(schedule.cap(0), x));
    for (std::size_t j = 1; j < m; ++j) {
        const T headroom = positive_part(x - schedule.prefix_sum(j));
        terms.push_back(scalar_min(schedule.cap(j), headroom));
    }
    terms.push_back(positive_part(x - schedule.total()));
    return Allocation<T>{std::move(terms), x, schedule};
}

/// Three-way classification of x against the schedule, checked in a fixed
/// order: BelowFirstCap (x <= y^1) first, then AtOrAboveTotal (x >= S_m),
/// then the interior scan. The precedence settles boundary overlaps such as
/// x = y^1 with m = 1, which reports BelowFirstCap. Ordering comparisons are
/// raw in both numeric modes; no tolerance enters control flow.
template <Scalar T>
PivotClass classify_pivot(const T& x, const CapSchedule<T>& schedule) {
    if (x <= schedule.cap(0)) return PivotClass::below_first_cap();
    if (x >= schedule.total()) return PivotClass::at_or_above_total();
    // Now y^1 < x < S_m, which forces m >= 2 and a unique interior pivot.
    // A zero cap can never be the pivot's successor: S_j < x <= S_{j+1} is
    // unsatisfiable when S_j == S_{j+1}.
    for (std::size_t i0 = 1; i0 + 1 <= schedule.size(); ++i0) {
        if (schedule.prefix_sum(i0) < x && x <= schedule.prefix_sum(i0 + 1))
            return PivotClass::interior(i0);
    }
    throw std::logic_error("classify_pivot: interior scan failed");  // unreachable
}

/// Breakpoints [a = p_0 <= p_1 <= ... <= p_{m+1} = b] cutting [a, b] into
/// m+1 subintervals whose lengths are the waterfall terms of b - a over
/// `lengths`: the stated lengths are honored in order for as long as the
/// interval allows, and the last subinterval absorbs any residual width.
template <Scalar T>
std::vector<T> split_interval(const T& a, const T& b, const CapSchedule<T>& lengths) {
    if (b < a) throw InvertedInterval(scalar_text(a), scalar_text(b));
    const Allocation<T> alloc = allocate<T>(b - a, lengths);
    std::vector<T> points;
    points.reserve(lengths.size() + 2);
    points.push_back(a);
    T run = a;
    for (const T& t : alloc.terms) {
        run = run + t;
        points.push_back(run);
    }
    return points;
}

}  // namespace waterfall
