// oracle.hpp — sequential pouring reference and seeded case generators.
//
// allocate_sequential computes the split by simulation: pour into each
// tranche in order until the amount runs out. It never looks at prefix sums,
// so its term-by-term agreement with the closed form in core.hpp is the
// strongest check this library offers and is what the fuzz suites quantify
// over. The generators are pure functions of (config, index): identical
// configs reproduce identical case streams on any platform.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "waterfall/core.hpp"
#include "waterfall/decomposition.hpp"

namespace waterfall {

/// Step-by-step waterfall: the first pour is min{y^1, remaining} with no
/// floor at zero (a negative amount is absorbed entirely by the first
/// tranche); every later pour is clamped below at zero. The asymmetry is
/// deliberate and mirrors the closed form's first term.
template <Scalar T>
Allocation<T> allocate_sequential(const T& x, const CapSchedule<T>& schedule) {
    std::vector<T> terms;
    terms.reserve(schedule.size() + 1);
    T remaining = x;
    T pour = scalar_min(schedule.cap(0), remaining);
    terms.push_back(pour);
    remaining = remaining - pour;
    for (std::size_t j = 1; j < schedule.size(); ++j) {
        pour = scalar_min(schedule.cap(j), positive_part(remaining));
        terms.push_back(pour);
        remaining = remaining - pour;
    }
    terms.push_back(positive_part(remaining));
    return Allocation<T>{std::move(terms), x, schedule};
}

namespace gen {

/// Parameters of the seeded case stream. Exact-mode values are rationals
/// with |value| <= magnitude_bound and denominator <= denominator_bound.
/// With dyadic_denominators set, denominators are powers of two (so that
/// double conversion and double arithmetic at these magnitudes stay exact
/// and the float suites measure formula agreement, not roundoff).
struct FuzzConfig {
    std::uint64_t seed = 0;
    std::uint64_t cases = 0;
    std::size_t max_m = 8;
    Rational magnitude_bound = Rational(1000);
    std::uint64_t denominator_bound = 1000;
    bool dyadic_denominators = false;
};

/// One generated allocation case.
struct CaseSample {
    Rational x;
    CapSchedule<Rational> schedule;
};

// Weyl-sequence PRNG (splitmix64). Chosen over <random> engines because its
// output is pinned down bit-for-bit by the algorithm, not by the standard
// library implementation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool one_in(std::uint64_t n) { return below(n) == 0; }

private:
    std::uint64_t state_;
};

/// Independent stream per (seed, purpose tag, index).
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    SplitMix64 a(seed ^ (tag * 0xD6E8FEB86659FD93ull));
    const std::uint64_t h = a.next() ^ (index * 0xCA5A826395121157ull);
    SplitMix64 b(h);
    b.next();
    return b;
}

/// Uniform BigInt in [lo, hi] (inclusive); consumes exactly two raw draws.
inline BigInt draw_bigint(SplitMix64& rng, const BigInt& lo, const BigInt& hi) {
    const BigInt span = hi - lo + 1;
    BigInt r = BigInt(rng.next());
    r <<= 64;
    r |= BigInt(rng.next());
    return lo + r % span;
}

inline BigInt draw_denominator(SplitMix64& rng, const FuzzConfig& cfg) {
    if (cfg.dyadic_denominators) {
        std::uint64_t max_pow = 0;
        while ((1ull << (max_pow + 1)) <= cfg.denominator_bound && max_pow + 1 < 63) ++max_pow;
        return BigInt(1) << rng.below(max_pow + 1);
    }
    return draw_bigint(rng, 1, BigInt(cfg.denominator_bound));
}

/// Uniform rational in [-magnitude_bound, magnitude_bound], sign-balanced.
inline Rational draw_amount(SplitMix64& rng, const FuzzConfig& cfg) {
    const BigInt d = draw_denominator(rng, cfg);
    const BigInt n_max = boost::multiprecision::numerator(cfg.magnitude_bound) * d /
                         boost::multiprecision::denominator(cfg.magnitude_bound);
    return Rational(draw_bigint(rng, -n_max, n_max), d);
}

/// Uniform rational in [0, magnitude_bound], with an exact zero one time in
/// eight so zero caps stay well represented.
inline Rational draw_cap(SplitMix64& rng, const FuzzConfig& cfg) {
    const BigInt d = draw_denominator(rng, cfg);
    const BigInt n_max = boost::multiprecision::numerator(cfg.magnitude_bound) * d /
                         boost::multiprecision::denominator(cfg.magnitude_bound);
    if (rng.one_in(8)) return Rational(0);
    return Rational(draw_bigint(rng, 0, n_max), d);
}

/// Small strictly positive rational, for nudging amounts off boundaries.
inline Rational draw_offset(SplitMix64& rng, const FuzzConfig& cfg) {
    return Rational(1, draw_denominator(rng, cfg));
}

inline CapSchedule<Rational> draw_schedule(SplitMix64& rng, const FuzzConfig& cfg) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.below(cfg.max_m));
    std::vector<Rational> caps;
    caps.reserve(m);
    for (std::size_t i = 0; i < m; ++i) caps.push_back(draw_cap(rng, cfg));
    return CapSchedule<Rational>(std::move(caps));
}

// Cases come in groups of kCaseModes consecutive indices sharing one
// schedule; the modes pin the amount to the spots the closed form treats
// differently. Mode 0 places x exactly on a prefix sum, so every schedule
// is probed on at least one exact boundary.
inline constexpr std::uint64_t kCaseModes = 8;

namespace tag {
inline constexpr std::uint64_t schedule = 0x5C4ED01E;
inline constexpr std::uint64_t amount = 0xA3301157;
inline constexpr std::uint64_t pair = 0xD0117A17;
inline constexpr std::uint64_t equal_caps = 0xE9CA75;
inline constexpr std::uint64_t violation = 0x7A96E7;
}  // namespace tag

inline CaseSample generate_case(const FuzzConfig& cfg, std::uint64_t index) {
    SplitMix64 sched_rng = stream(cfg.seed, tag::schedule, index / kCaseModes);
    CapSchedule<Rational> schedule = draw_schedule(sched_rng, cfg);

    SplitMix64 rng = stream(cfg.seed, tag::amount, index);
    const std::size_t m = schedule.size();
    Rational x;
    switch (index % kCaseModes) {
        case 0:  // exactly on a prefix sum (weak side of the boundary)
            x = schedule.prefix_sum(1 + rng.below(m));
            break;
        case 1:  // just above a prefix sum (strict side)
            x = schedule.prefix_sum(1 + rng.below(m)) + draw_offset(rng, cfg);
            break;
        case 2:  // just below a prefix sum
            x = schedule.prefix_sum(1 + rng.below(m)) - draw_offset(rng, cfg);
            break;
        case 3:  // zero amount
            x = Rational(0);
            break;
        case 4:  // strictly negative
            x = -draw_cap(rng, cfg) - draw_offset(rng, cfg);
            break;
        case 5:  // at or above the schedule total
            x = schedule.total() + draw_cap(rng, cfg);
            break;
        case 6:  // free signed draw
            x = draw_amount(rng, cfg);
            break;
        default:  // free non-negative draw
            x = draw_cap(rng, cfg);
            break;
    }
    return CaseSample{std::move(x), std::move(schedule)};
}

/// Constructive dominant pair: caps1 = caps2 + delta (delta >= 0) and
/// x1 = x2 + sum(delta) + slack (slack >= 0). All three dominance
/// preconditions hold by construction; slack = 0 puts the increment sum
/// bound exactly at equality.
inline DominancePair<Rational> make_dominance_pair(const Rational& x2,
                                                   std::vector<Rational> caps2,
                                                   const std::vector<Rational>& delta,
                                                   const Rational& slack) {
    if (delta.size() != caps2.size()) throw LengthMismatch(delta.size(), caps2.size());
    std::vector<Rational> caps1;
    caps1.reserve(caps2.size());
    Rational delta_sum(0);
    for (std::size_t i = 0; i < caps2.size(); ++i) {
        caps1.push_back(caps2[i] + delta[i]);
        delta_sum += delta[i];
    }
    const Rational x1 = x2 + delta_sum + slack;
    return DominancePair<Rational>{x1, CapSchedule<Rational>(std::move(caps1)),
                                   x2, CapSchedule<Rational>(std::move(caps2))};
}

inline DominancePair<Rational> generate_dominance_pair(const FuzzConfig& cfg, std::uint64_t index) {
    SplitMix64 rng = stream(cfg.seed, tag::pair, index);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.below(cfg.max_m));

    std::vector<Rational> caps2;
    caps2.reserve(m);
    for (std::size_t i = 0; i < m; ++i) caps2.push_back(draw_cap(rng, cfg));
    const Rational x2 = draw_amount(rng, cfg);

    // Every eighth pair is fully degenerate: delta = 0, slack = 0, so
    // x1 = x2 and caps1 = caps2.
    const bool equal_pair = (index % 8 == 7);
    std::vector<Rational> delta(m, Rational(0));
    Rational slack(0);
    if (!equal_pair) {
        for (std::size_t i = 0; i < m; ++i)
            if (!rng.one_in(2)) delta[i] = draw_cap(rng, cfg);
        if (!rng.one_in(4)) slack = draw_cap(rng, cfg);
    }
    return make_dominance_pair(x2, std::move(caps2), delta, slack);
}

/// Pair with schedule1 == schedule2 and x1 >= x2; the aggregate increment is
/// zero, so dominance holds for any non-negative amount gap.
inline DominancePair<Rational> generate_equal_caps_pair(const FuzzConfig& cfg, std::uint64_t index) {
    SplitMix64 rng = stream(cfg.seed, tag::equal_caps, index);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.below(cfg.max_m));
    std::vector<Rational> caps;
    caps.reserve(m);
    for (std::size_t i = 0; i < m; ++i) caps.push_back(draw_cap(rng, cfg));
    const Rational x2 = draw_amount(rng, cfg);
    const Rational gap = rng.one_in(4) ? Rational(0) : draw_cap(rng, cfg);
    CapSchedule<Rational> schedule(std::move(caps));
    return DominancePair<Rational>{x2 + gap, schedule, x2, schedule};
}

/// Which precondition a sharpness probe deliberately breaks.
enum class ViolationTarget { AmountOrder, CapDominance, IncrementSumBound };

/// Pair that deliberately violates one target precondition.
///   CapDominance      — fails at exactly one tranche; the other two hold.
///   IncrementSumBound — fails alone; amount order and cap dominance hold.
///   AmountOrder       — x1 < x2 with equal caps. Cap dominance holds, but
///                       the increment sum bound necessarily fails with it:
///                       cap dominance forces a non-negative increment sum,
///                       so no pair can break amount order alone.
inline DominancePair<Rational> generate_violation_pair(const FuzzConfig& cfg, std::uint64_t index,
                                                       ViolationTarget target) {
    SplitMix64 rng = stream(cfg.seed, tag::violation ^ (0x100 + static_cast<std::uint64_t>(target)),
                            index);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.below(cfg.max_m));
    std::vector<Rational> caps2;
    caps2.reserve(m);
    for (std::size_t i = 0; i < m; ++i) caps2.push_back(draw_cap(rng, cfg));
    const Rational x2 = draw_amount(rng, cfg);

    switch (target) {
        case ViolationTarget::AmountOrder: {
            const Rational drop = draw_cap(rng, cfg) + draw_offset(rng, cfg);
            CapSchedule<Rational> schedule(std::move(caps2));
            return DominancePair<Rational>{x2 - drop, schedule, x2, schedule};
        }
        case ViolationTarget::CapDominance: {
            const std::size_t hit = static_cast<std::size_t>(rng.below(m));
            const Rational shortfall = draw_cap(rng, cfg) + draw_offset(rng, cfg);
            std::vector<Rational> caps1 = caps2;
            caps2[hit] += shortfall;  // caps1[hit] < caps2[hit] by `shortfall`
            Rational increment_sum(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (i != hit && !rng.one_in(2)) caps1[i] += draw_cap(rng, cfg);
                increment_sum += caps1[i] - caps2[i];
            }
            const Rational gap = positive_part(increment_sum) +
                                 (rng.one_in(4) ? Rational(0) : draw_cap(rng, cfg));
            return DominancePair<Rational>{x2 + gap, CapSchedule<Rational>(std::move(caps1)),
                                           x2, CapSchedule<Rational>(std::move(caps2))};
        }
        case ViolationTarget::IncrementSumBound: {
            std::vector<Rational> caps1 = caps2;
            Rational increment_sum(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (rng.one_in(2)) caps1[i] += draw_cap(rng, cfg);
                increment_sum += caps1[i] - caps2[i];
            }
            caps1[rng.below(m)] += draw_offset(rng, cfg);  // ensure a strictly positive sum
            increment_sum = Rational(0);
            for (std::size_t i = 0; i < m; ++i) increment_sum += caps1[i] - caps2[i];
            // 0 <= gap < increment_sum
            const Rational gap = increment_sum * Rational(rng.below(8), 8);
            return DominancePair<Rational>{x2 + gap, CapSchedule<Rational>(std::move(caps1)),
                                           x2, CapSchedule<Rational>(std::move(caps2))};
        }
    }
    throw std::logic_error("generate_violation_pair: bad target");  // unreachable
}

/// Double-precision view of a generated case, for the float-mode suites.
struct FloatCase {
    double x;
    CapSchedule<double> schedule;
};

inline FloatCase to_float_case(const CaseSample& sample) {
    std::vector<double> caps;
    caps.reserve(sample.schedule.size());
    for (const Rational& c : sample.schedule.caps()) caps.push_back(to_double(c));
    return FloatCase{to_double(sample.x), CapSchedule<double>(std::move(caps))};
}

}  // namespace gen
}  // namespace waterfall
