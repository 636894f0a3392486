#ifndef HECKELAB_BOUNDS_HPP
#define HECKELAB_BOUNDS_HPP

#include <cstdint>
#include <vector>

#include "heckelab/arith.hpp"

namespace heckelab {
namespace bounds {

// The five decay ratios controlling the envelope bounds; every one of them
// tends to 0 as the level grows. The first carries a factor sqrt(N) which
// is kept symbolic (coefficient times sqrt) so the profile stays exact;
// for perfect-square levels the root is folded in and the flag cleared.
struct DecayProfile {
    std::int64_t level;
    Rational sqrt_coeff;        // multiplies sqrt(level) unless folded
    bool carries_sqrt;
    Rational sigma0_over_psi;
    Rational four_omega_over_psi;
    Rational two_omega_over_psi;
    Rational inv_psi;
};

DecayProfile decay_profile(std::int64_t level);

struct RationalInterval {
    Rational lo, hi;
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

// Directed-rounding enclosure of sqrt(x) with absolute width 10^-digits.
RationalInterval sqrt_enclosure(const Integer& x, int digits = 12);

enum class Variant { T2, T4 };

// Outward-rounded rational upper bound on the weight-step error envelope;
// verdicts compare against this, never against floating point.
Rational envelope_t2(std::int64_t level);
Rational envelope_t4(std::int64_t level);

// Two-sided enclosures (used to test rounding soundness).
RationalInterval envelope_t2_interval(std::int64_t level, int digits = 12);
RationalInterval envelope_t4_interval(std::int64_t level, int digits = 12);

// Least k >= 1 with (6k+5)/8 > envelope (T2) or (10k+5)/192 > envelope (T4).
std::int64_t weight_threshold(std::int64_t level, Variant variant);

struct BoundReport {
    std::int64_t level;
    Variant variant;
    Rational envelope;            // outward-rounded upper bound
    std::int64_t k_threshold;
    bool below_global_threshold;  // envelope < 11/8 (T2) or 15/192 (T4)
};

BoundReport bound_report(std::int64_t level, Variant variant);

struct GrowthViolation {
    std::int64_t level;
    bool two_omega_ok;  // 2^omega(N) <= 4.862 N^{1/4}
    bool sigma0_ok;     // sigma0(N) <= 8.447 N^{1/4}
};

// Exact fourth-power comparison of both divisor-growth bounds over the
// sample; returns the levels where either side fails.
std::vector<GrowthViolation> check_divisor_growth(const std::vector<std::int64_t>& levels);

}  // namespace bounds
}  // namespace heckelab

#endif
