#include "heckelab/bounds.hpp"

namespace heckelab {
namespace bounds {

DecayProfile decay_profile(std::int64_t level) {
    if (level < 1) throw std::invalid_argument("decay_profile: level must be positive");
    const Integer psi_n(psi(level));
    const Integer two_omega = pow_int(Integer(2), omega(level));
    DecayProfile p;
    p.level = level;
    const std::int64_t root = isqrt(level);
    if (root * root == level) {
        p.sqrt_coeff = make_rational(two_omega * root, psi_n);
        p.carries_sqrt = false;
    } else {
        p.sqrt_coeff = make_rational(two_omega, psi_n);
        p.carries_sqrt = true;
    }
    p.sigma0_over_psi = make_rational(Integer(sigma0(level)), psi_n);
    p.four_omega_over_psi = make_rational(two_omega * two_omega, psi_n);
    p.two_omega_over_psi = make_rational(two_omega, psi_n);
    p.inv_psi = make_rational(Integer(1), psi_n);
    return p;
}

RationalInterval sqrt_enclosure(const Integer& x, int digits) {
    if (x < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
    const Integer scale = pow_int(Integer(10), digits);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), Integer(x * scale * scale).get_mpz_t());
    RationalInterval r;
    r.lo = make_rational(root, scale);
    r.hi = make_rational(root + 1, scale);
    if (r.lo * r.lo > Rational(x) || r.hi * r.hi < Rational(x))
        throw InternalInconsistencyError("sqrt enclosure does not bracket its argument");
    return r;
}

namespace {

// sqrt(level) factor of the first decay ratio, rounded in the requested
// direction (already exact when the profile folded the root in).
Rational theta1_directed(const DecayProfile& p, int digits, bool upper) {
    if (!p.carries_sqrt) return p.sqrt_coeff;
    const RationalInterval s = sqrt_enclosure(Integer(p.level), digits);
    return p.sqrt_coeff * (upper ? s.hi : s.lo);
}

Rational envelope_t2_directed(std::int64_t level, int digits, bool upper) {
    const DecayProfile p = decay_profile(level);
    const RationalInterval sqrt2 = sqrt_enclosure(Integer(2), digits);
    const Rational root2 = upper ? sqrt2.hi : sqrt2.lo;
    const Rational theta1 = theta1_directed(p, digits, upper);
    return make_rational(7, 2) * theta1 + p.sigma0_over_psi +
           (make_rational(129, 2) + Rational(8) * root2) * p.four_omega_over_psi +
           (Rational(24) * root2 + make_rational(323, 6)) * p.two_omega_over_psi +
           Rational(9) * p.inv_psi;
}

Rational envelope_t4_directed(std::int64_t level, int digits, bool upper) {
    const DecayProfile p = decay_profile(level);
    const Rational theta1 = theta1_directed(p, digits, upper);
    const Rational b = make_rational(17, 2) * p.two_omega_over_psi + make_rational(1, 4) * theta1;
    return make_rational(17, 12) * b + make_rational(1, 3) * b * b +
           make_rational(234577, 576) * p.inv_psi;
}

}  // namespace

Rational envelope_t2(std::int64_t level) { return envelope_t2_directed(level, 12, true); }
Rational envelope_t4(std::int64_t level) { return envelope_t4_directed(level, 12, true); }

RationalInterval envelope_t2_interval(std::int64_t level, int digits) {
    return {envelope_t2_directed(level, digits, false), envelope_t2_directed(level, digits, true)};
}

RationalInterval envelope_t4_interval(std::int64_t level, int digits) {
    return {envelope_t4_directed(level, digits, false), envelope_t4_directed(level, digits, true)};
}

std::int64_t weight_threshold(std::int64_t level, Variant variant) {
    const Rational envelope = variant == Variant::T2 ? envelope_t2(level) : envelope_t4(level);
    for (std::int64_t k = 1;; ++k) {
        const Rational lhs = variant == Variant::T2 ? make_rational(6 * k + 5, 8)
                                                    : make_rational(10 * k + 5, 192);
        if (lhs > envelope) return k;
    }
}

BoundReport bound_report(std::int64_t level, Variant variant) {
    BoundReport r;
    r.level = level;
    r.variant = variant;
    r.envelope = variant == Variant::T2 ? envelope_t2(level) : envelope_t4(level);
    r.k_threshold = weight_threshold(level, variant);
    r.below_global_threshold =
        r.envelope < (variant == Variant::T2 ? make_rational(11, 8) : make_rational(15, 192));
    return r;
}

std::vector<GrowthViolation> check_divisor_growth(const std::vector<std::int64_t>& levels) {
    // 2^omega <= (2431/500) N^{1/4} and sigma0 <= (8447/1000) N^{1/4},
    // both compared after taking fourth powers.
    const Integer c1 = pow_int(Integer(2431), 4), s1 = pow_int(Integer(500), 4);
    const Integer c2 = pow_int(Integer(8447), 4), s2 = pow_int(Integer(1000), 4);
    std::vector<GrowthViolation> bad;
    for (const std::int64_t n : levels) {
        if (n < 1) throw std::invalid_argument("check_divisor_growth: levels must be positive");
        const Integer lhs1 = pow_int(Integer(2), 4 * omega(n)) * s1;
        const Integer lhs2 = pow_int(Integer(sigma0(n)), 4) * s2;
        const bool ok1 = lhs1 <= c1 * n;
        const bool ok2 = lhs2 <= c2 * n;
        if (!ok1 || !ok2) bad.push_back({n, ok1, ok2});
    }
    return bad;
}

}  // namespace bounds
}  // namespace heckelab
