#include "heckelab/trace.hpp"

#include <algorithm>
#include <numeric>

namespace heckelab {

namespace {

void validate_weight(std::int64_t weight) {
    if (weight < 2 || weight % 2 != 0)
        throw std::invalid_argument("weight must be even and at least 2");
}

void validate_index(const HeckeIndex& idx) {
    if (idx.level < 1 || idx.index < 1) throw std::invalid_argument("level and index must be positive");
    validate_weight(idx.weight);
    if (std::gcd(idx.level, idx.index) != 1)
        throw std::invalid_argument("trace requires gcd(level, index) = 1");
}

void assert_denominator_24(const Rational& q, const char* term) {
    if (Integer(24) % q.get_den() != 0)
        throw InternalInconsistencyError(std::string(term) + " denominator does not divide 24: " + q.get_str());
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> ds;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        ds.push_back(d);
        if (d != n / d) ds.push_back(n / d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace

Integer gegenbauer(std::int64_t t, std::int64_t m, std::int64_t weight) {
    validate_weight(weight);
    Integer prev(1), cur(t);  // G_0, G_1
    if (weight == 2) return prev;
    for (std::int64_t j = 2; j <= weight - 2; ++j) {
        Integer next = Integer(t) * cur - Integer(m) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Rational lift_weight(std::int64_t t, std::int64_t n, std::int64_t m, std::int64_t level) {
    if (n < 1 || m < 1 || level < 1) throw std::invalid_argument("lift_weight: bad arguments");
    const std::int64_t level_n = std::gcd(level, n);
    const std::int64_t mod = level * level_n;
    // Distinct unit residues mod level that lift to roots of
    // c^2 - t c + m modulo level * gcd(level, n). Direct enumeration; the
    // quadratic is evaluated as c^2 + (mod - t) c + m with everything
    // nonnegative so 128-bit intermediates suffice.
    const std::int64_t t_neg = ((-t % mod) + mod) % mod;
    const std::int64_t m_red = ((m % mod) + mod) % mod;
    std::vector<char> seen(level, 0);
    std::int64_t count = 0;
    for (std::int64_t c = 0; c < mod; ++c) {
        const unsigned __int128 value = (unsigned __int128)c * (unsigned __int128)c +
                                        (unsigned __int128)t_neg * (unsigned __int128)c + m_red;
        if (value % mod != 0) continue;
        const std::int64_t r = c % level;
        if (std::gcd(r, level) != 1) continue;
        if (!seen[r]) { seen[r] = 1; ++count; }
    }
    return make_rational(Integer(psi(level)) * count, Integer(psi(level / level_n)));
}

Rational identity_term(const HeckeIndex& idx) {
    validate_index(idx);
    const std::int64_t root = isqrt(idx.index);
    if (root * root != idx.index) return Rational(0);
    return make_rational(Integer(idx.weight - 1) * psi(idx.level) * pow_int(Integer(idx.index), (idx.weight - 2) / 2),
                         Integer(12));
}

std::pair<Rational, std::vector<EllipticTermDetail>> elliptic_term(const HeckeIndex& idx,
                                                                   const ClassNumberTable& table) {
    validate_index(idx);
    const std::int64_t m = idx.index;
    Rational sum(0);
    std::vector<EllipticTermDetail> details;
    const std::int64_t t_max = isqrt(4 * m - 1);  // t^2 < 4m
    for (std::int64_t t = -t_max; t <= t_max; ++t) {
        const std::int64_t d0 = t * t - 4 * m;
        const Integer p = gegenbauer(t, m, idx.weight);
        Rational inner(0);
        for (std::int64_t n = 1; n * n <= -d0; ++n) {
            if ((-d0) % (n * n) != 0) continue;
            const std::int64_t disc = d0 / (n * n);
            const std::int64_t r = ((disc % 4) + 4) % 4;
            if (r != 0 && r != 1) continue;
            const Rational hw = table.weighted(disc);
            const Rational mu = lift_weight(t, n, m, idx.level);
            // The weight denominator stays within the subgroup index of the
            // reduced level.
            if (Integer(psi(idx.level / std::gcd(idx.level, n))) % mu.get_den() != 0)
                throw InternalInconsistencyError("lift weight denominator out of range");
            inner += hw * mu;
            details.push_back({t, n, disc, hw, mu});
        }
        sum += Rational(p) * inner;
    }
    return {sum * make_rational(-1, 2), std::move(details)};
}

std::pair<Rational, std::vector<HyperbolicTermDetail>> hyperbolic_term(const HeckeIndex& idx) {
    validate_index(idx);
    const std::int64_t n_level = idx.level;
    const std::int64_t m = idx.index;
    Rational sum(0);
    std::vector<HyperbolicTermDetail> details;
    for (const std::int64_t d : divisors(m)) {
        const Integer weight_pow = pow_int(Integer(std::min(d, m / d)), idx.weight - 1);
        Integer tau_sum(0);
        for (const std::int64_t tau : divisors(n_level)) {
            const std::int64_t g = std::gcd(tau, n_level / tau);
            if ((d - m / d) % g != 0) continue;
            const auto y = crt_solve(d % tau, tau, (m / d) % (n_level / tau), n_level / tau);
            if (!y) throw InternalInconsistencyError("hyperbolic residue must exist when gcd divides");
            const int indicator = std::gcd(y->residue, n_level) == 1 ? 1 : 0;
            const std::int64_t phi_g = euler_phi(g);
            if (indicator) tau_sum += phi_g;
            details.push_back({d, tau, y->residue, phi_g, indicator});
        }
        sum += Rational(weight_pow * tau_sum);
    }
    return {sum * make_rational(-1, 2), std::move(details)};
}

Rational weight2_term(const HeckeIndex& idx) {
    validate_index(idx);
    if (idx.weight != 2) return Rational(0);
    Integer s(0);
    for (const std::int64_t c : divisors(idx.index))
        if (std::gcd(idx.level, idx.index / c) == 1) s += c;
    return Rational(s);
}

TraceBreakdown hecke_trace(const HeckeIndex& idx, const ClassNumberTable& table) {
    TraceBreakdown b;
    b.identity = identity_term(idx);
    std::tie(b.elliptic, b.elliptic_details) = elliptic_term(idx, table);
    std::tie(b.hyperbolic, b.hyperbolic_details) = hyperbolic_term(idx);
    b.weight2 = weight2_term(idx);
    assert_denominator_24(b.identity, "identity term");
    assert_denominator_24(b.elliptic, "elliptic term");
    assert_denominator_24(b.hyperbolic, "hyperbolic term");
    assert_denominator_24(b.weight2, "weight-2 term");
    const Rational total = b.identity + b.elliptic + b.hyperbolic + b.weight2;
    if (!is_integral(total))
        throw InternalInconsistencyError("trace is not an integer: " + total.get_str());
    b.total = total.get_num();
    return b;
}

Integer level_one_trace(std::int64_t m, std::int64_t weight, const ClassNumberTable& table) {
    if (m < 1) throw std::invalid_argument("level_one_trace: m must be positive");
    if (weight < 4 || weight % 2 != 0)
        throw std::invalid_argument("level_one_trace: weight must be even and at least 4");
    Rational sum(0);
    const std::int64_t t_max = isqrt(4 * m);  // t^2 <= 4m, boundary included
    for (std::int64_t t = -t_max; t <= t_max; ++t)
        sum += Rational(gegenbauer(t, m, weight)) * table.hurwitz(4 * m - t * t);
    Integer div_sum(0);
    for (const std::int64_t d : divisors(m)) div_sum += pow_int(Integer(std::min(d, m / d)), weight - 1);
    const Rational total = (sum + Rational(div_sum)) * make_rational(-1, 2);
    if (!is_integral(total))
        throw InternalInconsistencyError("level-one trace is not an integer: " + total.get_str());
    return total.get_num();
}

DimensionBreakdown cusp_dim(std::int64_t level, std::int64_t weight) {
    if (level < 1) throw std::invalid_argument("cusp_dim: level must be positive");
    validate_weight(weight);
    const std::int64_t k = weight / 2;
    DimensionBreakdown d;
    d.main = make_rational(Integer(weight - 1) * psi(level), Integer(12));

    Integer boundary(0);
    for (const std::int64_t div : divisors(level)) boundary += euler_phi(std::gcd(div, level / div));
    d.boundary = Rational(boundary) * make_rational(-1, 2);

    d.delta_k1 = (k == 1) ? 1 : 0;

    // Legendre/Kronecker values at the two CM discriminants; at p = 2 they
    // are fixed by the discriminants -3 and -4.
    const auto symbol = [](std::int64_t disc, std::int64_t p) -> int {
        if (p == 2) return disc == -3 ? -1 : 0;
        return kronecker(disc, p);
    };
    Integer prod3(1), prod4(1);
    for (const auto& [p, e] : factor(level).prime_powers) {
        prod3 *= 1 + symbol(-3, p);
        prod4 *= 1 + symbol(-4, p);
    }
    const Rational c3 = make_rational(weight - 1, 3) - Rational(weight / 3);
    const Rational c4 = make_rational(weight - 1, 4) - Rational(weight / 4);
    d.c3_term = (level % 9 != 0) ? c3 * Rational(prod3) : Rational(0);
    d.c4_term = (level % 4 != 0) ? c4 * Rational(prod4) : Rational(0);

    const Rational total = d.main + d.boundary + Rational(d.delta_k1) - d.c3_term - d.c4_term;
    if (!is_integral(total) || total < 0)
        throw InternalInconsistencyError("dimension must be a nonnegative integer: " + total.get_str());
    d.total = total.get_num();
    d.delta_k = (level == 1) ? Rational(d.total) - make_rational(k, 6) : Rational(0);
    return d;
}

const TraceBreakdown& TraceEngine::breakdown(const HeckeIndex& idx) {
    auto it = memo_.find(idx);
    if (it == memo_.end()) it = memo_.emplace(idx, hecke_trace(idx, *table_)).first;
    return it->second;
}

Integer TraceEngine::dim(std::int64_t level, std::int64_t weight) {
    const auto key = std::make_pair(level, weight);
    auto it = dim_memo_.find(key);
    if (it == dim_memo_.end()) it = dim_memo_.emplace(key, cusp_dim(level, weight).total).first;
    return it->second;
}

void TraceEngine::clear() {
    memo_.clear();
    dim_memo_.clear();
}

}  // namespace heckelab
