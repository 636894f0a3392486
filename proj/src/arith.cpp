#include "heckelab/arith.hpp"

#include <numeric>

namespace heckelab {

namespace {
// 2,3,5 wheel increments starting from 7.
constexpr int kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
}  // namespace

Factorization factor(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factor: n must be positive");
    Factorization f;
    auto strip = [&](std::int64_t p) {
        if (n % p != 0) return;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.prime_powers.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    strip(5);
    std::int64_t p = 7;
    int w = 0;
    while (p * p <= n) {
        strip(p);
        p += kWheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) f.prime_powers.emplace_back(n, 1);
    return f;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    const Factorization f = factor(n);
    return f.prime_powers.size() == 1 && f.prime_powers[0].second == 1;
}

std::int64_t psi(std::int64_t n) {
    std::int64_t r = n;
    for (const auto& [p, e] : factor(n).prime_powers) r += r / p;
    return r;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (const auto& [p, e] : factor(n).prime_powers) r -= r / p;
    return r;
}

std::int64_t sigma0(std::int64_t n) {
    std::int64_t r = 1;
    for (const auto& [p, e] : factor(n).prime_powers) r *= e + 1;
    return r;
}

int omega(std::int64_t n) {
    return static_cast<int>(factor(n).prime_powers.size());
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);
}

int kronecker(std::int64_t d, std::int64_t p) {
    if (d != -3 && d != -4) throw std::invalid_argument("kronecker: d must be -3 or -4");
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("kronecker: p must be an odd prime");
    return mpz_si_kronecker(d, Integer(p).get_mpz_t());
}

std::optional<CrtSolution> crt_solve(std::int64_t r1, std::int64_t m1,
                                     std::int64_t r2, std::int64_t m2) {
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("crt_solve: moduli must be positive");
    const Integer M1(m1), M2(m2);
    Integer g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), M1.get_mpz_t(), M2.get_mpz_t());
    const Integer diff = Integer(r2) - Integer(r1);
    if (diff % g != 0) return std::nullopt;
    const Integer lcm = M1 / g * M2;
    // x = r1 + m1 * u * (r2 - r1) / g  (mod lcm)
    Integer x = Integer(r1) + M1 * u * (diff / g);
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), lcm.get_mpz_t());
    return CrtSolution{x.get_si(), lcm.get_si()};
}

}  // namespace heckelab
