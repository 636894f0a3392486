#ifndef HECKELAB_ARITH_HPP
#define HECKELAB_ARITH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace heckelab {

using Integer = mpz_class;
using Rational = mpq_class;

// Signals a broken internal identity (non-integral trace total, inexact
// Newton division). Distinct from precondition errors: it means the
// implementation, not the caller, is at fault.
struct InternalInconsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer to_integer(const Rational& q) {
    if (!is_integral(q))
        throw InternalInconsistencyError("expected integer, got " + q.get_str());
    return q.get_num();
}

inline Integer pow_int(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), Integer(n).get_mpz_t());
    return r.get_si();
}

// Prime factorization with strictly increasing primes.
struct Factorization {
    std::vector<std::pair<std::int64_t, int>> prime_powers;

    std::int64_t value() const {
        std::int64_t v = 1;
        for (const auto& [p, e] : prime_powers)
            for (int i = 0; i < e; ++i) v *= p;
        return v;
    }
};

Factorization factor(std::int64_t n);

bool is_prime(std::int64_t n);

// psi(N) = N * prod_{p | N} (1 + 1/p), the index of the level-N congruence
// subgroup; always an integer and >= N.
std::int64_t psi(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::int64_t sigma0(std::int64_t n);
int omega(std::int64_t n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Legendre symbol (d/p) for d in {-3, -4}, p an odd prime.
int kronecker(std::int64_t d, std::int64_t p);

struct CrtSolution {
    std::int64_t residue;  // in [0, modulus)
    std::int64_t modulus;  // lcm of the input moduli
};

// Simultaneous congruence x = r1 (mod m1), x = r2 (mod m2); empty when the
// residues disagree on gcd(m1, m2).
std::optional<CrtSolution> crt_solve(std::int64_t r1, std::int64_t m1,
                                     std::int64_t r2, std::int64_t m2);

}  // namespace heckelab

#endif
