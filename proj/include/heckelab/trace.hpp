#ifndef HECKELAB_TRACE_HPP
#define HECKELAB_TRACE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "heckelab/arith.hpp"
#include "heckelab/class_numbers.hpp"

namespace heckelab {

// Addresses the m-th Hecke operator on the weight-2k cusp space of level N.
struct HeckeIndex {
    std::int64_t level;   // N
    std::int64_t weight;  // 2k, even and >= 2
    std::int64_t index;   // m, coprime to N wherever a trace is taken

    auto operator<=>(const HeckeIndex&) const = default;
};

// Value of the Gegenbauer-type recurrence G_0 = 1, G_1 = t,
// G_j = t G_{j-1} - m G_{j-2} at j = weight - 2; this is the coefficient
// of x^{weight-2} in 1 / (1 - t x + m x^2).
Integer gegenbauer(std::int64_t t, std::int64_t m, std::int64_t weight);

// psi(N)/psi(N/gcd(N,n)) times the number of units mod N lifting to roots
// of c^2 - t c + m modulo N * gcd(N,n); computed by direct enumeration.
Rational lift_weight(std::int64_t t, std::int64_t n, std::int64_t m, std::int64_t level);

struct EllipticTermDetail {
    std::int64_t t;             // t^2 < 4m
    std::int64_t n;             // n^2 | t^2 - 4m, quotient a discriminant
    std::int64_t discriminant;  // (t^2 - 4m) / n^2
    Rational class_weight;      // h_w(discriminant)
    Rational mu;                // lift_weight(t, n, m, N)
};

struct HyperbolicTermDetail {
    std::int64_t divisor;     // d | m
    std::int64_t tau;         // tau | N with gcd(tau, N/tau) | (d - m/d)
    std::int64_t residue;     // y mod N/gcd(tau, N/tau)
    std::int64_t phi_factor;  // phi(gcd(tau, N/tau))
    int indicator;            // 1 iff gcd(y, N) = 1
};

struct TraceBreakdown {
    Rational identity;     // square m main term
    Rational elliptic;     // class-number sum
    Rational hyperbolic;   // divisor sum
    Rational weight2;      // extra term at weight 2 only
    std::vector<EllipticTermDetail> elliptic_details;
    std::vector<HyperbolicTermDetail> hyperbolic_details;
    Integer total;
};

Rational identity_term(const HeckeIndex& idx);
std::pair<Rational, std::vector<EllipticTermDetail>> elliptic_term(const HeckeIndex& idx,
                                                                   const ClassNumberTable& table);
std::pair<Rational, std::vector<HyperbolicTermDetail>> hyperbolic_term(const HeckeIndex& idx);
Rational weight2_term(const HeckeIndex& idx);

// Exact trace of T_m on S_{2k}(level N), gcd(level, m) = 1. The four terms
// must sum to an integer; anything else raises InternalInconsistencyError.
TraceBreakdown hecke_trace(const HeckeIndex& idx, const ClassNumberTable& table);

// Level-one specialization: -1/2 sum_{t^2 <= 4m} P(t,m) H(4m - t^2)
// minus half the divisor sum of min(d, m/d)^{weight-1}. Weight >= 4.
Integer level_one_trace(std::int64_t m, std::int64_t weight, const ClassNumberTable& table);

struct DimensionBreakdown {
    Rational main;        // (2k-1)/12 * psi(N)
    Rational boundary;    // -1/2 sum over d | N of phi(gcd(d, N/d))
    std::int64_t delta_k1;  // 1 at weight 2 only
    Rational c3_term;     // order-3 elliptic correction, including its product factor
    Rational c4_term;     // order-2 elliptic correction
    Integer total;        // s(N, 2k) >= 0
    Rational delta_k;     // total - k/6 at level one; 0 otherwise
};

// Exact dimension of the weight-2k cusp space for level N.
DimensionBreakdown cusp_dim(std::int64_t level, std::int64_t weight);

// Memoizing front end used by scans; hold one per worker.
class TraceEngine {
  public:
    explicit TraceEngine(const ClassNumberTable& table) : table_(&table) {}

    const TraceBreakdown& breakdown(const HeckeIndex& idx);
    Integer trace(const HeckeIndex& idx) { return breakdown(idx).total; }
    Integer dim(std::int64_t level, std::int64_t weight);
    const ClassNumberTable& table() const { return *table_; }
    void clear();

  private:
    const ClassNumberTable* table_;
    std::map<HeckeIndex, TraceBreakdown> memo_;
    std::map<std::pair<std::int64_t, std::int64_t>, Integer> dim_memo_;
};

}  // namespace heckelab

#endif
