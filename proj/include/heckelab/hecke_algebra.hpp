#ifndef HECKELAB_HECKE_ALGEBRA_HPP
#define HECKELAB_HECKE_ALGEBRA_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "heckelab/arith.hpp"
#include "heckelab/trace.hpp"

namespace heckelab {

// a_2 is only defined once the space is at least two-dimensional.
struct DimensionTooSmallError : std::domain_error {
    using std::domain_error::domain_error;
};

struct HeckeContext {
    std::int64_t level;
    std::int64_t weight;
    auto operator<=>(const HeckeContext&) const = default;
};

// Formal integer combination sum c_r T_r over indices r coprime to the
// level, closed under the composition rule
//   T_a T_b = sum over d | gcd(a,b), gcd(d, N) = 1 of d^{2k-1} T_{ab/d^2}.
class HeckeElement {
  public:
    explicit HeckeElement(HeckeContext ctx) : ctx_(ctx) {}

    static HeckeElement unit(HeckeContext ctx);                       // T_1
    static HeckeElement basis(HeckeContext ctx, std::int64_t r);      // T_r

    const HeckeContext& context() const { return ctx_; }
    const std::map<std::int64_t, Integer>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    HeckeElement& add(std::int64_t r, Integer coeff);  // drops zeros
    HeckeElement operator+(const HeckeElement& o) const;
    HeckeElement operator*(const HeckeElement& o) const;

    bool operator==(const HeckeElement& o) const = default;

  private:
    HeckeContext ctx_;
    std::map<std::int64_t, Integer> coeffs_;
};

// Trace extended linearly over the formal sum.
Integer trace_of(const HeckeElement& e, TraceEngine& engine);

// Second characteristic-polynomial coefficient
//   a_2 = 1/2 [ (Tr T_m)^2 - sum over d | m of d^{2k-1} Tr T_{m^2/d^2} ].
Integer second_coefficient(const HeckeIndex& idx, TraceEngine& engine);

struct CharPolyPrefix {
    HeckeIndex idx;
    Integer dim;                      // s(N, 2k)
    std::vector<Integer> power_sums;  // p_1..p_nmax, p_j = Tr(T_m^j)
    std::vector<Integer> coeffs;      // a_0 = 1, a_1..a_nmax
};

// First n_max characteristic-polynomial coefficients via power sums and
// Newton's identities; every division must be exact.
CharPolyPrefix char_poly_prefix(const HeckeIndex& idx, std::int64_t n_max, TraceEngine& engine);

}  // namespace heckelab

#endif
