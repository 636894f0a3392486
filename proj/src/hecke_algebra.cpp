#include "heckelab/hecke_algebra.hpp"

#include <numeric>

namespace heckelab {

HeckeElement HeckeElement::unit(HeckeContext ctx) { return basis(ctx, 1); }

HeckeElement HeckeElement::basis(HeckeContext ctx, std::int64_t r) {
    if (r < 1) throw std::invalid_argument("hecke element: index must be positive");
    if (std::gcd(r, ctx.level) != 1)
        throw std::invalid_argument("hecke element: index must be coprime to the level");
    HeckeElement e(ctx);
    e.coeffs_[r] = 1;
    return e;
}

HeckeElement& HeckeElement::add(std::int64_t r, Integer coeff) {
    if (std::gcd(r, ctx_.level) != 1)
        throw std::invalid_argument("hecke element: index must be coprime to the level");
    auto it = coeffs_.find(r);
    if (it == coeffs_.end()) {
        if (coeff != 0) coeffs_.emplace(r, std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second == 0) coeffs_.erase(it);
    }
    return *this;
}

HeckeElement HeckeElement::operator+(const HeckeElement& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("hecke element: context mismatch");
    HeckeElement r = *this;
    for (const auto& [idx, c] : o.coeffs_) r.add(idx, c);
    return r;
}

HeckeElement HeckeElement::operator*(const HeckeElement& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("hecke element: context mismatch");
    HeckeElement r(ctx_);
    for (const auto& [a, ca] : coeffs_) {
        for (const auto& [b, cb] : o.coeffs_) {
            const Integer prod = ca * cb;
            const std::int64_t g = std::gcd(a, b);
            for (std::int64_t d = 1; d <= g; ++d) {
                if (g % d != 0) continue;
                if (std::gcd(d, ctx_.level) != 1) continue;
                r.add(a / d * (b / d), prod * pow_int(Integer(d), ctx_.weight - 1));
            }
        }
    }
    return r;
}

Integer trace_of(const HeckeElement& e, TraceEngine& engine) {
    Integer total(0);
    for (const auto& [r, c] : e.coefficients())
        total += c * engine.trace({e.context().level, e.context().weight, r});
    return total;
}

Integer second_coefficient(const HeckeIndex& idx, TraceEngine& engine) {
    if (std::gcd(idx.level, idx.index) != 1)
        throw std::invalid_argument("second_coefficient requires gcd(level, index) = 1");
    if (engine.dim(idx.level, idx.weight) < 2)
        throw DimensionTooSmallError("a_2 undefined: dimension below 2 at level " +
                                     std::to_string(idx.level) + ", weight " +
                                     std::to_string(idx.weight));
    const Integer tr = engine.trace(idx);
    Integer square_sum(0);
    const std::int64_t m = idx.index;
    for (std::int64_t d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        square_sum += pow_int(Integer(d), idx.weight - 1) *
                      engine.trace({idx.level, idx.weight, (m / d) * (m / d)});
    }
    const Integer twice = tr * tr - square_sum;
    if (twice % 2 != 0) throw InternalInconsistencyError("a_2 numerator is odd");
    return twice / 2;
}

CharPolyPrefix char_poly_prefix(const HeckeIndex& idx, std::int64_t n_max, TraceEngine& engine) {
    if (n_max < 1) throw std::invalid_argument("char_poly_prefix: n_max must be positive");
    const Integer dim = engine.dim(idx.level, idx.weight);
    if (n_max > dim)
        throw std::invalid_argument("char_poly_prefix: n_max exceeds the dimension " + dim.get_str());

    CharPolyPrefix out;
    out.idx = idx;
    out.dim = dim;

    const HeckeContext ctx{idx.level, idx.weight};
    const HeckeElement base = HeckeElement::basis(ctx, idx.index);
    HeckeElement power = base;
    for (std::int64_t j = 1; j <= n_max; ++j) {
        out.power_sums.push_back(trace_of(power, engine));
        if (j < n_max) power = power * base;
    }

    // Newton: n a_n = sum_{i=1..n} (-1)^{i-1} a_{n-i} p_i, exact over Z.
    out.coeffs.assign(1, Integer(1));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        Integer acc(0);
        for (std::int64_t i = 1; i <= n; ++i) {
            const Integer term = out.coeffs[n - i] * out.power_sums[i - 1];
            if (i % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        if (acc % n != 0)
            throw InternalInconsistencyError("Newton identity division is inexact at n = " +
                                             std::to_string(n));
        out.coeffs.push_back(acc / n);
    }
    return out;
}

}  // namespace heckelab
