#ifndef HECKELAB_ORACLE_HPP
#define HECKELAB_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "heckelab/arith.hpp"

namespace heckelab {
namespace oracle {

// Truncated q-expansion with exact rational coefficients c(0..prec-1).
class QSeries {
  public:
    explicit QSeries(std::int64_t prec) : c_(prec, Rational(0)) {}

    std::int64_t prec() const { return static_cast<std::int64_t>(c_.size()); }
    const Rational& operator[](std::int64_t n) const { return c_.at(n); }
    Rational& operator[](std::int64_t n) { return c_.at(n); }

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries scaled(const Rational& s) const;

    bool is_integral() const;

  private:
    std::vector<Rational> c_;
};

// Normalized Eisenstein series of weight 4 or 6.
QSeries eisenstein(int weight, std::int64_t prec);

// The weight-12 cusp form (E4^3 - E6^2)/1728.
QSeries delta(std::int64_t prec);

// Dimension of the level-one cusp space, counted from the monomial basis
// of the graded ring (independent of any dimension formula).
std::int64_t cusp_dim(std::int64_t weight);

// Echelonized integral basis f_i = q^i + O(q^{dim+1}), i = 1..dim.
// Requires prec > dim.
std::vector<QSeries> miller_basis(std::int64_t weight, std::int64_t prec);

struct IntMatrix {
    std::int64_t n = 0;
    std::vector<Integer> a;  // row-major

    IntMatrix() = default;
    explicit IntMatrix(std::int64_t size) : n(size), a(size * size, Integer(0)) {}
    Integer& at(std::int64_t i, std::int64_t j) { return a[i * n + j]; }
    const Integer& at(std::int64_t i, std::int64_t j) const { return a[i * n + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    Integer trace() const;
};

// Matrix of the m-th Hecke operator on the Miller basis.
IntMatrix hecke_matrix(std::int64_t m, std::int64_t weight);

// Sum of all k x k principal minors of M, i.e. the k-th elementary
// symmetric function of its eigenvalues.
Integer principal_minor_sum(const IntMatrix& m, std::int64_t k);

struct EigenvalueSignature {
    std::int64_t weight = 0;
    std::int64_t dim = 0;
    Integer trace;                 // a_1
    std::optional<Integer> a2;     // present when dim >= 2
    std::vector<Integer> coeffs;   // a_0..a_dim, filled when dim <= 6
};

EigenvalueSignature signature(std::int64_t m, std::int64_t weight);

}  // namespace oracle
}  // namespace heckelab

#endif
