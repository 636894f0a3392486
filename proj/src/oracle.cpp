#include "heckelab/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace heckelab {
namespace oracle {

QSeries QSeries::operator+(const QSeries& o) const {
    if (prec() != o.prec()) throw std::invalid_argument("q-series precision mismatch");
    QSeries r(prec());
    for (std::int64_t i = 0; i < prec(); ++i) r[i] = c_[i] + o.c_[i];
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const {
    if (prec() != o.prec()) throw std::invalid_argument("q-series precision mismatch");
    QSeries r(prec());
    for (std::int64_t i = 0; i < prec(); ++i) r[i] = c_[i] - o.c_[i];
    return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
    if (prec() != o.prec()) throw std::invalid_argument("q-series precision mismatch");
    QSeries r(prec());
    for (std::int64_t i = 0; i < prec(); ++i) {
        if (c_[i] == 0) continue;
        for (std::int64_t j = 0; i + j < prec(); ++j) {
            if (o.c_[j] == 0) continue;
            r[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

QSeries QSeries::scaled(const Rational& s) const {
    QSeries r(prec());
    for (std::int64_t i = 0; i < prec(); ++i) r[i] = c_[i] * s;
    return r;
}

bool QSeries::is_integral() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const Rational& q) { return heckelab::is_integral(q); });
}

namespace {

Integer sigma_power(std::int64_t n, unsigned long k) {
    Integer s(0);
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += pow_int(Integer(d), k);
        const std::int64_t e = n / d;
        if (e != d) s += pow_int(Integer(e), k);
    }
    return s;
}

}  // namespace

QSeries eisenstein(int weight, std::int64_t prec) {
    if (prec < 1) throw std::invalid_argument("eisenstein: prec must be positive");
    QSeries e(prec);
    e[0] = 1;
    if (weight == 4) {
        for (std::int64_t n = 1; n < prec; ++n) e[n] = Rational(240 * sigma_power(n, 3));
    } else if (weight == 6) {
        for (std::int64_t n = 1; n < prec; ++n) e[n] = Rational(-504 * sigma_power(n, 5));
    } else {
        throw std::invalid_argument("eisenstein: weight must be 4 or 6");
    }
    return e;
}

QSeries delta(std::int64_t prec) {
    const QSeries e4 = eisenstein(4, prec);
    const QSeries e6 = eisenstein(6, prec);
    return (e4 * e4 * e4 - e6 * e6).scaled(make_rational(1, 1728));
}

std::int64_t cusp_dim(std::int64_t weight) {
    if (weight < 12) return 0;
    std::int64_t d = 0;
    const std::int64_t w = weight - 12;
    for (std::int64_t b = 0; 6 * b <= w; ++b)
        if ((w - 6 * b) % 4 == 0) ++d;
    return d;
}

std::vector<QSeries> miller_basis(std::int64_t weight, std::int64_t prec) {
    if (weight % 2 != 0 || weight < 0) throw std::invalid_argument("miller_basis: bad weight");
    const std::int64_t dim = cusp_dim(weight);
    if (dim == 0) return {};
    if (prec <= dim) throw std::invalid_argument("miller_basis: prec must exceed the dimension");

    // Span the cusp space by delta^c * E4^a * E6^b over 4a + 6b + 12c = weight,
    // c >= 1, then echelonize.
    const QSeries e4 = eisenstein(4, prec);
    const QSeries e6 = eisenstein(6, prec);
    const QSeries dlt = delta(prec);
    std::vector<QSeries> rows;
    for (std::int64_t c = 1; 12 * c <= weight; ++c) {
        const std::int64_t rem = weight - 12 * c;
        for (std::int64_t b = 0; 6 * b <= rem; ++b) {
            if ((rem - 6 * b) % 4 != 0) continue;
            const std::int64_t a = (rem - 6 * b) / 4;
            QSeries mono = dlt;
            for (std::int64_t i = 1; i < c; ++i) mono = mono * dlt;
            for (std::int64_t i = 0; i < a; ++i) mono = mono * e4;
            for (std::int64_t i = 0; i < b; ++i) mono = mono * e6;
            rows.push_back(mono);
        }
    }

    // Reduced row echelon over the rationals.
    std::vector<QSeries> echelon;
    for (std::int64_t col = 0; col < prec && static_cast<std::int64_t>(echelon.size()) < dim; ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r][col] != 0) { pivot = r; break; }
        if (pivot == rows.size()) continue;
        QSeries lead = rows[pivot].scaled(Rational(1) / rows[pivot][col]);
        rows.erase(rows.begin() + pivot);
        for (auto& r : rows)
            if (r[col] != 0) r = r - lead.scaled(r[col]);
        for (auto& r : echelon)
            if (r[col] != 0) r = r - lead.scaled(r[col]);
        echelon.push_back(std::move(lead));
    }

    if (static_cast<std::int64_t>(echelon.size()) != dim)
        throw InternalInconsistencyError("miller_basis: rank does not match the monomial count");
    for (std::int64_t i = 0; i < dim; ++i) {
        for (std::int64_t n = 0; n <= dim; ++n) {
            const Rational expected = (n == i + 1) ? Rational(1) : Rational(0);
            if (echelon[i][n] != expected)
                throw InternalInconsistencyError("miller_basis: pivots are not q^1..q^dim");
        }
        if (!echelon[i].is_integral())
            throw InternalInconsistencyError("miller_basis: non-integral basis element");
    }
    return echelon;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (n != o.n) throw std::invalid_argument("matrix size mismatch");
    IntMatrix r(n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t k = 0; k < n; ++k) {
            const Integer& x = at(i, k);
            if (x == 0) continue;
            for (std::int64_t j = 0; j < n; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

Integer IntMatrix::trace() const {
    Integer t(0);
    for (std::int64_t i = 0; i < n; ++i) t += at(i, i);
    return t;
}

IntMatrix hecke_matrix(std::int64_t m, std::int64_t weight) {
    if (m < 1) throw std::invalid_argument("hecke_matrix: m must be positive");
    const std::int64_t dim = cusp_dim(weight);
    IntMatrix mat(dim);
    if (dim == 0) return mat;
    const std::int64_t prec = m * dim + 1;
    const std::vector<QSeries> basis = miller_basis(weight, prec);
    for (std::int64_t i = 0; i < dim; ++i) {
        // Coefficient of q^n in T_m f: sum over d | gcd(m, n) of
        // d^{weight-1} c_f(mn/d^2); reading n = 1..dim recovers the
        // coordinates in the echelon basis.
        for (std::int64_t n = 1; n <= dim; ++n) {
            Rational coeff(0);
            for (std::int64_t d = 1; d <= std::min(m, n); ++d) {
                if (m % d != 0 || n % d != 0) continue;
                coeff += pow_int(Integer(d), weight - 1) * basis[i][m * n / (d * d)];
            }
            mat.at(n - 1, i) = to_integer(coeff);
        }
    }
    return mat;
}

namespace {

// Determinant by cofactor expansion; submatrices here stay tiny.
Integer det(const IntMatrix& m, std::vector<std::int64_t>& rows, std::vector<std::int64_t>& cols) {
    const std::size_t k = rows.size();
    if (k == 0) return Integer(1);
    if (k == 1) return m.at(rows[0], cols[0]);
    Integer d(0);
    const std::int64_t r0 = rows[0];
    std::vector<std::int64_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < k; ++j) {
        if (m.at(r0, cols[j]) == 0) continue;
        std::vector<std::int64_t> sub_cols;
        sub_cols.reserve(k - 1);
        for (std::size_t t = 0; t < k; ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        const Integer minor = det(m, sub_rows, sub_cols);
        if (j % 2 == 0)
            d += m.at(r0, cols[j]) * minor;
        else
            d -= m.at(r0, cols[j]) * minor;
    }
    return d;
}

void minor_sum_rec(const IntMatrix& m, std::int64_t k, std::int64_t start,
                   std::vector<std::int64_t>& picked, Integer& acc) {
    if (static_cast<std::int64_t>(picked.size()) == k) {
        std::vector<std::int64_t> rows = picked, cols = picked;
        acc += det(m, rows, cols);
        return;
    }
    for (std::int64_t i = start; i < m.n; ++i) {
        picked.push_back(i);
        minor_sum_rec(m, k, i + 1, picked, acc);
        picked.pop_back();
    }
}

}  // namespace

Integer principal_minor_sum(const IntMatrix& m, std::int64_t k) {
    if (k < 0 || k > m.n) throw std::invalid_argument("principal_minor_sum: bad order");
    Integer acc(0);
    std::vector<std::int64_t> picked;
    minor_sum_rec(m, k, 0, picked, acc);
    return acc;
}

EigenvalueSignature signature(std::int64_t m, std::int64_t weight) {
    EigenvalueSignature sig;
    sig.weight = weight;
    sig.dim = cusp_dim(weight);
    const IntMatrix mat = hecke_matrix(m, weight);
    sig.trace = mat.trace();
    if (sig.dim >= 2) sig.a2 = principal_minor_sum(mat, 2);
    if (sig.dim <= 6) {
        sig.coeffs.reserve(sig.dim + 1);
        for (std::int64_t k = 0; k <= sig.dim; ++k) sig.coeffs.push_back(principal_minor_sum(mat, k));
    }
    return sig;
}

}  // namespace oracle
}  // namespace heckelab
