#include "heckelab/class_numbers.hpp"

#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace heckelab {

namespace {

// Reduced means |b| <= a <= c with the boundary orientations (|b| = a or
// a = c) taken with b >= 0 so each class is counted once.
bool is_reduced(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if (b < 0 && (-b == a || a == c)) return false;
    return true;
}

// Weight of one form class in twelfths: 4 for the order-3 class (1,1,1),
// 6 for the order-2 class (1,0,1), 12 otherwise.
std::int64_t class_weight_twelfths(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a == 1 && b == 1 && c == 1) return 4;
    if (a == 1 && b == 0 && c == 1) return 6;
    return 12;
}

void validate_disc(std::int64_t disc) {
    if (disc >= 0) throw std::invalid_argument("weighted class number: discriminant must be negative");
    const std::int64_t r = ((disc % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw std::invalid_argument("weighted class number: discriminant must be 0 or 1 mod 4");
}

}  // namespace

Rational weighted_class_number(std::int64_t disc) {
    validate_disc(disc);
    std::int64_t twelfths = 0;
    for (std::int64_t a = 1; 3 * a * a <= -disc; ++a) {
        for (std::int64_t b = -a; b <= a; ++b) {
            const std::int64_t num = b * b - disc;  // 4ac
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (!is_reduced(a, b, c)) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            twelfths += class_weight_twelfths(a, b, c);
        }
    }
    return make_rational(twelfths, 12);
}

Rational hurwitz_class_number(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("hurwitz: n must be nonnegative");
    if (n == 0) return make_rational(-1, 12);
    const std::int64_t r = n % 4;
    if (r == 1 || r == 2) return Rational(0);
    Rational total(0);
    for (std::int64_t f = 1; f * f <= n; ++f) {
        if (n % (f * f) != 0) continue;
        const std::int64_t q = n / (f * f);
        const std::int64_t qr = q % 4;
        if (qr == 0 || qr == 3) total += weighted_class_number(-q);
    }
    return total;
}

void ClassNumberTable::rebuild(std::int64_t max_n) {
    twelve_hw_.assign(max_n + 1, 0);
    // One pass over all primitive reduced triples with 4ac - b^2 <= max_n.
    for (std::int64_t a = 1; 3 * a * a <= max_n; ++a) {
        for (std::int64_t b = -a; b <= a; ++b) {
            for (std::int64_t c = a; 4 * a * c - b * b <= max_n; ++c) {
                const std::int64_t n = 4 * a * c - b * b;
                if (n <= 0) continue;
                if (!is_reduced(a, b, c)) continue;
                if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
                twelve_hw_[n] += class_weight_twelfths(a, b, c);
            }
        }
    }
    // H from h_w by summing over square divisors.
    twelve_H_.assign(max_n + 1, 0);
    twelve_H_[0] = -1;
    for (std::int64_t f = 1; f * f <= max_n; ++f)
        for (std::int64_t q = 1; q * f * f <= max_n; ++q) {
            const std::int64_t qr = q % 4;
            if (qr == 0 || qr == 3) twelve_H_[q * f * f] += twelve_hw_[q];
        }
    max_n_ = max_n;
}

void ClassNumberTable::preload(std::int64_t max_n) {
    if (max_n < 0) throw std::invalid_argument("preload: max_n must be nonnegative");
    if (max_n <= max_n_) return;
    rebuild(max_n);
}

void ClassNumberTable::check_range(std::int64_t n) const {
    if (n < 0 || n > max_n_)
        throw std::out_of_range("class number table: n = " + std::to_string(n) +
                                " outside preloaded range [0, " + std::to_string(max_n_) + "]");
}

std::int64_t ClassNumberTable::twelve_hurwitz(std::int64_t n) const {
    check_range(n);
    return twelve_H_[n];
}

Rational ClassNumberTable::hurwitz(std::int64_t n) const {
    return make_rational(twelve_hurwitz(n), 12);
}

std::int64_t ClassNumberTable::twelve_weighted(std::int64_t disc) const {
    validate_disc(disc);
    check_range(-disc);
    return twelve_hw_[-disc];
}

Rational ClassNumberTable::weighted(std::int64_t disc) const {
    return make_rational(twelve_weighted(disc), 12);
}

void ClassNumberTable::save_csv(std::ostream& out) const {
    out << "n,twelve_H\n";
    for (std::int64_t n = 0; n <= max_n_; ++n) out << n << ',' << twelve_H_[n] << '\n';
}

ClassNumberTable ClassNumberTable::load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "n,twelve_H")
        throw std::runtime_error("class number cache: bad header");
    std::vector<std::int64_t> values;
    std::int64_t expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("class number cache: bad row");
        const std::int64_t n = std::stoll(line.substr(0, comma));
        if (n != expected) throw std::runtime_error("class number cache: rows must be 0,1,2,...");
        values.push_back(std::stoll(line.substr(comma + 1)));
        ++expected;
    }
    if (values.empty()) throw std::runtime_error("class number cache: empty");
    ClassNumberTable t;
    // The weighted map is not persisted; rebuild it and cross-check the
    // cached H column against the fresh decomposition.
    t.rebuild(static_cast<std::int64_t>(values.size()) - 1);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (t.twelve_H_[i] != values[i])
            throw std::runtime_error("class number cache: row " + std::to_string(i) +
                                     " disagrees with recomputation");
    return t;
}

void ClassNumberTable::save_csv_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    save_csv(out);
}

ClassNumberTable ClassNumberTable::load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return load_csv(in);
}

}  // namespace heckelab
