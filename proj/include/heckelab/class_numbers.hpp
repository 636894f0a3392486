#ifndef HECKELAB_CLASS_NUMBERS_HPP
#define HECKELAB_CLASS_NUMBERS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heckelab/arith.hpp"

namespace heckelab {

// Weighted class number h_w(D) for D < 0, D = 0,1 (mod 4): the number of
// classes of primitive reduced positive-definite forms (a,b,c) of
// discriminant D, with the single class at D = -3 weighted 1/3 and the
// single class at D = -4 weighted 1/2.
Rational weighted_class_number(std::int64_t disc);

// Hurwitz class number H(n) for n >= 0: H(0) = -1/12, H(n) = 0 for
// n = 1,2 (mod 4), and otherwise the sum of h_w(-n/f^2) over all f with
// f^2 | n and -n/f^2 = 0,1 (mod 4).
Rational hurwitz_class_number(std::int64_t n);

// Read-only table of 12*H(n) and 12*h_w(D). Build it once with preload();
// concurrent readers may then share it. Reads past the preloaded range
// throw instead of filling on demand.
class ClassNumberTable {
  public:
    ClassNumberTable() = default;

    // Populates every n <= max_n (and the weighted values the H
    // decomposition touches). Idempotent; growing re-derives the table.
    void preload(std::int64_t max_n);

    std::int64_t max_n() const { return max_n_; }

    // 12*H(n) as an integer (-1 at n = 0).
    std::int64_t twelve_hurwitz(std::int64_t n) const;
    Rational hurwitz(std::int64_t n) const;

    // 12*h_w(disc) for disc < 0, disc = 0,1 (mod 4), |disc| <= max_n.
    std::int64_t twelve_weighted(std::int64_t disc) const;
    Rational weighted(std::int64_t disc) const;

    // CSV cache: header "n,twelve_H", one row per n in [0, max_n].
    void save_csv(std::ostream& out) const;
    static ClassNumberTable load_csv(std::istream& in);

    void save_csv_file(const std::string& path) const;
    static ClassNumberTable load_csv_file(const std::string& path);

  private:
    std::int64_t max_n_ = -1;
    std::vector<std::int64_t> twelve_H_;   // indexed by n
    std::vector<std::int64_t> twelve_hw_;  // indexed by |disc|
    void rebuild(std::int64_t max_n);
    void check_range(std::int64_t n) const;
};

}  // namespace heckelab

#endif
