#ifndef HECKELAB_VERIFY_HPP
#define HECKELAB_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heckelab/class_numbers.hpp"

namespace heckelab {
namespace verify {

enum class ClaimId { T2Monotone, T4NonRepeat, T3LtT2, PrimeLevel, Distinguish, ConjScan };
enum class Verdict { Verified, Counterexample, Skipped };

std::string claim_name(ClaimId id);
ClaimId claim_from_name(const std::string& name);
std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

// One record of a violated (or review-flagged) instance. Values are decimal
// strings so a certificate never depends on platform integer width.
struct Witness {
    std::map<std::string, std::string> fields;
    bool operator==(const Witness&) const = default;
};

// Certificate for one claim over one parameter region.
struct VerificationReport {
    ClaimId claim = ClaimId::T2Monotone;
    std::map<std::string, std::string> parameters;
    Verdict verdict = Verdict::Skipped;
    std::vector<Witness> witnesses;
    std::map<std::string, std::string> notes;
    std::int64_t runtime_ms = 0;

    bool operator==(const VerificationReport&) const = default;
};

// JSON wire format, schema version 1; keys sorted, big integers as decimal
// strings. `indent < 0` emits the compact single-line form.
std::string to_json(const VerificationReport& report, int indent = -1);
VerificationReport report_from_json(const std::string& text);

struct ScanOptions {
    int workers = 1;
    int counterexample_cap = 10;  // stop collecting after this many
};

// Class-number range a second-coefficient computation at index m needs.
inline std::int64_t required_class_range(std::int64_t m) { return 4 * m * m; }

// a_2(T_2(N, 2k)) strictly decreasing over valid k <= k_max (valid means
// dimension >= 2). Level must be odd.
VerificationReport verify_t2_monotone(std::int64_t level, std::int64_t k_max,
                                      const ClassNumberTable& table, const ScanOptions& opt = {});

// a_2(T_4(N, 2k)) pairwise distinct over valid k <= k_max; also records
// whether the sequence increases past the bound threshold and whether the
// early values stay below the value at the threshold.
VerificationReport verify_t4_nonrepeat(std::int64_t level, std::int64_t k_max,
                                       const ClassNumberTable& table, const ScanOptions& opt = {});

// a_2(T_3(1, 2k)) < a_2(T_2(1, 2k)) for k_min <= k <= k_max, skipping the
// weights with dimension < 2.
VerificationReport verify_t3_vs_t2(std::int64_t k_max, const ClassNumberTable& table,
                                   std::int64_t k_min = 12, const ScanOptions& opt = {});

// a_2(T_2(p, 2k)) strictly decreasing across the listed odd primes
// (optionally preceded by level one). Runs below k = 58 are flagged
// exploratory.
VerificationReport verify_prime_level(std::int64_t k, const std::vector<std::int64_t>& primes,
                                      bool include_one, const ClassNumberTable& table,
                                      const ScanOptions& opt = {});

// Distinctness of the eigenvalue multisets of T_m(1, 2k) across valid
// weights <= 2 k_max, certified by (dimension, trace, a_2) signatures; the
// one-dimensional weights compare by trace alone. Re-runs the level-one
// non-repetition check it relies on.
VerificationReport verify_distinguish(std::int64_t m, std::int64_t k_max,
                                      const ClassNumberTable& table, const ScanOptions& opt = {});

// Searches for repeated a_2(T_m(N, 2k)) values per fixed level; any
// collision is reported as a counterexample candidate.
VerificationReport conjecture_scan(std::int64_t m, const std::vector<std::int64_t>& levels,
                                   std::int64_t k_max, const ClassNumberTable& table,
                                   const ScanOptions& opt = {});

// Multi-level harness runs: one merged certificate, parallel over levels,
// witnesses in ascending level order regardless of worker count.
VerificationReport scan_t2_monotone(const std::vector<std::int64_t>& levels, std::int64_t k_max,
                                    const ClassNumberTable& table, const ScanOptions& opt = {});
VerificationReport scan_t4_nonrepeat(const std::vector<std::int64_t>& levels, std::int64_t k_max,
                                     const ClassNumberTable& table, const ScanOptions& opt = {});

// Recomputes the values named by a witness; true when they all agree.
bool replay_witness(const VerificationReport& report, const Witness& witness,
                    const ClassNumberTable& table);

}  // namespace verify
}  // namespace heckelab

#endif
