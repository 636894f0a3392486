#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heckelab/bounds.hpp"
#include "heckelab/hecke_algebra.hpp"
#include "heckelab/oracle.hpp"
#include "heckelab/trace.hpp"
#include "heckelab/verify.hpp"

namespace {

using namespace heckelab;
using nlohmann::json;

enum ExitCode { kOk = 0, kCounterexample = 1, kUsage = 2, kPrecondition = 3, kInternal = 4 };

struct RunConfig {
    std::string format = "auto";  // auto -> human on a terminal, json when piped
    std::string cache_dir;
    std::string out_path;
    int workers = 1;
    int cap = 10;

    bool human() const { return resolved() == "human"; }
    bool csv() const { return resolved() == "csv"; }
    std::string resolved() const {
        if (format != "auto") return format;
        return isatty(fileno(stdout)) ? "human" : "json";
    }
};

std::string rational_str(const Rational& q) { return q.get_str(); }

double rough(const Rational& q) { return q.get_d(); }

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
    out << text << '\n';
}

// Class-number cache: load from <dir>/hurwitz.csv when present, grow to the
// requested range, write back when a directory is configured.
ClassNumberTable prepare_table(const RunConfig& cfg, std::int64_t max_n) {
    std::string dir = cfg.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("HECKELAB_CACHE")) dir = env;
    ClassNumberTable table;
    std::string file;
    if (!dir.empty()) {
        file = (std::filesystem::path(dir) / "hurwitz.csv").string();
        if (std::filesystem::exists(file)) table = ClassNumberTable::load_csv_file(file);
    }
    const std::int64_t before = table.max_n();
    table.preload(max_n);
    if (!file.empty() && table.max_n() > before) {
        std::filesystem::create_directories(dir);
        table.save_csv_file(file);
    }
    return table;
}

verify::ScanOptions scan_options(const RunConfig& cfg) {
    verify::ScanOptions opt;
    opt.workers = cfg.workers;
    opt.counterexample_cap = cfg.cap;
    return opt;
}

std::vector<std::int64_t> odd_levels(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = lo % 2 == 0 ? lo + 1 : lo; n <= hi; n += 2) out.push_back(n);
    return out;
}

int emit_report(const RunConfig& cfg, verify::VerificationReport report) {
    const int code = report.verdict == verify::Verdict::Counterexample ? kCounterexample : kOk;
    if (cfg.human()) {
        std::string text = verify::claim_name(report.claim) + ": " +
                           verify::verdict_name(report.verdict);
        for (const auto& [k, v] : report.parameters) text += "\n  " + k + " = " + v;
        for (const auto& [k, v] : report.notes) text += "\n  note " + k + " = " + v;
        for (const auto& w : report.witnesses) {
            text += "\n  witness:";
            for (const auto& [k, v] : w.fields) text += " " + k + "=" + v;
        }
        text += "\n  runtime_ms = " + std::to_string(report.runtime_ms);
        emit(cfg, text);
    } else {
        // Timing is suppressed in machine mode so identical invocations stay
        // byte-identical regardless of the worker count.
        report.runtime_ms = 0;
        emit(cfg, verify::to_json(report));
    }
    return code;
}

int cmd_trace(const RunConfig& cfg, std::int64_t m, std::int64_t level, std::int64_t weight) {
    const ClassNumberTable table = prepare_table(cfg, 4 * m);
    const TraceBreakdown b = hecke_trace({level, weight, m}, table);
    if (cfg.human()) {
        emit(cfg,
             "Tr T_" + std::to_string(m) + " on S_" + std::to_string(weight) + "(level " +
                 std::to_string(level) + ")\n" +
                 "  A1 identity:   " + rational_str(b.identity) + "\n" +
                 "  A2 elliptic:   " + rational_str(b.elliptic) + "\n" +
                 "  A3 hyperbolic: " + rational_str(b.hyperbolic) + "\n" +
                 "  A4 weight-2:   " + rational_str(b.weight2) + "\n" +
                 "  total:         " + b.total.get_str());
    } else if (cfg.csv()) {
        emit(cfg, "level,weight,m,A1,A2,A3,A4,total\n" + std::to_string(level) + ',' +
                      std::to_string(weight) + ',' + std::to_string(m) + ',' +
                      rational_str(b.identity) + ',' + rational_str(b.elliptic) + ',' +
                      rational_str(b.hyperbolic) + ',' + rational_str(b.weight2) + ',' +
                      b.total.get_str());
    } else {
        json j;
        j["schema"] = 1;
        j["command"] = "trace";
        j["level"] = std::to_string(level);
        j["weight"] = std::to_string(weight);
        j["m"] = std::to_string(m);
        j["A1"] = rational_str(b.identity);
        j["A2"] = rational_str(b.elliptic);
        j["A3"] = rational_str(b.hyperbolic);
        j["A4"] = rational_str(b.weight2);
        j["total"] = b.total.get_str();
        emit(cfg, j.dump());
    }
    return kOk;
}

int cmd_dim(const RunConfig& cfg, std::int64_t level, std::int64_t weight) {
    const DimensionBreakdown d = cusp_dim(level, weight);
    if (cfg.human()) {
        emit(cfg, "dim S_" + std::to_string(weight) + "(level " + std::to_string(level) + ") = " +
                      d.total.get_str() + "\n  main = " + rational_str(d.main) +
                      "\n  boundary = " + rational_str(d.boundary) +
                      "\n  delta_k1 = " + std::to_string(d.delta_k1) +
                      "\n  c3 term = " + rational_str(d.c3_term) +
                      "\n  c4 term = " + rational_str(d.c4_term));
    } else if (cfg.csv()) {
        emit(cfg, "level,weight,main,boundary,delta_k1,c3,c4,total\n" + std::to_string(level) +
                      ',' + std::to_string(weight) + ',' + rational_str(d.main) + ',' +
                      rational_str(d.boundary) + ',' + std::to_string(d.delta_k1) + ',' +
                      rational_str(d.c3_term) + ',' + rational_str(d.c4_term) + ',' +
                      d.total.get_str());
    } else {
        json j;
        j["schema"] = 1;
        j["command"] = "dim";
        j["level"] = std::to_string(level);
        j["weight"] = std::to_string(weight);
        j["main"] = rational_str(d.main);
        j["boundary"] = rational_str(d.boundary);
        j["delta_k1"] = d.delta_k1;
        j["c3_term"] = rational_str(d.c3_term);
        j["c4_term"] = rational_str(d.c4_term);
        j["total"] = d.total.get_str();
        emit(cfg, j.dump());
    }
    return kOk;
}

int cmd_a2(const RunConfig& cfg, std::int64_t m, std::int64_t level_lo, std::int64_t level_hi,
           std::int64_t k_lo, std::int64_t k_hi) {
    const ClassNumberTable table = prepare_table(cfg, verify::required_class_range(m));
    TraceEngine engine(table);
    struct Row {
        std::int64_t level, weight;
        Integer a1, a2;
    };
    std::vector<Row> rows;
    const bool single_point = level_lo == level_hi && k_lo == k_hi;
    for (std::int64_t level = level_lo; level <= level_hi; ++level) {
        if (std::gcd(level, m) != 1) {
            if (single_point) throw std::invalid_argument("a2 requires gcd(level, m) = 1");
            continue;
        }
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            if (engine.dim(level, 2 * k) < 2 && !single_point) continue;
            rows.push_back({level, 2 * k, engine.trace({level, 2 * k, m}),
                            second_coefficient({level, 2 * k, m}, engine)});
        }
    }
    if (cfg.csv()) {
        std::string text = "level,weight,m,a1,a2";
        for (const Row& r : rows)
            text += "\n" + std::to_string(r.level) + ',' + std::to_string(r.weight) + ',' +
                    std::to_string(m) + ',' + r.a1.get_str() + ',' + r.a2.get_str();
        emit(cfg, text);
    } else if (cfg.human()) {
        std::string text = "a2 values for m = " + std::to_string(m);
        for (const Row& r : rows)
            text += "\n  level " + std::to_string(r.level) + " weight " + std::to_string(r.weight) +
                    ": a1 = " + r.a1.get_str() + ", a2 = " + r.a2.get_str();
        if (rows.empty()) text += "\n  (no levels/weights with dimension >= 2 in range)";
        emit(cfg, text);
    } else {
        json arr = json::array();
        for (const Row& r : rows) {
            json j;
            j["level"] = std::to_string(r.level);
            j["weight"] = std::to_string(r.weight);
            j["m"] = std::to_string(m);
            j["a1"] = r.a1.get_str();
            j["a2"] = r.a2.get_str();
            arr.push_back(j);
        }
        json top;
        top["schema"] = 1;
        top["command"] = "a2";
        top["rows"] = arr;
        emit(cfg, top.dump());
    }
    return kOk;
}

int cmd_charpoly(const RunConfig& cfg, std::int64_t m, std::int64_t level, std::int64_t weight,
                 std::int64_t n_max) {
    if (n_max == 0)  // default: as much of the polynomial as is sane, capped at 6
        n_max = std::min<std::int64_t>(cusp_dim(level, weight).total.get_si(), 6);
    if (n_max < 1) throw std::invalid_argument("charpoly: the space is zero-dimensional");
    Integer reach = pow_int(Integer(m), n_max);
    if (reach > 1'000'000)
        throw std::invalid_argument("charpoly: m^n_max is too large to tabulate class numbers");
    const ClassNumberTable table = prepare_table(cfg, 4 * reach.get_si());
    TraceEngine engine(table);
    const CharPolyPrefix prefix = char_poly_prefix({level, weight, m}, n_max, engine);
    if (cfg.human()) {
        std::string text = "char poly prefix of T_" + std::to_string(m) + " on S_" +
                           std::to_string(weight) + "(level " + std::to_string(level) +
                           "), dim " + prefix.dim.get_str();
        for (std::size_t i = 0; i < prefix.coeffs.size(); ++i)
            text += "\n  a_" + std::to_string(i) + " = " + prefix.coeffs[i].get_str();
        for (std::size_t i = 0; i < prefix.power_sums.size(); ++i)
            text += "\n  p_" + std::to_string(i + 1) + " = " + prefix.power_sums[i].get_str();
        emit(cfg, text);
    } else {
        json j;
        j["schema"] = 1;
        j["command"] = "charpoly";
        j["level"] = std::to_string(level);
        j["weight"] = std::to_string(weight);
        j["m"] = std::to_string(m);
        j["dim"] = prefix.dim.get_str();
        json coeffs = json::array(), sums = json::array();
        for (const Integer& c : prefix.coeffs) coeffs.push_back(c.get_str());
        for (const Integer& p : prefix.power_sums) sums.push_back(p.get_str());
        j["coeffs"] = std::move(coeffs);
        j["power_sums"] = std::move(sums);
        emit(cfg, j.dump());
    }
    return kOk;
}

int cmd_bounds(const RunConfig& cfg, const std::string& variant, std::int64_t level) {
    const bounds::Variant v = variant == "t2" ? bounds::Variant::T2 : bounds::Variant::T4;
    const bounds::BoundReport r = bounds::bound_report(level, v);
    const std::string threshold = v == bounds::Variant::T2 ? "11/8" : "15/192";
    if (cfg.human()) {
        emit(cfg, "envelope bound for " + variant + " at level " + std::to_string(level) + ": " +
                      rational_str(r.envelope) + " (~" + std::to_string(rough(r.envelope)) + ")" +
                      "\n  below " + threshold + ": " + (r.below_global_threshold ? "yes" : "no") +
                      "\n  k threshold: " + std::to_string(r.k_threshold));
    } else {
        json j;
        j["schema"] = 1;
        j["command"] = "bounds";
        j["variant"] = variant;
        j["level"] = std::to_string(level);
        j["envelope"] = rational_str(r.envelope);
        j["global_threshold"] = threshold;
        j["below_global_threshold"] = r.below_global_threshold;
        j["k_threshold"] = std::to_string(r.k_threshold);
        emit(cfg, j.dump());
    }
    return kOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::int64_t m, std::int64_t weight) {
    const ClassNumberTable table = prepare_table(cfg, verify::required_class_range(m));
    TraceEngine engine(table);
    const oracle::EigenvalueSignature sig = oracle::signature(m, weight);
    const Integer formula_a1 = engine.trace({1, weight, m});
    bool ok = sig.trace == formula_a1;
    std::string formula_a2;
    if (sig.dim >= 2) {
        const Integer a2 = second_coefficient({1, weight, m}, engine);
        formula_a2 = a2.get_str();
        ok = ok && sig.a2.has_value() && *sig.a2 == a2;
    }
    if (cfg.human()) {
        std::string text = "oracle check T_" + std::to_string(m) + ", weight " +
                           std::to_string(weight) + ": " + (ok ? "agree" : "DISAGREE");
        text += "\n  dim " + std::to_string(sig.dim);
        text += "\n  a1 oracle " + sig.trace.get_str() + " vs formula " + formula_a1.get_str();
        if (sig.dim >= 2)
            text += "\n  a2 oracle " + sig.a2->get_str() + " vs formula " + formula_a2;
        emit(cfg, text);
    } else {
        json j;
        j["schema"] = 1;
        j["command"] = "oracle-check";
        j["m"] = std::to_string(m);
        j["weight"] = std::to_string(weight);
        j["dim"] = std::to_string(sig.dim);
        j["agree"] = ok;
        j["a1_oracle"] = sig.trace.get_str();
        j["a1_formula"] = formula_a1.get_str();
        if (sig.dim >= 2) {
            j["a2_oracle"] = sig.a2->get_str();
            j["a2_formula"] = formula_a2;
        }
        emit(cfg, j.dump());
    }
    return ok ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hecke traces, characteristic-polynomial coefficients, and"
                 " machine-checkable non-repetition certificates"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"auto", "human", "json", "csv"}));
    app.add_option("--cache-dir", cfg.cache_dir, "Class-number cache directory");
    app.add_option("--workers", cfg.workers, "Worker threads for scans")->check(CLI::PositiveNumber);
    app.add_option("--cap", cfg.cap, "Counterexample cap")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out_path, "Write the result to a file instead of stdout");

    std::int64_t m = 2, level = 1, weight = 12, n_max = 2;
    std::int64_t k_max = 40, k_min = 12, k = 58;
    std::int64_t level_lo = 1, level_hi = 1, max_prime = 47;
    bool include_one = true;

    CLI::App* trace_cmd = app.add_subcommand("trace", "Trace of one Hecke operator");
    trace_cmd->add_option("--m", m)->required();
    trace_cmd->add_option("--level", level)->required();
    trace_cmd->add_option("--weight", weight)->required();

    CLI::App* dim_cmd = app.add_subcommand("dim", "Cusp-space dimension");
    dim_cmd->add_option("--level", level)->required();
    dim_cmd->add_option("--weight", weight)->required();

    CLI::App* a2_cmd = app.add_subcommand("a2", "Second coefficients over a (level, weight) grid");
    a2_cmd->add_option("--m", m)->required();
    a2_cmd->add_option("--level", level_lo, "Single level (or use --level-max for a range)");
    a2_cmd->add_option("--level-max", level_hi);
    a2_cmd->add_option("--k-min", k_min)->default_val(1);
    a2_cmd->add_option("--k-max", k_max)->default_val(0);
    a2_cmd->add_option("--weight", weight, "Single weight 2k, shorthand for k-min = k-max = k")
        ->default_val(0);

    CLI::App* charpoly_cmd = app.add_subcommand("charpoly", "Characteristic polynomial prefix");
    charpoly_cmd->add_option("--m", m)->required();
    charpoly_cmd->add_option("--level", level)->required();
    charpoly_cmd->add_option("--weight", weight)->required();
    charpoly_cmd->add_option("--n-max", n_max, "Coefficients to compute (default min(dim, 6))")
        ->default_val(0);

    std::string variant = "t2";
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "Envelope bound and weight threshold");
    bounds_cmd->add_option("--variant", variant)->check(CLI::IsMember({"t2", "t4"}))->required();
    bounds_cmd->add_option("--level", level)->required();

    CLI::App* oracle_cmd = app.add_subcommand("oracle-check", "Compare formula with the q-expansion oracle");
    oracle_cmd->add_option("--m", m)->required();
    oracle_cmd->add_option("--weight", weight)->required();

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run a theorem checker");
    verify_cmd->require_subcommand(1);

    CLI::App* v_t2 = verify_cmd->add_subcommand("t2-monotone", "Strict decrease of a2 at index 2");
    v_t2->add_option("--level", level_lo, "Level, or lower end with --level-max");
    v_t2->add_option("--level-max", level_hi);
    v_t2->add_option("--k-max", k_max)->required();

    CLI::App* v_t4 = verify_cmd->add_subcommand("t4-nonrepeat", "Non-repetition of a2 at index 4");
    v_t4->add_option("--level", level_lo);
    v_t4->add_option("--level-max", level_hi);
    v_t4->add_option("--k-max", k_max)->required();

    CLI::App* v_t3 = verify_cmd->add_subcommand("t3-lt-t2", "a2 at index 3 below index 2, level one");
    v_t3->add_option("--k-max", k_max)->required();
    v_t3->add_option("--k-min", k_min)->default_val(12);

    CLI::App* v_pl = verify_cmd->add_subcommand("prime-level", "Strict decrease across prime levels");
    v_pl->add_option("--k", k)->required();
    v_pl->add_option("--max-prime", max_prime)->default_val(47);
    v_pl->add_flag("!--no-include-one", include_one, "Drop level one from the comparison");

    CLI::App* v_dist = verify_cmd->add_subcommand("distinguish", "Eigenvalue multiset distinctness");
    v_dist->add_option("--m", m)->required()->check(CLI::IsMember({"2", "4"}));
    v_dist->add_option("--k-max", k_max)->required();

    CLI::App* v_conj = verify_cmd->add_subcommand("conjecture", "Collision scan for general index");
    v_conj->add_option("--m", m)->required();
    v_conj->add_option("--level", level_lo)->required();
    v_conj->add_option("--level-max", level_hi);
    v_conj->add_option("--k-max", k_max)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kUsage;
    }

    try {
        if (trace_cmd->parsed()) return cmd_trace(cfg, m, level, weight);
        if (dim_cmd->parsed()) return cmd_dim(cfg, level, weight);
        if (a2_cmd->parsed()) {
            if (weight > 0) k_min = k_max = weight / 2;
            if (k_max <= 0) throw std::invalid_argument("a2: give --weight or --k-max");
            if (level_hi < level_lo) level_hi = level_lo;
            return cmd_a2(cfg, m, level_lo, level_hi, k_min, k_max);
        }
        if (charpoly_cmd->parsed()) return cmd_charpoly(cfg, m, level, weight, n_max);
        if (bounds_cmd->parsed()) return cmd_bounds(cfg, variant, level);
        if (oracle_cmd->parsed()) return cmd_oracle_check(cfg, m, weight);

        if (verify_cmd->parsed()) {
            if (level_hi < level_lo) level_hi = level_lo;
            const ClassNumberTable t16 = v_t2->parsed() || v_pl->parsed()
                                             ? prepare_table(cfg, 16)
                                             : ClassNumberTable();
            if (v_t2->parsed()) {
                const auto levels = odd_levels(level_lo, level_hi);
                return emit_report(cfg, levels.size() == 1
                                            ? verify::verify_t2_monotone(levels[0], k_max, t16,
                                                                         scan_options(cfg))
                                            : verify::scan_t2_monotone(levels, k_max, t16,
                                                                       scan_options(cfg)));
            }
            if (v_t4->parsed()) {
                const ClassNumberTable t = prepare_table(cfg, 64);
                const auto levels = odd_levels(level_lo, level_hi);
                return emit_report(cfg, levels.size() == 1
                                            ? verify::verify_t4_nonrepeat(levels[0], k_max, t,
                                                                          scan_options(cfg))
                                            : verify::scan_t4_nonrepeat(levels, k_max, t,
                                                                        scan_options(cfg)));
            }
            if (v_t3->parsed()) {
                const ClassNumberTable t = prepare_table(cfg, 36);
                return emit_report(cfg, verify::verify_t3_vs_t2(k_max, t, k_min, scan_options(cfg)));
            }
            if (v_pl->parsed()) {
                std::vector<std::int64_t> primes;
                for (std::int64_t p = 3; p <= max_prime; p += 2)
                    if (is_prime(p)) primes.push_back(p);
                return emit_report(cfg, verify::verify_prime_level(k, primes, include_one, t16,
                                                                   scan_options(cfg)));
            }
            if (v_dist->parsed()) {
                const ClassNumberTable t = prepare_table(cfg, verify::required_class_range(m));
                return emit_report(cfg, verify::verify_distinguish(m, k_max, t, scan_options(cfg)));
            }
            if (v_conj->parsed()) {
                const ClassNumberTable t = prepare_table(cfg, verify::required_class_range(m));
                const auto levels = odd_levels(level_lo, level_hi);
                return emit_report(cfg, verify::conjecture_scan(m, levels, k_max, t,
                                                                scan_options(cfg)));
            }
        }
        std::cerr << "no command\n";
        return kUsage;
    } catch (const InternalInconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return kInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
}
