#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qseries/arith.hpp"
#include "qseries/bounds.hpp"
#include "qseries/series.hpp"
#include "qseries/tau.hpp"

namespace qseries::cli {

inline constexpr int kExitOk = 0;           // all checks passed / output produced
inline constexpr int kExitCheckFailed = 1;  // a mathematical check failed
inline constexpr int kExitUsage = 2;        // usage or IO error

enum class Subcommand { sigma, tau, bounds, curve, perfect, factorial_growth, verify };
enum class OutputFormat { csv, json };
enum class RouteChoice { product, exp, pentagonal, all };

struct GridSpec {
    double min = 0.01;
    double max = 0.99;
    double step = 0.01;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::verify;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> output_path;
    bool cache = false;                      // tau: reuse/extend tau_cache.csv
    std::optional<std::string> cache_path;   // explicit cache file; implies cache
    std::uint64_t max_n = 1;                 // sigma / tau / perfect / factorial-growth
    RouteChoice route = RouteChoice::all;    // tau
    GridSpec grid;                           // bounds / verify
    double epsilon = 1e-9;
    std::uint64_t n_cap = std::uint64_t(1) << 20;
    double x_min = 0.05;                     // curve
    double x_max = 0.99;
    std::size_t samples = 95;
    std::vector<std::uint64_t> term_counts{10, 20};
    std::uint64_t tau_n = 200;               // verify
};

namespace detail {

// One output cell. Exact integers travel as decimal text so nothing gets
// rounded on its way to disk; floats are fixed at 17 significant digits.
struct Cell {
    enum class Kind { uint, exact, real, flag } kind = Kind::uint;
    std::uint64_t u = 0;
    std::string text;
    double d = 0.0;
    bool b = false;

    static Cell uint(std::uint64_t v) {
        Cell c;
        c.kind = Kind::uint;
        c.u = v;
        return c;
    }
    static Cell exact(const BigInt& v) {
        Cell c;
        c.kind = Kind::exact;
        c.text = v.to_string();
        return c;
    }
    static Cell real(double v) {
        Cell c;
        c.kind = Kind::real;
        c.d = v;
        return c;
    }
    static Cell flag(bool v) {
        Cell c;
        c.kind = Kind::flag;
        c.b = v;
        return c;
    }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            const Cell& c = row[i];
            switch (c.kind) {
                case Cell::Kind::uint: os << c.u; break;
                case Cell::Kind::exact: os << c.text; break;
                case Cell::Kind::real: os << format_real(c.d); break;
                case Cell::Kind::flag: os << (c.b ? "true" : "false"); break;
            }
        }
        os << "\n";
    }
}

inline void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            switch (c.kind) {
                case Cell::Kind::uint: obj[t.columns[i]] = c.u; break;
                case Cell::Kind::exact: obj[t.columns[i]] = c.text; break;
                case Cell::Kind::real: obj[t.columns[i]] = c.d; break;
                case Cell::Kind::flag: obj[t.columns[i]] = c.b; break;
            }
        }
        rows.push_back(std::move(obj));
    }
    os << rows.dump(2) << "\n";
}

inline int emit(const Table& t, const RunConfig& cfg, std::ostream& out,
                std::ostream& diag) {
    const auto write = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::csv)
            write_csv(t, os);
        else
            write_json(t, os);
    };
    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path);
        if (!file) {
            diag << "[error] cannot open output file: " << *cfg.output_path << "\n";
            return kExitUsage;
        }
        write(file);
        file.flush();
        if (!file) {
            diag << "[error] failed writing output file: " << *cfg.output_path << "\n";
            return kExitUsage;
        }
    } else {
        write(out);
    }
    return kExitOk;
}

inline std::vector<double> grid_points(const GridSpec& g) {
    if ((g.max - g.min) / g.step > 2e6)
        throw std::invalid_argument("grid too fine: more than 2000000 points");
    const auto count =
        static_cast<std::size_t>((g.max - g.min) / g.step + 1e-9) + 1;
    std::vector<double> xs;
    xs.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        xs.push_back(g.min + static_cast<double>(i) * g.step);
    return xs;
}

inline std::string default_cache_path() {
    const char* dir = std::getenv("QSERIES_CACHE_DIR");
    std::string base = dir && *dir ? dir : ".";
    return base + "/tau_cache.csv";
}

// Reads a tau cache written by write_tau_cache: header `n,tau`, contiguous
// rows from n = 1. Returns values indexed 0..K with [0] unused, or nullopt
// when the file does not exist.
inline std::optional<std::vector<BigInt>> read_tau_cache(const std::string& path) {
    std::ifstream file(path);
    if (!file) return std::nullopt;
    std::string line;
    if (!std::getline(file, line) || line != "n,tau")
        throw std::runtime_error("tau cache " + path + ": bad header");
    std::vector<BigInt> tau{BigInt(0)};
    std::uint64_t expect = 1;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("tau cache " + path + ": malformed row");
        if (line.substr(0, comma) != std::to_string(expect))
            throw std::runtime_error("tau cache " + path + ": rows must be contiguous from 1");
        tau.push_back(BigInt::from_string(line.substr(comma + 1)));
        ++expect;
    }
    return tau;
}

inline void write_tau_cache(const std::string& path, const std::vector<BigInt>& tau) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write tau cache: " + path);
    file << "n,tau\n";
    for (std::size_t n = 1; n < tau.size(); ++n)
        file << n << "," << tau[n].to_string() << "\n";
    file.flush();
    if (!file) throw std::runtime_error("failed writing tau cache: " + path);
}

inline Table sigma_rows(const SigmaTable& t) {
    Table out;
    out.columns = {"n", "sigma", "e_num", "e_den"};
    for (std::uint64_t n = 1; n <= t.max_n; ++n)
        out.rows.push_back({Cell::uint(n), Cell::exact(t.sigma[n]),
                            Cell::exact(t.e_ratio[n].num()),
                            Cell::exact(t.e_ratio[n].den())});
    return out;
}

inline Table tau_rows(const std::vector<BigInt>& tau) {
    Table out;
    out.columns = {"n", "tau"};
    for (std::size_t n = 1; n < tau.size(); ++n)
        out.rows.push_back({Cell::uint(n), Cell::exact(tau[n])});
    return out;
}

inline Table bounds_rows(const std::vector<BoundCertificate>& certs) {
    Table out;
    out.columns = {"x", "n_terms", "f_partial", "tail", "lower", "upper", "certified"};
    for (const auto& c : certs)
        out.rows.push_back({Cell::real(c.x), Cell::uint(c.terms_used),
                            Cell::real(c.f_partial), Cell::real(c.tail_bound),
                            Cell::real(c.lower), Cell::real(c.upper),
                            Cell::flag(c.certified)});
    return out;
}

inline Table curve_rows(const std::vector<CurvePoint>& points,
                        const std::vector<std::uint64_t>& term_counts) {
    Table out;
    out.columns.push_back("x");
    for (std::uint64_t t : term_counts)
        out.columns.push_back("f_" + std::to_string(t));
    out.columns.push_back("lower");
    out.columns.push_back("upper");
    for (const auto& pt : points) {
        std::vector<Cell> row{Cell::real(pt.x)};
        for (double f : pt.partials) row.push_back(Cell::real(f));
        row.push_back(Cell::real(pt.lower));
        row.push_back(Cell::real(pt.upper));
        out.rows.push_back(std::move(row));
    }
    return out;
}

inline Table perfect_rows(const std::vector<std::uint64_t>& ns) {
    Table out;
    out.columns = {"n"};
    for (std::uint64_t n : ns) out.rows.push_back({Cell::uint(n)});
    return out;
}

inline Table growth_rows(const std::vector<FactorialGrowthRow>& rows) {
    Table out;
    out.columns = {"n", "e_num", "e_den", "bound_num", "bound_den", "holds"};
    for (const auto& r : rows)
        out.rows.push_back({Cell::uint(r.n), Cell::exact(r.e_value.num()),
                            Cell::exact(r.e_value.den()),
                            Cell::exact(r.harmonic_bound.num()),
                            Cell::exact(r.harmonic_bound.den()), Cell::flag(r.holds)});
    return out;
}

inline int run_sigma(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    return emit(sigma_rows(build_sigma_table(cfg.max_n, 1)), cfg, out, diag);
}

inline int run_tau(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    const bool use_cache = cfg.cache || cfg.cache_path.has_value();
    const std::string cache_path =
        cfg.cache_path ? *cfg.cache_path : default_cache_path();

    std::vector<BigInt> tau;
    bool from_cache = false;
    if (use_cache) {
        auto cached = read_tau_cache(cache_path);
        if (cached && cached->size() > cfg.max_n) {
            tau.assign(cached->begin(), cached->begin() + cfg.max_n + 1);
            from_cache = true;
            diag << "[ok] tau cache covers n <= " << cfg.max_n << " (" << cache_path
                 << "), skipping recomputation\n";
        }
    }

    if (!from_cache) {
        switch (cfg.route) {
            case RouteChoice::product: tau = tau_product(cfg.max_n).tau; break;
            case RouteChoice::exp:
                tau = tau_exp(cfg.max_n, build_sigma_table(cfg.max_n, 1)).tau;
                break;
            case RouteChoice::pentagonal: tau = tau_pentagonal(cfg.max_n).tau; break;
            case RouteChoice::all: {
                TauTable a = tau_product(cfg.max_n);
                TauTable b = tau_exp(cfg.max_n, build_sigma_table(cfg.max_n, 1));
                TauTable c = tau_pentagonal(cfg.max_n);
                for (std::uint64_t n = 1; n <= cfg.max_n; ++n) {
                    if (a.tau[n] != b.tau[n] || a.tau[n] != c.tau[n]) {
                        diag << "[FAIL] tau route disagreement at n=" << n
                             << ": product=" << a.tau[n] << " exp=" << b.tau[n]
                             << " pentagonal=" << c.tau[n] << "\n";
                        return kExitCheckFailed;
                    }
                }
                diag << "[ok] tau routes agree for 1 <= n <= " << cfg.max_n << "\n";
                tau = std::move(a.tau);
                break;
            }
        }
        if (use_cache) {
            auto cached = read_tau_cache(cache_path);
            if (!cached || cached->size() < tau.size()) {
                write_tau_cache(cache_path, tau);
                diag << "[ok] tau cache written: " << cache_path << "\n";
            }
        }
    }
    return emit(tau_rows(tau), cfg, out, diag);
}

inline int run_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    std::vector<BoundCertificate> certs;
    std::size_t failures = 0;
    for (double x : grid_points(cfg.grid)) {
        certs.push_back(certify_sandwich(x, cfg.epsilon, cfg.n_cap));
        if (!certs.back().certified) ++failures;
    }
    if (failures == 0) {
        diag << "[ok] sandwich certified at all " << certs.size()
             << " grid points (epsilon=" << format_real(cfg.epsilon) << ")\n";
    } else {
        diag << "[FAIL] sandwich certification failed at " << failures << " of "
             << certs.size() << " grid points\n";
    }
    const int rc = emit(bounds_rows(certs), cfg, out, diag);
    if (rc != kExitOk) return rc;
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

inline int run_curve(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    auto points = emit_curve(cfg.x_min, cfg.x_max, cfg.samples, cfg.term_counts);
    return emit(curve_rows(points, cfg.term_counts), cfg, out, diag);
}

inline int run_perfect(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    return emit(perfect_rows(find_perfect(cfg.max_n)), cfg, out, diag);
}

inline int run_factorial_growth(const RunConfig& cfg, std::ostream& out,
                                std::ostream& diag) {
    auto rows = check_factorial_growth(cfg.max_n);
    std::size_t failures = 0;
    for (const auto& r : rows)
        if (r.n >= 3 && !r.holds) ++failures;
    if (failures == 0) {
        diag << "[ok] E(n!) exceeds the harmonic bound for 3 <= n <= " << cfg.max_n
             << " (n=2 is the documented equality boundary)\n";
    } else {
        diag << "[FAIL] harmonic bound violated at " << failures << " values of n\n";
    }
    const int rc = emit(growth_rows(rows), cfg, out, diag);
    if (rc != kExitOk) return rc;
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

inline int run_verify(const RunConfig& cfg, std::ostream&, std::ostream& diag) {
    bool all_ok = true;

    auto sigma = build_sigma_table(cfg.tau_n, 1);
    TauTable a = tau_product(cfg.tau_n);
    TauTable b = tau_exp(cfg.tau_n, sigma);  // throws integrality_error on failure
    TauTable c = tau_pentagonal(cfg.tau_n);
    diag << "[ok] exp-route integrality: all coefficients integral to n="
         << cfg.tau_n << "\n";

    bool agree = a.tau == b.tau && a.tau == c.tau;
    if (agree) {
        diag << "[ok] tau route agreement (product, exp, pentagonal) to n="
             << cfg.tau_n << "\n";
    } else {
        diag << "[FAIL] tau route disagreement below n=" << cfg.tau_n << "\n";
        all_ok = false;
    }

    auto deligne = check_deligne(a);
    std::size_t violations = 0;
    for (const auto& row : deligne)
        if (!row.satisfied) ++violations;
    if (violations == 0) {
        diag << "[ok] Deligne bound tau(p)^2 <= 4p^11 for all " << deligne.size()
             << " primes p <= " << cfg.tau_n << "\n";
    } else {
        diag << "[FAIL] Deligne bound violated at " << violations << " primes\n";
        all_ok = false;
    }

    std::size_t uncertified = 0, points = 0;
    for (double x : grid_points(cfg.grid)) {
        ++points;
        if (!certify_sandwich(x, cfg.epsilon, cfg.n_cap).certified) ++uncertified;
    }
    if (uncertified == 0) {
        diag << "[ok] sandwich certified at all " << points << " grid points\n";
    } else {
        diag << "[FAIL] sandwich certification failed at " << uncertified << " of "
             << points << " grid points\n";
        all_ok = false;
    }

    return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace detail

// Dispatch a parsed, validated configuration. Exit codes: 0 = success,
// 1 = a mathematical check failed, 2 = usage or IO error.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    try {
        switch (cfg.subcommand) {
            case Subcommand::sigma: return detail::run_sigma(cfg, out, diag);
            case Subcommand::tau: return detail::run_tau(cfg, out, diag);
            case Subcommand::bounds: return detail::run_bounds(cfg, out, diag);
            case Subcommand::curve: return detail::run_curve(cfg, out, diag);
            case Subcommand::perfect: return detail::run_perfect(cfg, out, diag);
            case Subcommand::factorial_growth:
                return detail::run_factorial_growth(cfg, out, diag);
            case Subcommand::verify: return detail::run_verify(cfg, out, diag);
        }
        diag << "[error] unknown subcommand\n";
        return kExitUsage;
    } catch (const integrality_error& e) {
        diag << "[FAIL] " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        diag << "[error] " << e.what() << "\n";
        return kExitUsage;
    }
}

// Parse command-line arguments (excluding argv[0]) and dispatch.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& diag) {
    RunConfig cfg;

    CLI::App app{"exact divisor sums, Ramanujan tau tables, and certified series bounds"};
    app.name("qseries");
    app.require_subcommand(1);

    const std::map<std::string, OutputFormat> format_map{
        {"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
    const std::map<std::string, RouteChoice> route_map{
        {"product", RouteChoice::product},
        {"exp", RouteChoice::exp},
        {"pentagonal", RouteChoice::pentagonal},
        {"all", RouteChoice::all}};

    std::string grid_str;
    std::string output_str;
    std::string cache_path_str;

    auto add_output_options = [&](CLI::App* cmd) {
        cmd->add_option("--format", cfg.format, "output format: csv or json")
            ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case));
        cmd->add_option("--output", output_str, "write data to this file instead of stdout");
    };

    auto* sigma_cmd =
        app.add_subcommand("sigma", "divisor-sum table: n, sigma(n), E(n) = sigma(n)/n");
    sigma_cmd->add_option("--max", cfg.max_n, "largest n to tabulate")
        ->required()
        ->check(CLI::PositiveNumber);
    add_output_options(sigma_cmd);

    auto* tau_cmd = app.add_subcommand("tau", "Ramanujan tau table via one or all routes");
    tau_cmd->add_option("--max", cfg.max_n, "largest n to tabulate")
        ->required()
        ->check(CLI::PositiveNumber);
    tau_cmd->add_option("--route", cfg.route,
                        "computation route: product, exp, pentagonal, or all")
        ->transform(CLI::CheckedTransformer(route_map, CLI::ignore_case));
    tau_cmd->add_flag("--cache", cfg.cache,
                      "reuse/extend tau_cache.csv (QSERIES_CACHE_DIR overrides the location)");
    tau_cmd->add_option("--cache-path", cache_path_str, "explicit cache file (implies --cache)");
    add_output_options(tau_cmd);

    auto* bounds_cmd = app.add_subcommand(
        "bounds", "certify zeta(2)/ln x < f(x) < x/(x-1) over a grid of x");
    bounds_cmd->add_option("--grid", grid_str, "grid as MIN:MAX:STEP, within (0,1)");
    bounds_cmd->add_option("--epsilon", cfg.epsilon, "strictness margin")
        ->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--cap", cfg.n_cap, "largest partial-sum length tried")
        ->check(CLI::PositiveNumber);
    add_output_options(bounds_cmd);

    auto* curve_cmd = app.add_subcommand(
        "curve", "partial sums of f plus both bound curves, for plotting");
    curve_cmd->add_option("--min", cfg.x_min, "left endpoint")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    curve_cmd->add_option("--max", cfg.x_max, "right endpoint")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    curve_cmd->add_option("--samples", cfg.samples, "number of evenly spaced samples")
        ->check(CLI::Range(std::size_t(2), std::size_t(1) << 24));
    curve_cmd->add_option("--terms", cfg.term_counts, "partial-sum term counts")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    add_output_options(curve_cmd);

    auto* perfect_cmd = app.add_subcommand("perfect", "perfect numbers up to a bound");
    perfect_cmd->add_option("--max", cfg.max_n, "largest n to search")
        ->required()
        ->check(CLI::PositiveNumber);
    add_output_options(perfect_cmd);

    auto* growth_cmd = app.add_subcommand(
        "factorial-growth", "E(n!) against the harmonic lower bound, exactly");
    growth_cmd->add_option("--max", cfg.max_n, "largest n (rows cover 2..n)")
        ->check(CLI::Range(std::uint64_t(2), std::uint64_t(5000)));
    add_output_options(growth_cmd);

    auto* verify_cmd = app.add_subcommand(
        "verify", "run the full cross-check suite (routes, integrality, Deligne, sandwich)");
    verify_cmd->add_option("--tau-n", cfg.tau_n, "tau table size for the checks")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--grid", grid_str, "sandwich grid as MIN:MAX:STEP");
    verify_cmd->add_option("--epsilon", cfg.epsilon, "strictness margin")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--cap", cfg.n_cap, "largest partial-sum length tried")
        ->check(CLI::PositiveNumber);

    // factorial-growth is the one subcommand whose --max is optional
    cfg.max_n = 12;

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, diag);
        diag << "[error] " << e.what() << "\n";
        return kExitUsage;
    }

    if (app.got_subcommand(sigma_cmd)) cfg.subcommand = Subcommand::sigma;
    if (app.got_subcommand(tau_cmd)) cfg.subcommand = Subcommand::tau;
    if (app.got_subcommand(bounds_cmd)) cfg.subcommand = Subcommand::bounds;
    if (app.got_subcommand(curve_cmd)) cfg.subcommand = Subcommand::curve;
    if (app.got_subcommand(perfect_cmd)) cfg.subcommand = Subcommand::perfect;
    if (app.got_subcommand(growth_cmd)) cfg.subcommand = Subcommand::factorial_growth;
    if (app.got_subcommand(verify_cmd)) cfg.subcommand = Subcommand::verify;

    if (!output_str.empty()) cfg.output_path = output_str;
    if (!cache_path_str.empty()) cfg.cache_path = cache_path_str;

    if (!grid_str.empty()) {
        double a = 0, b = 0, s = 0;
        char extra = 0;
        if (std::sscanf(grid_str.c_str(), "%lf:%lf:%lf%c", &a, &b, &s, &extra) != 3 ||
            !(a > 0.0 && a <= b && b < 1.0 && s > 0.0)) {
            diag << "[error] bad --grid \"" << grid_str
                 << "\": expected MIN:MAX:STEP with 0 < MIN <= MAX < 1 and STEP > 0\n";
            return kExitUsage;
        }
        cfg.grid = GridSpec{a, b, s};
    }

    if (cfg.subcommand == Subcommand::curve && !(cfg.x_min < cfg.x_max)) {
        diag << "[error] curve: --min must be smaller than --max\n";
        return kExitUsage;
    }

    return run(cfg, out, diag);
}

}  // namespace qseries::cli
