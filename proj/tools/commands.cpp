#include "commands.hpp"

#include "wwd/optimizer.hpp"
#include "wwd/record_io.hpp"
#include "wwd/verification.hpp"
#include "wwd/whichway.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

namespace wwd::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw UsageError("invalid " + what + ": '" + text + "'");
    }
    return value;
}

std::vector<double> parse_visibilities(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const double v = parse_double(item, "visibility");
        if (!(v >= 0.0 && v <= 1.0)) throw UsageError("visibility " + item + " outside [0, 1]");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("--visibility needs at least one value");
    return out;
}

QuantonOutcome parse_sigma(const std::string& text) {
    if (text == "+1" || text == "1") return QuantonOutcome::a;
    if (text == "-1") return QuantonOutcome::b;
    throw UsageError("--sigma must be +1 or -1, got '" + text + "'");
}

unsigned parse_threads(const std::string& text) {
    if (text == "auto") return 0;
    unsigned n = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || n == 0) {
        throw UsageError("--threads must be a positive integer or 'auto', got '" + text + "'");
    }
    return n;
}

// Shortest text that round-trips, e.g. "1e-12" rather than 17 digits.
std::string shortest(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, ptr) : format_real(value);
}

enum class Format { csv, json };

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw UsageError("--format must be csv or json, got '" + text + "'");
}

// Writes to --out when given, otherwise to the provided stream.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
    if (path.empty() || path == "-") {
        write(fallback);
        fallback.flush();
        if (!fallback) throw IoError("failed to write output");
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    write(file);
    file.flush();
    if (!file) throw IoError("failed to write '" + path + "'");
}

struct Options {
    std::string visibility = "0.5,0.9,0.97";
    int delta_steps = 50;
    std::string delta;
    int samples = 10000;
    std::string sigma = "+1";
    std::uint64_t seed = 42;
    std::string format = "csv";
    std::string out;
    std::string threads = "auto";
    std::optional<double> tolerance;
    bool no_polish = false;
};

void require_positive(int value, const char* flag) {
    if (value <= 0) throw UsageError(std::string(flag) + " must be positive");
}

int cmd_scan(const Options& o, std::ostream& out) {
    ScanConfig cfg;
    cfg.visibilities = parse_visibilities(o.visibility);
    require_positive(o.delta_steps, "--delta-steps");
    require_positive(o.samples, "--samples");
    cfg.delta_steps = o.delta_steps;
    cfg.samples = o.samples;
    cfg.sigma = parse_sigma(o.sigma);
    cfg.master_seed = o.seed;
    cfg.threads = parse_threads(o.threads);
    cfg.search.polish = !o.no_polish;
    const Format fmt = parse_format(o.format);

    const auto records = run_scan(cfg);
    emit(o.out, out, [&](std::ostream& os) {
        if (fmt == Format::csv) {
            write_csv(os, records);
        } else {
            write_json(os, records);
        }
    });
    return kSuccess;
}

int cmd_point(const Options& o, std::ostream& out) {
    const auto vis = parse_visibilities(o.visibility);
    if (vis.size() != 1) throw UsageError("point takes exactly one --visibility value");
    if (o.delta.empty()) throw UsageError("point requires --delta");
    const double delta = parse_double(o.delta, "delta");
    if (!std::isfinite(delta)) throw UsageError("--delta must be finite");
    require_positive(o.samples, "--samples");
    const QuantonOutcome sigma = parse_sigma(o.sigma);
    const Format fmt = parse_format(o.format);
    parse_threads(o.threads);

    const ScanRecord rec = evaluate_cell(vis.front(), PhaseShift(delta), sigma, o.samples, cell_seed(o.seed, 0, 0),
                                         SearchOptions{.polish = !o.no_polish});
    std::optional<double> residual;
    if (rec.d_opt) residual = duality_residual(*rec.d_opt, rec.visibility);

    emit(o.out, out, [&](std::ostream& os) {
        if (fmt == Format::csv) {
            os << kCsvHeader << ",duality_residual\n";
            os << format_csv_row(rec) << ',' << (residual ? format_real(*residual) : std::string()) << '\n';
        } else {
            std::stringstream buf;
            write_json(buf, {rec});
            auto arr = nlohmann::json::parse(buf);
            auto obj = arr.at(0);
            obj["duality_residual"] = residual ? nlohmann::json(*residual) : nlohmann::json(nullptr);
            os << obj.dump(2) << '\n';
        }
    });
    return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
    VerifyOptions vo;
    vo.seed = o.seed;
    require_positive(o.samples, "--samples");
    require_positive(o.delta_steps, "--delta-steps");
    vo.samples = o.samples;
    vo.delta_steps = o.delta_steps;
    vo.threads = parse_threads(o.threads);
    if (o.tolerance) {
        if (!(*o.tolerance >= 0.0)) throw UsageError("--tolerance must be non-negative");
        vo.monte_carlo_tolerance = *o.tolerance;
    }

    const auto results = run_verification(vo);
    bool all_ok = true;
    emit(o.out, out, [&](std::ostream& os) {
        os << "status  residual                 threshold  check\n";
        for (const auto& r : results) {
            all_ok = all_ok && r.passed;
            os << (r.passed ? "PASS  " : "FAIL  ") << "  " << std::left << std::setw(24) << format_real(r.residual)
               << ' ' << (r.at_least ? ">= " : "<= ") << std::setw(8) << shortest(r.threshold) << "  " << r.name
               << (r.monte_carlo ? " [mc]" : "") << '\n';
        }
        os << (all_ok ? "all checks passed" : "verification FAILED") << '\n';
    });
    return all_ok ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Which-way detector duality simulator"};
    app.name("wwduality");
    app.require_subcommand(1);

    Options o;
    auto* scan = app.add_subcommand("scan", "Optimized distinguishability over a (V, delta) grid");
    auto* point = app.add_subcommand("point", "Evaluate one (V, delta, sigma) cell");
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");

    for (auto* sub : {scan, point, verify}) {
        sub->add_option("--samples", o.samples, "Random bases per cell")->capture_default_str();
        sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
        sub->add_option("--threads", o.threads, "Worker threads or 'auto'")->capture_default_str();
        sub->add_option("--out", o.out, "Output path (default: standard output)");
    }
    for (auto* sub : {scan, point}) {
        sub->add_option("--visibility", o.visibility, "Comma-separated visibilities in [0, 1]")
            ->capture_default_str();
        sub->add_option("--sigma", o.sigma, "Quanton outcome: +1 or -1")->capture_default_str();
        sub->add_option("--format", o.format, "csv or json")->capture_default_str();
        sub->add_flag("--no-polish", o.no_polish, "Plain random search without local refinement");
    }
    for (auto* sub : {scan, verify}) {
        sub->add_option("--delta-steps", o.delta_steps, "Uniform delta grid size over [0, 2pi)")
            ->capture_default_str();
    }
    point->add_option("--delta", o.delta, "Phase shift in radians");
    verify->add_option("--tolerance", o.tolerance, "Override tolerance of statistical checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*scan) return cmd_scan(o, out);
        if (*point) return cmd_point(o, out);
        return cmd_verify(o, out);
    } catch (const UsageError& e) {
        err << "wwduality: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "wwduality: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "wwduality: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace wwd::cli
