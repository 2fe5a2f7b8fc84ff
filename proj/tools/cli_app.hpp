#ifndef SQQ_TOOLS_CLI_APP_HPP
#define SQQ_TOOLS_CLI_APP_HPP

#include <cstdlib>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sqq/sqq.hpp"

namespace sqq::cli {

inline unsigned default_workers() {
    if (const char* env = std::getenv("CARLITZ_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

struct RunConfig {
    std::optional<std::uint32_t> prime;
    std::uint32_t from = 5;
    std::uint32_t to = 0;
    std::optional<unsigned> x_max;
    unsigned workers = default_workers();
    unsigned split_depth = 0;
    std::string checkpoint;
    std::uint64_t max_units = 0;
    std::uint64_t node_budget = 0;
    std::string format = "csv";
    std::string output;
    std::string file;
    std::string reference;
    std::string dir = ".";
    std::uint64_t q = 0;
    std::optional<std::int64_t> s;
    bool summary = false;
};

namespace detail {

inline std::vector<std::uint32_t> selected_primes(const RunConfig& c, std::uint32_t min_prime) {
    if (c.prime) {
        if (*c.prime < min_prime || !is_prime(*c.prime))
            throw precondition_error("invalid prime " + std::to_string(*c.prime) + " (need an odd prime >= " +
                                     std::to_string(min_prime) + ")");
        return {*c.prime};
    }
    if (c.to == 0) throw precondition_error("give --prime or a range --from/--to");
    return odd_primes_between(std::max(c.from, min_prime), c.to);
}

inline SearchOptions search_options(const RunConfig& c) {
    if (c.workers < 1) throw precondition_error("--workers must be >= 1");
    SearchOptions o;
    o.workers = c.workers;
    o.split_depth = c.split_depth;
    o.node_budget = c.node_budget;
    o.max_new_units = c.max_units;
    return o;
}

// Output goes to --output when given, else to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw precondition_error("cannot open output " + path);
            out_ = file_.get();
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

inline WProfile profile_with_checkpoint(OddPrime p, const RunConfig& c, const SearchOptions& opts) {
    const unsigned target = profile_target(p, c.x_max);
    const unsigned split = effective_split_depth(opts.split_depth, target);
    SearchCheckpoint ck{p.value(), target, split, {}};
    if (std::filesystem::exists(c.checkpoint)) {
        std::ifstream in(c.checkpoint, std::ios::binary);
        ck = parse_checkpoint(in);
        if (ck.p != p.value() || ck.target_x != target || ck.split_depth != split)
            throw checkpoint_error("checkpoint " + c.checkpoint + " belongs to a different run");
    }
    // Rewrite cleanly (drops a torn last line), then append as units finish.
    {
        std::ofstream out(c.checkpoint, std::ios::binary | std::ios::trunc);
        out << serialize_checkpoint(ck);
    }
    std::ofstream log(c.checkpoint, std::ios::binary | std::ios::app);
    auto sink = [&](const std::vector<std::uint32_t>& prefix, const std::vector<std::uint64_t>& counts) {
        log << checkpoint_record(prefix, counts);
        log.flush();
    };
    return profile_from_counts(p, enumerate_depths(p, target, opts, &ck, sink), c.x_max);
}

inline int cmd_wtable(const RunConfig& c, std::ostream& out) {
    const auto primes = selected_primes(c, 3);
    if (!c.checkpoint.empty() && primes.size() != 1) throw precondition_error("--checkpoint needs a single --prime");
    const SearchOptions opts = search_options(c);
    Sink sink(c.output, out);
    if (c.format == "csv") write_csv_header(sink.stream());
    for (std::uint32_t p : primes) {
        const OddPrime prime(p);
        const WProfile prof = c.checkpoint.empty() ? w_profile(prime, c.x_max, opts) : profile_with_checkpoint(prime, c, opts);
        if (c.format == "csv")
            write_csv_rows(sink.stream(), profile_records(prof));
        else
            sink.stream() << profile_json(prof).dump() << '\n';
    }
    return 0;
}

inline int cmd_lmin(const RunConfig& c, std::ostream& out) {
    const SearchOptions opts = search_options(c);
    Sink sink(c.output, out);
    if (c.format == "csv") sink.stream() << "p,L\n";
    for (std::uint32_t p : selected_primes(c, 5)) {
        const unsigned L = minimal_length(OddPrime(p), opts);
        if (c.format == "csv")
            sink.stream() << p << ',' << L << '\n';
        else
            sink.stream() << nlohmann::ordered_json{{"p", p}, {"L", L}}.dump() << '\n';
    }
    return 0;
}

inline int cmd_nres(const RunConfig& c, std::ostream& out) {
    Sink sink(c.output, out);
    if (c.format == "csv") sink.stream() << "p,n\n";
    for (std::uint32_t p : selected_primes(c, 3)) {
        const auto n = first_nonresidue(OddPrime(p));
        if (c.format == "csv")
            sink.stream() << p << ',' << n << '\n';
        else
            sink.stream() << nlohmann::ordered_json{{"p", p}, {"n", n}}.dump() << '\n';
    }
    return 0;
}

inline int cmd_gauss(const RunConfig& c, std::ostream& out) {
    const SearchOptions opts = search_options(c);
    Sink sink(c.output, out);
    if (c.format == "csv") sink.stream() << "p,sigma,g,discrepancy\n";
    for (std::uint32_t p : selected_primes(c, 5)) {
        const SizeReport r = size_report(w_profile(OddPrime(p), std::nullopt, opts));
        if (c.format == "csv") {
            std::ostringstream row;
            row << std::fixed << std::setprecision(10) << p << ',' << r.sigma << ',' << r.g << ',' << r.discrepancy << '\n';
            sink.stream() << row.str();
        } else {
            sink.stream() << nlohmann::ordered_json{{"p", p}, {"sigma", r.sigma}, {"g", r.g}, {"discrepancy", r.discrepancy}}.dump()
                          << '\n';
        }
    }
    return 0;
}

inline std::string form_string(const CarlitzForm& f) {
    if (auto k = std::get_if<ConstantForm>(&f)) return "constant " + std::to_string(k->value);
    const auto& a = std::get<AffineFrobeniusForm>(f);
    return "affine a=" + std::to_string(a.a_sq) + " b=" + std::to_string(a.b) + " frob=" + std::to_string(a.frob_power);
}

inline int cmd_carlitz(const RunConfig& c, std::ostream& out) {
    const ExtFieldCtx ctx = ext_field_for_order(c.q);
    const ExtField F(ctx);
    const auto maps = enumerate_condition_maps(ctx, c.workers, 81);
    Sink sink(c.output, out);
    std::size_t failures = 0;
    if (!c.summary) sink.stream() << "index,table,form\n";
    for (std::size_t i = 0; i < maps.size(); ++i) {
        std::string form;
        try {
            form = form_string(classify(maps[i], F));
        } catch (const not_carlitz_error&) {
            ++failures;
            form = "NOT-CARLITZ";
        }
        if (c.summary) continue;
        sink.stream() << i << ',';
        for (std::size_t x = 0; x < maps[i].table.size(); ++x) sink.stream() << (x ? " " : "") << maps[i].table[x];
        sink.stream() << ',' << form << '\n';
    }
    if (c.summary)
        sink.stream() << "q,k,count,expected,classification_failures\n"
                      << ctx.q << ',' << ctx.k << ',' << maps.size() << ',' << expected_condition_map_count(ctx) << ','
                      << failures << '\n';
    return failures == 0 && maps.size() == expected_condition_map_count(ctx) ? 0 : 1;
}

inline int cmd_paley(const RunConfig& c, std::ostream& out) {
    const PaleyGraph g(ext_field_for_order(c.q));
    const bool simple = is_simple(g);
    Sink sink(c.output, out);
    sink.stream() << "q,simple\n" << c.q << ',' << (simple ? "true" : "false") << '\n';
    return 0;
}

inline int cmd_curve(const RunConfig& c, std::ostream& out) {
    if (!c.prime || *c.prime <= 3 || !is_prime(*c.prime)) throw precondition_error("curve needs --prime p > 3");
    const OddPrime p(*c.prime);
    Sink sink(c.output, out);
    sink.stream() << "p,s,c0,c1,c2,c3,c4,disc,affine_count,trace_estimate,chi_c4,frobenius_trace\n";
    auto row = [&](std::int64_t s) {
        const FpElem se(s, p);
        const auto slice = quartic_slice(se);
        if (slice.disc.is_zero()) {
            if (c.s) throw singular_error("D(s) vanishes mod p for s = " + std::to_string(s));
            return;
        }
        const PointCount pc = count_affine_points(se);
        sink.stream() << p.value() << ',' << se.residue();
        for (const auto& k : slice.coeffs) sink.stream() << ',' << k.residue();
        sink.stream() << ',' << slice.disc.residue() << ',' << pc.affine_count << ',' << pc.trace_estimate << ','
                      << pc.chi_leading << ',' << pc.frobenius_trace << '\n';
    };
    if (c.s)
        row(*c.s);
    else
        for (std::int64_t s = 0; s < p.value(); ++s) row(s);
    return 0;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
    std::ifstream in(c.file);
    if (!in) throw precondition_error("cannot open " + c.file);
    const RationalSeq seq = parse_sequence(in);
    const bool ok = verify_sequence(seq);
    Sink sink(c.output, out);
    if (c.format == "json")
        sink.stream() << nlohmann::ordered_json{{"length", seq.size()}, {"verdict", ok}}.dump() << '\n';
    else
        sink.stream() << "length=" << seq.size() << " verdict=" << (ok ? "true" : "false") << '\n';
    return ok ? 0 : 1;
}

inline int cmd_table_check(const RunConfig& c, std::ostream& out) {
    std::ifstream in(c.reference);
    if (!in) throw precondition_error("cannot open reference " + c.reference);
    const auto reference = parse_csv(in);
    const auto report = table_check(reference, c.from, c.to ? c.to : 127, search_options(c));
    Sink sink(c.output, out);
    write_table_check(sink.stream(), report);
    return report.pass() ? 0 : 1;
}

inline int cmd_plot_data(const RunConfig& c, std::ostream& out) {
    const PlotData d = compute_plot_data(c.from, c.to, search_options(c));
    std::filesystem::create_directories(c.dir);
    const std::filesystem::path dir(c.dir);
    auto emit = [&](const char* name, const PlotSeries& s, bool integral) {
        std::ofstream f(dir / name, std::ios::binary);
        write_series(f, s, integral);
    };
    emit("minimal_length.dat", d.minimal_length, true);
    emit("log_size.dat", d.log_size, false);
    emit("gauss_log_size.dat", d.gauss_log_size, false);
    emit("discrepancy.dat", d.discrepancy, false);
    out << "points=" << d.minimal_length.points.size() << (d.minimal_length.truncated_at ? " truncated" : "") << '\n';
    return d.minimal_length.truncated_at ? 4 : 0;
}

inline void error_record(std::ostream& err, const std::string& kind, const std::string& message) {
    err << nlohmann::ordered_json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Square-difference-quotient sequences over prime fields"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_primes = [&](CLI::App* sub) {
        sub->add_option("--prime", c.prime, "single prime");
        sub->add_option("--from", c.from, "first prime of a range");
        sub->add_option("--to", c.to, "last prime of a range");
    };
    auto add_search = [&](CLI::App* sub) {
        sub->add_option("--workers", c.workers, "worker threads (default: $CARLITZ_WORKERS or 1)");
        sub->add_option("--split-depth", c.split_depth, "depth at which the tree is cut into work units (default min(3, x))");
        sub->add_option("--node-budget", c.node_budget, "abort after visiting this many nodes");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output,-o", c.output, "output file (default stdout)");
    };

    auto* wtable = app.add_subcommand("wtable", "W(p, x) profile rows");
    add_primes(wtable);
    add_search(wtable);
    add_output(wtable);
    wtable->add_option("--x-max", c.x_max, "last column");
    wtable->add_option("--checkpoint", c.checkpoint, "checkpoint file (resumed when present)");
    wtable->add_option("--max-units", c.max_units, "stop after this many new work units");

    auto* lmin = app.add_subcommand("lmin", "minimal length L(p)");
    add_primes(lmin);
    add_search(lmin);
    add_output(lmin);

    auto* nres = app.add_subcommand("nres", "first quadratic non-residue n(p)");
    add_primes(nres);
    add_output(nres);

    auto* gauss = app.add_subcommand("gauss", "sigma(p), g(p) and their difference");
    add_primes(gauss);
    add_search(gauss);
    add_output(gauss);

    auto* carlitz = app.add_subcommand("carlitz", "enumerate and classify square-quotient maps of F_q");
    carlitz->add_option("--q", c.q, "field order (odd prime power <= 81)")->required();
    carlitz->add_option("--workers", c.workers);
    carlitz->add_flag("--summary", c.summary, "print only counts");
    add_output(carlitz);

    auto* paley = app.add_subcommand("paley", "simplicity of the Paley graph");
    paley->add_option("--q", c.q, "field order, q = 1 mod 4")->required();
    add_output(paley);

    auto* curve = app.add_subcommand("curve", "quartic slices Q_s and affine point counts");
    curve->add_option("--prime", c.prime)->required();
    curve->add_option("--s", c.s, "slice parameter (default: all nonsingular s)");
    add_output(curve);

    auto* verify = app.add_subcommand("verify", "check a rational sequence file");
    verify->add_option("--file", c.file)->required();
    add_output(verify);

    auto* tcheck = app.add_subcommand("table-check", "compare computed rows against a reference CSV");
    tcheck->add_option("--reference", c.reference)->required();
    tcheck->add_option("--from", c.from);
    tcheck->add_option("--to", c.to, "largest prime checked (default 127)");
    add_search(tcheck);
    add_output(tcheck);

    auto* plot = app.add_subcommand("plot-data", "data series for the L(p), sigma and discrepancy figures");
    plot->add_option("--from", c.from);
    plot->add_option("--to", c.to)->required();
    plot->add_option("--dir", c.dir, "output directory");
    add_search(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*wtable) return detail::cmd_wtable(c, out);
        if (*lmin) return detail::cmd_lmin(c, out);
        if (*nres) return detail::cmd_nres(c, out);
        if (*gauss) return detail::cmd_gauss(c, out);
        if (*carlitz) return detail::cmd_carlitz(c, out);
        if (*paley) return detail::cmd_paley(c, out);
        if (*curve) return detail::cmd_curve(c, out);
        if (*verify) return detail::cmd_verify(c, out);
        if (*tcheck) return detail::cmd_table_check(c, out);
        if (*plot) return detail::cmd_plot_data(c, out);
    } catch (const interrupted_error& e) {
        detail::error_record(err, e.kind(), e.what());
        return 3;
    } catch (const sqq::error& e) {
        detail::error_record(err, e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        detail::error_record(err, "internal", e.what());
        return 1;
    }
    return 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"sqq"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sqq::cli

#endif  // SQQ_TOOLS_CLI_APP_HPP
