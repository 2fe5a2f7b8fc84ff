#ifndef SQQ_REPORT_HPP
#define SQQ_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sqq/error.hpp"
#include "sqq/gauss.hpp"
#include "sqq/search.hpp"

namespace sqq {

/// One cell of the W table, serialized as a `p,x,W` CSV row.
struct ResultRecord {
    std::uint32_t p;
    unsigned x;
    std::uint64_t w;
    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

inline std::vector<ResultRecord> profile_records(const WProfile& prof) {
    std::vector<ResultRecord> out;
    for (const auto& [x, w] : prof.counts) out.push_back({prof.p.value(), x, w});
    return out;
}

inline void write_csv_header(std::ostream& os) { os << "p,x,W\n"; }

inline void write_csv_rows(std::ostream& os, const std::vector<ResultRecord>& rows) {
    for (const auto& r : rows) os << r.p << ',' << r.x << ',' << r.w << '\n';
}

inline std::vector<ResultRecord> parse_csv(std::istream& in) {
    std::vector<ResultRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "p,x,W") throw parse_error(line_no, "expected header 'p,x,W'");
            header = true;
            continue;
        }
        auto fields = detail::parse_uint_list<std::uint64_t>(line, line_no);
        if (fields.size() != 3) throw parse_error(line_no, "expected three fields");
        out.push_back({static_cast<std::uint32_t>(fields[0]), static_cast<unsigned>(fields[1]), fields[2]});
    }
    if (!header) throw parse_error(line_no, "missing header");
    return out;
}

/// {"p":int,"profile":{"2":int,...},"L":int,"sigma":float,"g":float}.
/// L, sigma and g are null when the profile never reached 1 or is not
/// stabilized.
inline nlohmann::ordered_json profile_json(const WProfile& prof) {
    nlohmann::ordered_json j;
    j["p"] = prof.p.value();
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    std::optional<unsigned> L;
    for (const auto& [x, w] : prof.counts) {
        counts[std::to_string(x)] = w;
        if (!L && w == 1) L = x;
    }
    j["profile"] = counts;
    j["L"] = L ? nlohmann::ordered_json(*L) : nlohmann::ordered_json(nullptr);
    if (prof.stabilized) {
        const SizeReport r = size_report(prof);
        j["sigma"] = r.sigma;
        j["g"] = r.g;
    } else {
        j["sigma"] = nullptr;
        j["g"] = nullptr;
    }
    return j;
}

inline std::vector<ResultRecord> records_from_json(const nlohmann::json& j) {
    std::vector<ResultRecord> out;
    const auto p = j.at("p").get<std::uint32_t>();
    for (const auto& [key, value] : j.at("profile").items())
        out.push_back({p, static_cast<unsigned>(std::stoul(key)), value.get<std::uint64_t>()});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    return out;
}

enum class CellStatus { equal, mismatch, skipped };

inline const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::equal: return "equal";
        case CellStatus::mismatch: return "mismatch";
        case CellStatus::skipped: return "skipped";
    }
    return "?";
}

struct CellCheck {
    std::uint32_t p;
    unsigned x;
    std::uint64_t expected;
    std::optional<std::uint64_t> computed;
    CellStatus status;
};

struct TableCheckReport {
    std::vector<CellCheck> cells;
    std::size_t mismatches = 0;
    std::size_t skipped = 0;
    bool pass() const { return mismatches == 0; }
};

/// Recomputes every reference cell with lo <= p <= hi. Cells with x >= p lie
/// outside the domain of W(p, x) and are reported as skipped.
inline TableCheckReport table_check(const std::vector<ResultRecord>& reference, std::uint32_t lo, std::uint32_t hi,
                                    const SearchOptions& opts = {}) {
    std::map<std::uint32_t, std::vector<ResultRecord>> by_prime;
    for (const auto& r : reference)
        if (r.p >= lo && r.p <= hi) by_prime[r.p].push_back(r);
    TableCheckReport report;
    for (auto& [p, rows] : by_prime) {
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
        unsigned want = 2;
        for (const auto& r : rows)
            if (r.x < p) want = std::max(want, r.x);
        const OddPrime prime(p);
        SearchOptions o = opts;
        o.split_depth = std::min(o.split_depth, want);
        const WProfile prof = w_profile(prime, want, o);
        for (const auto& r : rows) {
            CellCheck c{p, r.x, r.w, std::nullopt, CellStatus::skipped};
            if (r.x >= 2 && r.x < p) {
                c.computed = prof.counts.at(r.x);
                c.status = *c.computed == r.w ? CellStatus::equal : CellStatus::mismatch;
            }
            report.mismatches += c.status == CellStatus::mismatch;
            report.skipped += c.status == CellStatus::skipped;
            report.cells.push_back(c);
        }
    }
    return report;
}

inline void write_table_check(std::ostream& os, const TableCheckReport& report) {
    os << "p,x,expected,computed,status\n";
    for (const auto& c : report.cells) {
        os << c.p << ',' << c.x << ',' << c.expected << ',';
        if (c.computed) os << *c.computed;
        os << ',' << to_string(c.status) << '\n';
    }
    os << "# cells=" << report.cells.size() << " mismatches=" << report.mismatches << " skipped=" << report.skipped
       << " result=" << (report.pass() ? "pass" : "fail") << '\n';
}

struct PlotSeries {
    std::string header;
    std::vector<std::pair<unsigned, double>> points;
    std::optional<std::uint32_t> truncated_at;
};

struct PlotData {
    PlotSeries minimal_length{"# minimal length L(p(n)) against n, p(n) the n-th prime", {}, {}};
    PlotSeries log_size{"# logarithmic size sigma(p(n)) = sum_x log W(p(n), x) against n", {}, {}};
    PlotSeries gauss_log_size{"# Gaussian estimate g(p(n)) of the logarithmic size against n", {}, {}};
    PlotSeries discrepancy{"# log discrepancy sigma(p(n)) - g(p(n)) against n", {}, {}};
};

/// Series for the figures over the primes 5 <= p in [lo, hi]. Stops at the
/// first prime whose search exceeds the node budget and marks every series
/// as truncated there.
inline PlotData compute_plot_data(std::uint32_t lo, std::uint32_t hi, const SearchOptions& opts = {}) {
    PlotData d;
    for (std::uint32_t p : odd_primes_between(std::max<std::uint32_t>(lo, 5), hi)) {
        WProfile prof{OddPrime(p), {}, 0, false, {}};
        try {
            prof = w_profile(OddPrime(p), std::nullopt, opts);
        } catch (const budget_exceeded_error&) {
            for (PlotSeries* s : {&d.minimal_length, &d.log_size, &d.gauss_log_size, &d.discrepancy}) s->truncated_at = p;
            break;
        }
        const unsigned n = prime_index(p);
        d.minimal_length.points.emplace_back(n, prof.x_end);
        const SizeReport r = size_report(prof);
        d.log_size.points.emplace_back(n, r.sigma);
        d.gauss_log_size.points.emplace_back(n, r.g);
        d.discrepancy.points.emplace_back(n, r.discrepancy);
    }
    return d;
}

inline void write_series(std::ostream& os, const PlotSeries& s, bool integral = false) {
    os << s.header << '\n';
    std::ostringstream body;
    if (!integral) body << std::fixed << std::setprecision(10);
    for (const auto& [n, v] : s.points) {
        body << n << ' ';
        if (integral)
            body << static_cast<long long>(v);
        else
            body << v;
        body << '\n';
    }
    os << body.str();
    if (s.truncated_at) os << "# TRUNCATED: node budget exceeded at p=" << *s.truncated_at << '\n';
}

}  // namespace sqq

#endif  // SQQ_REPORT_HPP
