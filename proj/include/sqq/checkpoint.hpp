#ifndef SQQ_CHECKPOINT_HPP
#define SQQ_CHECKPOINT_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sqq/error.hpp"

namespace sqq {

// Checkpoint file layout:
//
//   p=<p> x=<target> depth=<d> version=1
//   prefix=<r0,r1,...,rd> counts=<c_d,c_{d+1},...,c_target>
//   ...
//
// One record per finished work unit (a prefix of length d+1). counts[i] is
// the number of nodes at depth d+i in that prefix's subtree, so counts[0]==1.
// A trailing line without newline is a torn write and is dropped on load.

struct SearchCheckpoint {
    std::uint32_t p = 0;
    unsigned target_x = 0;
    unsigned split_depth = 0;
    std::map<std::vector<std::uint32_t>, std::vector<std::uint64_t>> completed;

    std::uint64_t partial_total() const {
        std::uint64_t total = 0;
        for (const auto& [prefix, counts] : completed) total += counts.back();
        return total;
    }

    friend bool operator==(const SearchCheckpoint&, const SearchCheckpoint&) = default;
};

namespace detail {

template <class T>
std::string join_csv(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

template <class T>
T parse_uint(std::string_view s, std::size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw parse_error(line, "bad integer '" + std::string(s) + "'");
    return value;
}

template <class T>
std::vector<T> parse_uint_list(std::string_view s, std::size_t line) {
    std::vector<T> out;
    while (true) {
        auto comma = s.find(',');
        out.push_back(parse_uint<T>(s.substr(0, comma), line));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

inline std::string_view expect_key(std::string_view token, std::string_view key, std::size_t line) {
    if (token.size() <= key.size() || token.substr(0, key.size()) != key || token[key.size()] != '=')
        throw parse_error(line, "expected '" + std::string(key) + "=...'");
    return token.substr(key.size() + 1);
}

inline std::vector<std::string_view> split_spaces(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

inline std::string checkpoint_header(std::uint32_t p, unsigned target_x, unsigned split_depth) {
    return "p=" + std::to_string(p) + " x=" + std::to_string(target_x) + " depth=" + std::to_string(split_depth) +
           " version=1\n";
}

inline std::string checkpoint_record(const std::vector<std::uint32_t>& prefix, const std::vector<std::uint64_t>& counts) {
    return "prefix=" + detail::join_csv(prefix) + " counts=" + detail::join_csv(counts) + "\n";
}

inline std::string serialize_checkpoint(const SearchCheckpoint& ck) {
    std::string out = checkpoint_header(ck.p, ck.target_x, ck.split_depth);
    for (const auto& [prefix, counts] : ck.completed) out += checkpoint_record(prefix, counts);
    return out;
}

/// Parses and checks internal consistency (record shapes, counts[0] == 1,
/// no duplicate prefixes). Whether the prefixes are real work units for the
/// run is checked when the checkpoint is resumed.
inline SearchCheckpoint parse_checkpoint(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!text.empty() && text.back() != '\n') text.erase(text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1);

    SearchCheckpoint ck;
    std::size_t line_no = 0;
    std::istringstream lines(text);
    std::string line;
    bool have_header = false;
    while (std::getline(lines, line)) {
        ++line_no;
        auto tokens = detail::split_spaces(line);
        if (tokens.empty()) continue;
        if (!have_header) {
            if (tokens.size() != 4) throw parse_error(line_no, "malformed checkpoint header");
            ck.p = detail::parse_uint<std::uint32_t>(detail::expect_key(tokens[0], "p", line_no), line_no);
            ck.target_x = detail::parse_uint<unsigned>(detail::expect_key(tokens[1], "x", line_no), line_no);
            ck.split_depth = detail::parse_uint<unsigned>(detail::expect_key(tokens[2], "depth", line_no), line_no);
            if (detail::expect_key(tokens[3], "version", line_no) != "1")
                throw checkpoint_error("unsupported checkpoint version");
            if (ck.split_depth > ck.target_x) throw checkpoint_error("split depth exceeds target");
            have_header = true;
            continue;
        }
        if (tokens.size() != 2) throw parse_error(line_no, "malformed checkpoint record");
        auto prefix = detail::parse_uint_list<std::uint32_t>(detail::expect_key(tokens[0], "prefix", line_no), line_no);
        auto counts = detail::parse_uint_list<std::uint64_t>(detail::expect_key(tokens[1], "counts", line_no), line_no);
        if (prefix.size() != ck.split_depth + 1)
            throw checkpoint_error("line " + std::to_string(line_no) + ": prefix length does not match split depth");
        if (counts.size() != ck.target_x - ck.split_depth + 1 || counts.front() != 1)
            throw checkpoint_error("line " + std::to_string(line_no) + ": counts do not match target depth");
        for (auto r : prefix)
            if (r >= ck.p) throw checkpoint_error("line " + std::to_string(line_no) + ": residue out of range");
        if (!ck.completed.emplace(std::move(prefix), std::move(counts)).second)
            throw checkpoint_error("line " + std::to_string(line_no) + ": duplicate prefix");
    }
    if (!have_header) throw checkpoint_error("empty checkpoint");
    return ck;
}

inline SearchCheckpoint parse_checkpoint(const std::string& text) {
    std::istringstream in(text);
    return parse_checkpoint(in);
}

}  // namespace sqq

#endif  // SQQ_CHECKPOINT_HPP
