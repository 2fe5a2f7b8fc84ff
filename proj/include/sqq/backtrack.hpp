#ifndef SQQ_BACKTRACK_HPP
#define SQQ_BACKTRACK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sqq/ffield.hpp"

namespace sqq {

struct SearchCounters {
    std::uint64_t visited_nodes = 0;
    std::uint64_t char_tests = 0;

    SearchCounters& operator+=(const SearchCounters& o) {
        visited_nodes += o.visited_nodes;
        char_tests += o.char_tests;
        return *this;
    }
};

/// F_p seen through a precomputed character table. Same surface as ExtField
/// (size, sub, chi) so both run through SquareQuotientExtender.
class PrimeFieldView {
public:
    explicit PrimeFieldView(const SquareTable& table) : chi_(table.data()), p_(table.modulus()) {}

    std::uint32_t size() const noexcept { return p_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    int chi(std::uint32_t a) const noexcept { return chi_[a]; }

private:
    const std::int8_t* chi_;
    std::uint32_t p_;
};

/// One-step extension of a partial map under the square-quotient condition:
/// given values f(x_j) at positions x_j, produce every c such that
/// (c - f(x_j)) / (x_new - x_j) is a square (zero allowed) for all j.
///
/// chi((c - f_j)/(x - x_j)) = chi(c - f_j) * chi(x - x_j), and the second
/// factor is +-1, so a test fails exactly when chi(c - f_j) == -chi(x - x_j).
/// Candidates are scanned over the whole field with early exit.
template <class Field>
class SquareQuotientExtender {
public:
    explicit SquareQuotientExtender(const Field& field) : field_(field) {}

    template <class Out>
    void extend(std::span<const std::uint32_t> positions, std::span<const std::uint32_t> values,
                std::uint32_t new_position, Out&& out, SearchCounters& counters) {
        const std::size_t m = values.size();
        forbidden_.resize(m);
        for (std::size_t j = 0; j < m; ++j) forbidden_[j] = -field_.chi(field_.sub(new_position, positions[j]));
        const std::uint32_t q = field_.size();
        std::uint64_t tests = 0;
        for (std::uint32_t c = 0; c < q; ++c) {
            bool ok = true;
            for (std::size_t j = m; j-- > 0;) {
                ++tests;
                if (field_.chi(field_.sub(c, values[j])) == forbidden_[j]) {
                    ok = false;
                    break;
                }
            }
            if (ok) out(c);
        }
        counters.char_tests += tests;
    }

private:
    const Field& field_;
    std::vector<int> forbidden_;
};

}  // namespace sqq

#endif  // SQQ_BACKTRACK_HPP
