#ifndef SQQ_RATIONAL_HPP
#define SQQ_RATIONAL_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqq/error.hpp"
#include "sqq/ffield.hpp"

namespace sqq {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational in lowest terms with positive denominator.
class BigRational {
public:
    BigRational() = default;
    BigRational(long long n) : num_(n) {}  // NOLINT: implicit on purpose, integers are rationals
    BigRational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0) throw precondition_error("zero denominator");
        normalize();
    }

    /// Accepts "n" or "n/d" with an optional leading sign.
    static BigRational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return BigRational(parse_int(text), 1);
            return BigRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
        } catch (const precondition_error&) {
            throw;
        } catch (const std::exception&) {
            throw precondition_error("not a rational: '" + text + "'");
        }
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_ == 0; }
    int sign() const noexcept { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

    BigRational operator-() const { return BigRational(-num_, den_); }
    friend BigRational operator+(const BigRational& a, const BigRational& b) {
        return BigRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRational operator-(const BigRational& a, const BigRational& b) {
        return BigRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRational operator*(const BigRational& a, const BigRational& b) {
        return BigRational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend BigRational operator/(const BigRational& a, const BigRational& b) {
        if (b.is_zero()) throw precondition_error("division by zero rational");
        return BigRational(a.num_ * b.den_, a.den_ * b.num_);
    }
    BigRational& operator+=(const BigRational& o) { return *this = *this + o; }
    BigRational& operator-=(const BigRational& o) { return *this = *this - o; }
    BigRational& operator*=(const BigRational& o) { return *this = *this * o; }
    BigRational& operator/=(const BigRational& o) { return *this = *this / o; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

private:
    static BigInt parse_int(std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start == s.size()) throw std::invalid_argument("empty");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("digit");
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_ = 0;
    BigInt den_ = 1;
};

inline BigRational constant_like(const BigRational&, std::int64_t v) { return BigRational(static_cast<long long>(v)); }

using RationalSeq = std::vector<BigRational>;

/// Exact test with integer square root; never goes through floating point.
inline bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

/// r is the square of a rational. Zero is a square.
inline bool is_square_rat(const BigRational& r) {
    return r.sign() >= 0 && is_perfect_square(r.num()) && is_perfect_square(r.den());
}

/// Every (f(j) - f(i)) / (j - i), i < j, is a rational square.
inline bool verify_sequence(const RationalSeq& seq) {
    for (std::size_t j = 1; j < seq.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (!is_square_rat((seq[j] - seq[i]) / BigRational(static_cast<long long>(j - i)))) return false;
    return true;
}

/// p-adic valuation; nullopt stands for +infinity (r = 0). p = 2 is allowed.
inline std::optional<std::int64_t> val_p(const BigRational& r, std::uint64_t p) {
    if (p < 2 || !is_prime(p)) throw precondition_error("val_p needs a prime");
    if (r.is_zero()) return std::nullopt;
    auto count = [p](BigInt n) {
        std::int64_t k = 0;
        if (n < 0) n = -n;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        return k;
    };
    return count(r.num()) - count(r.den());
}

/// j_p: first index whose entry has a negative p-adic valuation.
inline std::optional<std::size_t> first_denominator_index(const RationalSeq& seq, std::uint64_t p) {
    for (std::size_t j = 0; j < seq.size(); ++j) {
        auto v = val_p(seq[j], p);
        if (v && *v < 0) return j;
    }
    return std::nullopt;
}

/// Entrywise num * den^{-1} mod p.
inline std::vector<FpElem> reduce_mod_p(const RationalSeq& seq, OddPrime p) {
    if (seq.size() > p.value()) throw precondition_error("sequence longer than p");
    std::vector<FpElem> out;
    out.reserve(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
        const BigInt d = seq[j].den() % p.value();
        if (d == 0)
            throw reduction_error(j, "denominator of entry " + std::to_string(j) + " is divisible by " +
                                         std::to_string(p.value()));
        BigInt n = seq[j].num() % p.value();
        if (n < 0) n += p.value();
        out.push_back(FpElem(static_cast<std::int64_t>(n), p) / FpElem(static_cast<std::int64_t>(d), p));
    }
    return out;
}

/// One rational per line, "num/den" or "int"; '#' starts a comment.
inline RationalSeq parse_sequence(std::istream& in) {
    RationalSeq seq;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        try {
            seq.push_back(BigRational::parse(line.substr(first, last - first + 1)));
        } catch (const precondition_error& e) {
            throw parse_error(line_no, e.what());
        }
    }
    return seq;
}

}  // namespace sqq

#endif  // SQQ_RATIONAL_HPP
