#ifndef SQQ_FFIELD_HPP
#define SQQ_FFIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqq/error.hpp"

namespace sqq {

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

inline constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline constexpr std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// An odd prime below 2^31.
class OddPrime {
public:
    explicit OddPrime(std::uint64_t value) : value_(static_cast<std::uint32_t>(value)) {
        if (value < 3 || value >= kMaxModulus || !is_prime(value))
            throw precondition_error("not an odd prime below 2^31: " + std::to_string(value));
    }

    std::uint32_t value() const noexcept { return value_; }
    operator std::uint32_t() const noexcept { return value_; }

    friend bool operator==(OddPrime, OddPrime) = default;

private:
    std::uint32_t value_;
};

/// Residue modulo an odd prime. Carries its modulus so that mixed-field
/// arithmetic is caught instead of silently producing garbage.
class FpElem {
public:
    FpElem(std::int64_t value, OddPrime p) : p_(p.value()) {
        std::int64_t r = value % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        residue_ = static_cast<std::uint32_t>(r);
    }

    std::uint32_t residue() const noexcept { return residue_; }
    OddPrime modulus() const { return OddPrime(p_); }
    std::uint32_t modulus_value() const noexcept { return p_; }
    bool is_zero() const noexcept { return residue_ == 0; }

    FpElem pow(std::uint64_t e) const { return from_raw(static_cast<std::uint32_t>(powmod(residue_, e, p_)), p_); }

    FpElem inverse() const {
        if (is_zero()) throw precondition_error("inverse of zero in F_" + std::to_string(p_));
        return pow(p_ - 2);
    }

    FpElem operator-() const { return from_raw(residue_ ? p_ - residue_ : 0, p_); }

    friend FpElem operator+(FpElem a, FpElem b) {
        a.check(b);
        std::uint64_t s = std::uint64_t{a.residue_} + b.residue_;
        return from_raw(static_cast<std::uint32_t>(s >= a.p_ ? s - a.p_ : s), a.p_);
    }
    friend FpElem operator-(FpElem a, FpElem b) {
        a.check(b);
        return from_raw(a.residue_ >= b.residue_ ? a.residue_ - b.residue_ : a.residue_ + a.p_ - b.residue_, a.p_);
    }
    friend FpElem operator*(FpElem a, FpElem b) {
        a.check(b);
        return from_raw(static_cast<std::uint32_t>(mulmod(a.residue_, b.residue_, a.p_)), a.p_);
    }
    friend FpElem operator/(FpElem a, FpElem b) { return a * b.inverse(); }

    FpElem& operator+=(FpElem o) { return *this = *this + o; }
    FpElem& operator-=(FpElem o) { return *this = *this - o; }
    FpElem& operator*=(FpElem o) { return *this = *this * o; }
    FpElem& operator/=(FpElem o) { return *this = *this / o; }

    friend bool operator==(FpElem a, FpElem b) { return a.p_ == b.p_ && a.residue_ == b.residue_; }

private:
    FpElem() = default;
    static FpElem from_raw(std::uint32_t r, std::uint32_t p) {
        FpElem e;
        e.residue_ = r;
        e.p_ = p;
        return e;
    }
    void check(FpElem o) const {
        if (o.p_ != p_) throw precondition_error("mixed moduli in F_p arithmetic");
    }

    std::uint32_t residue_ = 0;
    std::uint32_t p_ = 3;
};

/// Field constant with the same modulus as `like`.
inline FpElem constant_like(const FpElem& like, std::int64_t v) { return FpElem(v, like.modulus()); }

enum class CharValue : int { minus_one = -1, zero = 0, plus_one = 1 };

inline constexpr int as_int(CharValue c) noexcept { return static_cast<int>(c); }

inline CharValue chi_p(FpElem a) {
    if (a.is_zero()) return CharValue::zero;
    std::uint32_t p = a.modulus_value();
    return powmod(a.residue(), (p - 1) / 2, p) == 1 ? CharValue::plus_one : CharValue::minus_one;
}

/// Zero counts as a square. This is the one convention used everywhere:
/// a vanishing difference quotient (constant stretch) is admissible.
inline bool is_square_p(FpElem a) { return chi_p(a) != CharValue::minus_one; }

/// n(p): smallest positive integer that is a quadratic non-residue mod p.
inline std::uint32_t first_nonresidue(OddPrime p) {
    for (std::uint32_t n = 2; n < p.value(); ++n)
        if (chi_p(FpElem(n, p)) == CharValue::minus_one) return n;
    throw std::logic_error("no quadratic non-residue found");  // unreachable for odd p
}

/// Full table of the quadratic character on F_p, built once per search and
/// shared read-only between workers.
class SquareTable {
public:
    explicit SquareTable(OddPrime p) : p_(p.value()), chi_(p.value(), -1) {
        chi_[0] = 0;
        for (std::uint64_t r = 1; r <= (p_ - 1) / 2; ++r) chi_[mulmod(r, r, p_)] = 1;
    }

    std::uint32_t modulus() const noexcept { return p_; }
    int chi(std::uint32_t residue) const noexcept { return chi_[residue]; }
    bool is_square(std::uint32_t residue) const noexcept { return chi_[residue] >= 0; }
    const std::int8_t* data() const noexcept { return chi_.data(); }

private:
    std::uint32_t p_;
    std::vector<std::int8_t> chi_;
};

/// Odd primes in [lo, hi], ascending.
inline std::vector<std::uint32_t> odd_primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t n = lo < 3 ? 3 : lo; n <= hi; ++n)
        if (is_prime(n)) out.push_back(static_cast<std::uint32_t>(n));
    return out;
}

/// Index n with p = p(n) the n-th prime (p(1) = 2).
inline unsigned prime_index(std::uint64_t p) {
    unsigned n = 0;
    for (std::uint64_t k = 2; k <= p; ++k)
        if (is_prime(k)) ++n;
    return n;
}

}  // namespace sqq

#endif  // SQQ_FFIELD_HPP
