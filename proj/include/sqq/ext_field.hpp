#ifndef SQQ_EXT_FIELD_HPP
#define SQQ_EXT_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sqq/error.hpp"
#include "sqq/ffield.hpp"

namespace sqq {

// Small finite fields F_q, q = p^k. Elements are encoded as integers in
// [0, q): the base-p digits, lowest degree first, are the coefficients of the
// residue polynomial. Elements below p are exactly the prime subfield.

/// Dense polynomial over F_p, coefficients low degree first.
using PolyFp = std::vector<std::uint32_t>;

struct ExtFieldCtx {
    std::uint32_t p = 3;
    unsigned k = 1;
    PolyFp modpoly;  // monic, size k + 1
    std::uint32_t q = 3;
};

namespace detail {

inline void poly_trim(PolyFp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo monic m, over F_p.
inline PolyFp poly_rem(PolyFp a, const PolyFp& m, std::uint32_t p) {
    poly_trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * m[i] % p) % p);
        poly_trim(a);
    }
    return a;
}

/// Monic polynomial of degree d whose lower coefficients are the base-p digits
/// of `index` (lowest degree is the least significant digit).
inline PolyFp monic_from_index(std::uint64_t index, unsigned d, std::uint32_t p) {
    PolyFp f(d + 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
    f[d] = 1;
    return f;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace detail

/// Irreducibility by trial division with every monic polynomial of degree
/// 1..deg/2.
inline bool is_irreducible(const PolyFp& f, std::uint32_t p) {
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg == 0) return false;
    for (unsigned d = 1; d <= deg / 2; ++d) {
        const std::uint64_t n = detail::ipow(p, d);
        for (std::uint64_t i = 0; i < n; ++i)
            if (detail::poly_rem(f, detail::monic_from_index(i, d, p), p).empty()) return false;
    }
    return true;
}

/// Context of F_{p^k} using the lexicographically smallest monic irreducible
/// modulus, coefficients compared from degree 0 upward.
inline ExtFieldCtx build_ext_field(OddPrime p, unsigned k, std::uint64_t max_q = 128) {
    if (k == 0) throw precondition_error("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p.value();
        if (q > max_q) throw size_bound_error("q = p^k exceeds bound " + std::to_string(max_q));
    }
    // Lex order with c0 most significant: enumerate with c_{k-1} as the
    // fastest-moving digit.
    for (std::uint64_t n = 0; n < q; ++n) {
        PolyFp f(k + 1, 0);
        std::uint64_t rest = n;
        for (unsigned i = k; i-- > 0;) {
            f[i] = static_cast<std::uint32_t>(rest % p.value());
            rest /= p.value();
        }
        f[k] = 1;
        if (is_irreducible(f, p.value())) return ExtFieldCtx{p.value(), k, f, static_cast<std::uint32_t>(q)};
    }
    throw std::logic_error("no irreducible polynomial found");
}

/// Decompose a prime power q = p^k; throws unless q is an odd prime power.
inline ExtFieldCtx ext_field_for_order(std::uint64_t q, std::uint64_t max_q = 128) {
    for (std::uint64_t p = 3; p <= q; p += 2) {
        if (q % p) continue;
        unsigned k = 0;
        std::uint64_t r = q;
        while (r % p == 0) {
            r /= p;
            ++k;
        }
        if (r != 1 || !is_prime(p)) break;
        return build_ext_field(OddPrime(p), k, max_q);
    }
    throw precondition_error("not an odd prime power: " + std::to_string(q));
}

/// Arithmetic over F_q with precomputed tables (q is small).
class ExtField {
public:
    using Elem = std::uint32_t;

    explicit ExtField(ExtFieldCtx ctx) : ctx_(std::move(ctx)) {
        const std::uint32_t q = ctx_.q;
        add_.resize(std::size_t{q} * q);
        sub_.resize(std::size_t{q} * q);
        mul_.resize(std::size_t{q} * q);
        for (Elem a = 0; a < q; ++a) {
            const PolyFp pa = to_poly(a);
            for (Elem b = 0; b < q; ++b) {
                const PolyFp pb = to_poly(b);
                PolyFp s(ctx_.k), d(ctx_.k);
                for (unsigned i = 0; i < ctx_.k; ++i) {
                    s[i] = (pa[i] + pb[i]) % ctx_.p;
                    d[i] = (pa[i] + ctx_.p - pb[i]) % ctx_.p;
                }
                PolyFp prod(2 * ctx_.k, 0);
                for (unsigned i = 0; i < ctx_.k; ++i)
                    for (unsigned j = 0; j < ctx_.k; ++j)
                        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{pa[i]} * pb[j]) % ctx_.p);
                add_[idx(a, b)] = from_poly(s);
                sub_[idx(a, b)] = from_poly(d);
                mul_[idx(a, b)] = from_poly(detail::poly_rem(prod, ctx_.modpoly, ctx_.p));
            }
        }
        chi_.assign(q, -1);
        chi_[0] = 0;
        for (Elem a = 1; a < q; ++a) chi_[mul(a, a)] = 1;
    }

    const ExtFieldCtx& ctx() const noexcept { return ctx_; }
    std::uint32_t size() const noexcept { return ctx_.q; }
    std::uint32_t characteristic() const noexcept { return ctx_.p; }
    unsigned degree() const noexcept { return ctx_.k; }

    Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
    Elem sub(Elem a, Elem b) const { return sub_[idx(a, b)]; }
    Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
    Elem neg(Elem a) const { return sub(0, a); }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elem inverse(Elem a) const {
        if (a == 0) throw precondition_error("inverse of zero in F_q");
        return pow(a, ctx_.q - 2);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inverse(b)); }

    /// x -> x^(p^j)
    Elem frobenius(Elem a, unsigned j) const {
        for (unsigned i = 0; i < j; ++i) a = pow(a, ctx_.p);
        return a;
    }

    /// Quadratic character from the precomputed square table.
    int chi(Elem a) const { return chi_[a]; }

    /// Quadratic character by exponentiation a^((q-1)/2).
    CharValue chi_q(Elem a) const {
        if (a == 0) return CharValue::zero;
        return pow(a, (ctx_.q - 1) / 2) == 1 ? CharValue::plus_one : CharValue::minus_one;
    }

    bool is_square(Elem a) const { return chi_[a] >= 0; }

    PolyFp to_poly(Elem a) const {
        PolyFp out(ctx_.k, 0);
        for (unsigned i = 0; i < ctx_.k; ++i) {
            out[i] = a % ctx_.p;
            a /= ctx_.p;
        }
        return out;
    }

    Elem from_poly(const PolyFp& c) const {
        Elem out = 0;
        for (std::size_t i = c.size(); i-- > 0;) out = out * ctx_.p + c[i];
        return out;
    }

private:
    std::size_t idx(Elem a, Elem b) const noexcept { return std::size_t{a} * ctx_.q + b; }

    ExtFieldCtx ctx_;
    std::vector<Elem> add_, sub_, mul_;
    std::vector<std::int8_t> chi_;
};

inline CharValue chi_q(ExtField::Elem a, const ExtField& field) { return field.chi_q(a); }

}  // namespace sqq

#endif  // SQQ_EXT_FIELD_HPP
