#ifndef SQQ_CURVES_HPP
#define SQQ_CURVES_HPP

#include <array>
#include <stdexcept>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "sqq/error.hpp"
#include "sqq/ffield.hpp"
#include "sqq/rational.hpp"

namespace sqq {

// Geometry behind W(p, 2) and W(p, 3). Everything is templated on the
// coefficient field: FpElem for counts mod p, BigRational for exact checks.
//
//   C  : 1 + x^2 = 2 y^2      f(2) = 1 + x^2 = 2 y^2
//   C' : 1 + 2 Y^2 = 3 X^2    f(3) = 3 X^2 = 1 + 2 Y^2
//
// Both are parametrized by lines through (1, 1).

inline std::uint64_t characteristic(const FpElem& a) { return a.modulus_value(); }
inline std::uint64_t characteristic(const BigRational&) { return 0; }

template <class F>
struct ConicPointC {
    F x, y;
    bool on_curve() const { return constant_like(x, 1) + x * x == constant_like(x, 2) * y * y; }
};

template <class F>
struct ConicPointCprime {
    F X, Y;
    bool on_curve() const { return constant_like(X, 1) + constant_like(X, 2) * Y * Y == constant_like(X, 3) * X * X; }
};

template <class F>
ConicPointC<F> param_C(const F& t) {
    auto k = [&](std::int64_t v) { return constant_like(t, v); };
    const F den = k(2) * t * t - k(1);
    if (den.is_zero()) throw singular_error("param_C: 2t^2 - 1 vanishes");
    const F slope_term = k(2) * t - k(1);
    return {k(1) - k(2) * slope_term / den, k(1) - k(2) * t * slope_term / den};
}

/// Inverse of param_C away from x = 1.
template <class F>
F param_of_point(const ConicPointC<F>& pt) {
    const F dx = pt.x - constant_like(pt.x, 1);
    if (dx.is_zero()) throw singular_error("point has x = 1, no finite parameter");
    return (pt.y - constant_like(pt.y, 1)) / dx;
}

/// (x, y) -> (-x, y) in the t coordinate.
template <class F>
F involution_alpha(const F& t) {
    const F den = constant_like(t, 2) * (t - constant_like(t, 1));
    if (den.is_zero()) throw singular_error("alpha has a pole at t = 1");
    return (constant_like(t, 2) * t - constant_like(t, 1)) / den;
}

/// (x, y) -> (x, -y) in the t coordinate.
template <class F>
F involution_beta(const F& t) {
    const F den = constant_like(t, 2) * t - constant_like(t, 1);
    if (den.is_zero()) throw singular_error("beta has a pole at t = 1/2");
    return (t - constant_like(t, 1)) / den;
}

/// W(p, 2) = floor(p / 4) + 1.
inline std::uint64_t count_w2_closed_form(OddPrime p) { return p.value() / 4 + 1; }

template <class F>
ConicPointCprime<F> param_Cprime(const F& u) {
    auto k = [&](std::int64_t v) { return constant_like(u, v); };
    const F den = k(2) * u * u - k(3);
    if (den.is_zero()) throw singular_error("param_Cprime: 2u^2 - 3 vanishes");
    return {k(1) - k(2) * (k(2) * u - k(3)) / den, (k(2) * u * u - k(6) * u + k(3)) / (k(3) - k(2) * u * u)};
}

/// f(2) reached from the parameter s on C.
template <class F>
F f2_from_param(const F& s) {
    const F x = param_C(s).x;
    return x * x + constant_like(s, 1);
}

/// f(3) reached from the parameter u on C'.
template <class F>
F f3_from_param(const F& u) {
    const F X = param_Cprime(u).X;
    return constant_like(u, 3) * X * X;
}

/// v^2 = Q_s(u): coeffs[i] is the coefficient of u^i.
template <class F>
struct QuarticSlice {
    F s;
    std::array<F, 5> coeffs;
    F disc;

    F eval(const F& u) const {
        F acc = coeffs[4];
        for (int i = 3; i >= 0; --i) acc = acc * u + coeffs[i];
        return acc;
    }
};

/// D(s) = 2^20 3^6 (2s^2 - 1)^4 (2s^2 - 4s + 1)^4 (2s^2 - 2s + 1)^4.
template <class F>
F quartic_discriminant_closed_form(const F& s) {
    auto k = [&](std::int64_t v) { return constant_like(s, v); };
    auto pow4 = [](const F& a) {
        F b = a * a;
        return b * b;
    };
    const F a = k(2) * s * s - k(1);
    const F b = k(2) * s * s - k(4) * s + k(1);
    const F c = k(2) * s * s - k(2) * s + k(1);
    return k(1 << 20) * k(729) * pow4(a) * pow4(b) * pow4(c);
}

template <class F>
QuarticSlice<F> quartic_slice(const F& s) {
    const auto ch = characteristic(s);
    if (ch == 2 || ch == 3) throw precondition_error("quartic family needs characteristic other than 2, 3");
    auto k = [&](std::int64_t v) { return constant_like(s, v); };
    const F s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    const F edge = k(4) * s4 + k(16) * s3 - k(28) * s2 + k(8) * s + k(1);
    const F m = k(2) * s2 - k(1);
    const F mid = k(36) * s4 - k(16) * s3 - k(12) * s2 - k(8) * s + k(9);
    QuarticSlice<F> q{s, {k(9) * edge, -k(72) * m * m, k(12) * mid, -k(48) * m * m, k(4) * edge}, quartic_discriminant_closed_form(s)};
    return q;
}

struct PointCount {
    std::uint32_t s;
    std::uint32_t p;
    std::uint64_t affine_count;
    /// p - 1 - affine_count, counting the point at infinity twice.
    std::int64_t trace_estimate;
    /// chi of the leading coefficient: +1 means two rational points at
    /// infinity on the smooth model, -1 none, 0 one (the quartic drops to a cubic).
    int chi_leading;
    /// p + 1 - (affine + points at infinity on the smooth model).
    std::int64_t frobenius_trace;
};

/// #{(u, v) in F_p^2 : v^2 = Q_s(u)} by a character scan over u.
inline PointCount count_affine_points(const FpElem& s) {
    const std::uint32_t p = s.modulus_value();
    if (p <= 3) throw precondition_error("count_affine_points needs p > 3");
    const auto slice = quartic_slice(s);
    if (slice.disc.is_zero()) throw singular_error("D(s) vanishes mod p");
    const SquareTable table(s.modulus());
    std::uint64_t affine = 0;
    for (std::uint32_t u = 0; u < p; ++u) affine += 1 + table.chi(slice.eval(FpElem(u, s.modulus())).residue());
    const int lead = table.chi(slice.coeffs[4].residue());
    const std::int64_t at_infinity = lead == 0 ? 1 : 1 + lead;
    return PointCount{s.residue(),
                      p,
                      affine,
                      static_cast<std::int64_t>(p) - 1 - static_cast<std::int64_t>(affine),
                      lead,
                      static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(affine) - at_infinity};
}

/// A_p = { t : t != 0, 1, 1/2 and t^2 != 1/2 }: parameters of the solutions
/// f(2) != 2, before identifying the four points (+-x, +-y).
inline std::vector<std::uint32_t> a_set(OddPrime p) {
    const FpElem half = FpElem(1, p) / FpElem(2, p);
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < p.value(); ++t) {
        FpElem e(t, p);
        if (t == 0 || t == 1 || e == half || e * e == half) continue;
        out.push_back(t);
    }
    return out;
}

/// Number of orbits of the group generated by alpha and beta on A_p.
inline std::size_t alpha_beta_orbit_count(OddPrime p) {
    const auto A = a_set(p);
    std::vector<std::int64_t> index(p.value(), -1);
    for (std::size_t i = 0; i < A.size(); ++i) index[A[i]] = static_cast<std::int64_t>(i);
    std::vector<std::size_t> parent(A.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < A.size(); ++i) {
        const FpElem t(A[i], p);
        for (FpElem image : {involution_alpha(t), involution_beta(t)}) {
            const auto j = index[image.residue()];
            if (j < 0) throw std::logic_error("A_p is not stable under alpha and beta");
            parent[find(i)] = find(static_cast<std::size_t>(j));
        }
    }
    std::size_t orbits = 0;
    for (std::size_t i = 0; i < A.size(); ++i) orbits += find(i) == i;
    return orbits;
}

/// Values of f(3) extending (0, 1, f2) read off C': 3 X(u)^2 over every
/// finite u, plus the two points (1, +-1) with X = 1, filtered by the third
/// condition f(3) - f(2) being a square.
inline std::set<std::uint32_t> f3_values_via_conic(OddPrime p, std::uint32_t f2) {
    const SquareTable table(p);
    const FpElem f2e(f2, p);
    std::set<std::uint32_t> out;
    auto consider = [&](FpElem f3) {
        if (table.is_square((f3 - f2e).residue())) out.insert(f3.residue());
    };
    consider(FpElem(3, p));
    for (std::uint32_t u = 0; u < p.value(); ++u) {
        FpElem ue(u, p);
        if ((FpElem(2, p) * ue * ue - FpElem(3, p)).is_zero()) continue;
        consider(f3_from_param(ue));
    }
    return out;
}

}  // namespace sqq

#endif  // SQQ_CURVES_HPP
