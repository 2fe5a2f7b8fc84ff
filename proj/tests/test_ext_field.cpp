#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "sqq/ext_field.hpp"

using namespace sqq;

namespace {

// Independent reducibility test for degree <= 3: reducible iff it has a root.
bool has_root(const PolyFp& f, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

std::uint32_t multiplicative_order(const ExtField& F, std::uint32_t a) {
    std::uint32_t o = 1;
    for (std::uint32_t x = a; x != 1; x = F.mul(x, a)) ++o;
    return o;
}

}  // namespace

TEST(BuildExtField, DegreeOneIsX) {
    const auto ctx = build_ext_field(OddPrime(5), 1);
    EXPECT_EQ(ctx.q, 5u);
    EXPECT_EQ(ctx.modpoly, (PolyFp{0, 1}));
}

TEST(BuildExtField, SmallestIrreducibleForDegreeTwoAndThree) {
    for (auto [p, k] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}, {5u, 3u}}) {
        const auto ctx = build_ext_field(OddPrime(p), k);
        EXPECT_EQ(ctx.q, k == 2 ? p * p : p * p * p);
        ASSERT_EQ(ctx.modpoly.size(), k + 1);
        EXPECT_EQ(ctx.modpoly.back(), 1u);
        EXPECT_FALSE(has_root(ctx.modpoly, p));
        // first rootless monic polynomial in lexicographic order of (c0, c1, ...)
        std::vector<PolyFp> candidates;
        std::uint32_t total = 1;
        for (unsigned i = 0; i < k; ++i) total *= p;
        for (std::uint32_t n = 0; n < total; ++n) {
            PolyFp f(k + 1, 1);
            std::uint32_t r = n;
            for (unsigned i = 0; i < k; ++i) {
                f[i] = r % p;
                r /= p;
            }
            candidates.push_back(f);
        }
        std::sort(candidates.begin(), candidates.end());
        auto first = std::find_if(candidates.begin(), candidates.end(), [&](const PolyFp& f) { return !has_root(f, p); });
        ASSERT_NE(first, candidates.end());
        EXPECT_EQ(*first, ctx.modpoly) << p << "^" << k;
    }
}

TEST(BuildExtField, SizeBound) {
    EXPECT_THROW(build_ext_field(OddPrime(3), 5), size_bound_error);
    EXPECT_NO_THROW(build_ext_field(OddPrime(3), 5, 243));
    EXPECT_THROW(build_ext_field(OddPrime(3), 0), precondition_error);
}

TEST(BuildExtField, DegreeFourIrreducibleHasNoQuadraticFactor) {
    const auto ctx = build_ext_field(OddPrime(3), 4);
    EXPECT_EQ(ctx.q, 81u);
    EXPECT_TRUE(is_irreducible(ctx.modpoly, 3));
    // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F_3
    EXPECT_FALSE(is_irreducible({1, 0, 0, 0, 1}, 3));
}

TEST(ExtFieldForOrder, Decomposes) {
    EXPECT_EQ(ext_field_for_order(49).k, 2u);
    EXPECT_EQ(ext_field_for_order(13).k, 1u);
    EXPECT_THROW(ext_field_for_order(15), precondition_error);
    EXPECT_THROW(ext_field_for_order(16), precondition_error);
}

TEST(ExtField, FieldAxiomsSampled) {
    for (std::uint64_t q : {9u, 25u, 27u, 49u, 81u}) {
        const ExtField F(ext_field_for_order(q));
        std::mt19937 rng(static_cast<unsigned>(q));
        std::uniform_int_distribution<std::uint32_t> d(0, F.size() - 1);
        for (int i = 0; i < 500; ++i) {
            auto a = d(rng), b = d(rng), c = d(rng);
            ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
            ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            ASSERT_EQ(F.add(F.sub(a, b), b), a);
            if (a) {
                ASSERT_EQ(F.mul(a, F.inverse(a)), 1u);
            }
        }
        // Frobenius is additive and multiplicative
        for (int i = 0; i < 200; ++i) {
            auto a = d(rng), b = d(rng);
            ASSERT_EQ(F.frobenius(F.add(a, b), 1), F.add(F.frobenius(a, 1), F.frobenius(b, 1)));
            ASSERT_EQ(F.frobenius(F.mul(a, b), 1), F.mul(F.frobenius(a, 1), F.frobenius(b, 1)));
        }
    }
}

TEST(ChiQ, Examples) {
    const ExtField F9(build_ext_field(OddPrime(3), 2));
    EXPECT_EQ(chi_q(0, F9), CharValue::zero);
    EXPECT_EQ(chi_q(1, F9), CharValue::plus_one);
    std::uint32_t generators = 0;
    for (std::uint32_t a = 1; a < 9; ++a)
        if (multiplicative_order(F9, a) == 8) {
            ++generators;
            EXPECT_EQ(chi_q(a, F9), CharValue::minus_one);
        }
    EXPECT_EQ(generators, 4u);
}

TEST(ChiQ, TableAgreesWithExponentAndIsMultiplicative) {
    for (std::uint64_t q : {9u, 25u, 27u, 49u}) {
        const ExtField F(ext_field_for_order(q));
        for (std::uint32_t a = 0; a < F.size(); ++a) {
            ASSERT_EQ(F.chi(a), as_int(F.chi_q(a)));
            for (std::uint32_t b = 0; b < F.size(); ++b) ASSERT_EQ(F.chi(F.mul(a, b)), F.chi(a) * F.chi(b));
        }
    }
}

TEST(ChiQ, PrimeSubfieldRestriction) {
    // On F_p inside F_{p^k}: chi_q(a) = chi_p(a)^k.
    for (std::uint64_t q : {9u, 25u, 27u, 49u}) {
        const ExtField F(ext_field_for_order(q));
        const OddPrime p(F.characteristic());
        for (std::uint32_t a = 1; a < p.value(); ++a) {
            int expected = 1;
            for (unsigned i = 0; i < F.degree(); ++i) expected *= as_int(chi_p(FpElem(a, p)));
            ASSERT_EQ(as_int(F.chi_q(a)), expected) << q << " " << a;
        }
    }
}
