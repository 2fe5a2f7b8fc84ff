#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "sqq/paley.hpp"

using namespace sqq;

namespace {

const std::vector<std::uint64_t> kOrders = {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49};

std::vector<std::uint32_t> members(std::uint32_t mask, std::uint32_t q) {
    std::vector<std::uint32_t> h;
    for (std::uint32_t i = 0; i < q; ++i)
        if (mask >> i & 1) h.push_back(i);
    return h;
}

std::size_t outside_count(const std::vector<std::uint32_t>& d, const std::vector<std::uint32_t>& h) {
    return std::count_if(d.begin(), d.end(), [&](std::uint32_t y) { return !std::binary_search(h.begin(), h.end(), y); });
}

std::vector<std::uint32_t> random_subset(std::mt19937& rng, std::uint32_t q, std::size_t size) {
    std::vector<std::uint32_t> all(q);
    std::iota(all.begin(), all.end(), 0u);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

TEST(Distinguisher, Examples) {
    const ExtField F5(ext_field_for_order(5));
    const auto d = distinguisher_set(F5, 0, 1);
    EXPECT_FALSE(d.empty());
    EXPECT_TRUE(std::count(d.begin(), d.end(), 0u));
    EXPECT_THROW(distinguisher_set(F5, 0, 0), precondition_error);
}

TEST(HomogeneousSets, ExhaustiveSmallFields) {
    for (std::uint64_t q : kOrders) {
        if (q > 13) break;
        const ExtField F(ext_field_for_order(q));
        const std::uint32_t full = (1u << q) - 1;
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            if (std::popcount(mask) < 2) continue;
            const auto h = members(mask, q);
            if (is_homogeneous(F, h)) {
                // both the size bound and, by (iii), outright impossibility
                EXPECT_LE(h.size(), (q - 1) / 2);
                ADD_FAILURE() << "homogeneous proper subset in F_" << q;
            }
            if (h.size() > (q - 1) / 2) continue;
            for (std::size_t a = 0; a < h.size(); ++a)
                for (std::size_t b = a + 1; b < h.size(); ++b)
                    ASSERT_GE(outside_count(distinguisher_set(F, h[a], h[b]), h), 2u) << q << " mask " << mask;
        }
    }
}

TEST(HomogeneousSets, RandomSamplesUpTo49) {
    std::mt19937 rng(2024);
    for (std::uint64_t q : kOrders) {
        if (q <= 13) continue;
        const ExtField F(ext_field_for_order(q));
        const std::uint32_t n = F.size();
        std::uniform_int_distribution<std::size_t> small(2, (n - 1) / 2), any(2, n - 1);
        for (int i = 0; i < 10000; ++i) {
            const auto h = random_subset(rng, n, small(rng));
            std::uniform_int_distribution<std::size_t> pick(0, h.size() - 1);
            std::size_t a = pick(rng), b = pick(rng);
            while (b == a) b = pick(rng);
            ASSERT_GE(outside_count(distinguisher_set(F, h[a], h[b]), h), 2u) << q;
            const auto g = random_subset(rng, n, any(rng));
            ASSERT_FALSE(is_homogeneous(F, g)) << q;
        }
    }
}

TEST(Paley, RejectsThreeModFour) {
    for (std::uint64_t q : {3u, 7u, 11u, 27u, 43u}) EXPECT_THROW(PaleyGraph(ext_field_for_order(q)), precondition_error);
}

TEST(Paley, RegularAndSymmetric) {
    for (std::uint64_t q : {5u, 9u, 13u, 17u, 25u, 29u, 37u, 41u, 49u, 81u}) {
        const PaleyGraph g(ext_field_for_order(q));
        for (std::uint32_t u = 0; u < g.order(); ++u) {
            ASSERT_EQ(g.degree(u), (q - 1) / 2);
            ASSERT_FALSE(g.adjacent(u, u));
            for (std::uint32_t v = 0; v < g.order(); ++v) ASSERT_EQ(g.adjacent(u, v), g.adjacent(v, u));
        }
    }
}

TEST(Closure, Examples) {
    const PaleyGraph g5(ext_field_for_order(5));
    EXPECT_EQ(congruence_closure(g5, 0, 1), (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
    const PaleyGraph g9(ext_field_for_order(9));
    for (std::uint32_t u = 0; u < 9; ++u)
        for (std::uint32_t v = 0; v < 9; ++v)
            if (u != v) {
                EXPECT_EQ(congruence_closure(g9, u, v).size(), 9u);
            }
    EXPECT_THROW(congruence_closure(g5, 2, 2), precondition_error);
}

TEST(Closure, ContainsSeedAndIsMonotone) {
    std::mt19937 rng(5);
    for (std::uint64_t q : {13u, 25u, 49u}) {
        const PaleyGraph g(ext_field_for_order(q));
        std::uniform_int_distribution<std::uint32_t> d(0, g.order() - 1);
        for (int i = 0; i < 100; ++i) {
            std::uint32_t u = d(rng), v = d(rng), w = d(rng);
            if (u == v) continue;
            const auto small = congruence_closure(g, u, v);
            const std::vector<std::uint32_t> seed{u, v, w};
            const auto big = congruence_closure(g, seed);
            EXPECT_TRUE(std::binary_search(small.begin(), small.end(), u));
            EXPECT_TRUE(std::binary_search(small.begin(), small.end(), v));
            EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
    }
}

TEST(Paley, AllSimpleUpTo101) {
    std::vector<std::uint64_t> orders;
    for (std::uint64_t q = 5; q <= 101; q += 4) {
        std::uint64_t p = 2;
        while (q % p) ++p;
        std::uint64_t r = q;
        while (r % p == 0) r /= p;
        if (r == 1) orders.push_back(q);
    }
    EXPECT_TRUE(std::count(orders.begin(), orders.end(), 81u));
    EXPECT_TRUE(std::count(orders.begin(), orders.end(), 25u));
    for (std::uint64_t q : orders) EXPECT_TRUE(is_simple(PaleyGraph(ext_field_for_order(q)))) << q;
}
