#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sqq/rational.hpp"
#include "sqq/search.hpp"

using namespace sqq;

namespace {

BigRational R(const std::string& s) { return BigRational::parse(s); }

const RationalSeq kFour = {R("0"), R("1"), R("15842/1681"), R("23763")};
const RationalSeq kFive = {R("0"), R("1"), R("2738/2209"), R("3267/2209"), R("5476/2209")};

bool fp_condition(const std::vector<FpElem>& v) {
    for (std::size_t j = 1; j < v.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const FpElem d(static_cast<std::int64_t>(j - i), v[j].modulus());
            if (!is_square_p((v[j] - v[i]) / d)) return false;
        }
    return true;
}

}  // namespace

TEST(BigRational, NormalizesAndParses) {
    EXPECT_EQ(R("6/-4").str(), "-3/2");
    EXPECT_EQ(R("-0/7").str(), "0");
    EXPECT_EQ(R(" 12 ").str(), "12");
    EXPECT_EQ((R("1/3") + R("1/6")).str(), "1/2");
    EXPECT_EQ(R("15842/1681") - R("1"), R("14161/1681"));
    EXPECT_LT(R("1/3"), R("1/2"));
    EXPECT_THROW(R("1/0"), precondition_error);
    EXPECT_THROW(R("abc"), precondition_error);
    EXPECT_THROW(R("1/2/3"), precondition_error);
    EXPECT_THROW(R("1") / R("0"), precondition_error);
}

TEST(IsSquareRat, Examples) {
    EXPECT_TRUE(is_square_rat(R("0")));
    EXPECT_TRUE(is_square_rat(R("14161/1681")));
    EXPECT_FALSE(is_square_rat(R("-4")));
    EXPECT_FALSE(is_square_rat(R("3/2")));
    EXPECT_FALSE(is_square_rat(R("4/3")));
}

TEST(IsSquareRat, ExactForLargeValues) {
    // (2^80 + 1)^2 and its neighbours, beyond double precision
    const BigInt big = (BigInt(1) << 80) + 1;
    EXPECT_TRUE(is_square_rat(BigRational(big * big, BigInt(9))));
    EXPECT_FALSE(is_square_rat(BigRational(big * big + 1, BigInt(9))));
    EXPECT_FALSE(is_square_rat(BigRational(big * big - 1, BigInt(1))));
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const BigInt a = BigInt(rng()) * BigInt(rng()), b = BigInt(rng() | 1);
        EXPECT_TRUE(is_square_rat(BigRational(a * a, b * b)));
        // a^2 + 1 is never a square for a > 0
        EXPECT_FALSE(is_square_rat(BigRational(a * a + 1, b * b)));
    }
}

TEST(VerifySequence, Examples) {
    EXPECT_TRUE(verify_sequence(kFour));
    EXPECT_TRUE(verify_sequence(kFive));
    EXPECT_FALSE(verify_sequence({R("0"), R("1"), R("3")}));
    EXPECT_TRUE(verify_sequence({}));
    EXPECT_TRUE(verify_sequence({R("5")}));
}

TEST(VerifySequence, PerturbingAnyEntryBreaksIt) {
    for (const auto& seq : {kFour, kFive})
        for (std::size_t i = 0; i < seq.size(); ++i) {
            auto bumped = seq;
            bumped[i] = bumped[i] + R("1");
            EXPECT_FALSE(verify_sequence(bumped)) << i;
        }
}

TEST(VerifySequence, AffineSquareSequencesPass) {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<long long> d(-1000, 1000);
    for (int i = 0; i < 200; ++i) {
        const BigRational a(BigInt(d(rng)), BigInt(std::abs(d(rng)) + 1));
        const BigRational b(BigInt(d(rng)), BigInt(std::abs(d(rng)) + 1));
        RationalSeq seq;
        for (long long j = 0; j < 12; ++j) seq.push_back(a * a * BigRational(j) + b);
        ASSERT_TRUE(verify_sequence(seq));
    }
}

TEST(ValP, Examples) {
    EXPECT_EQ(val_p(R("1/4"), 2), -2);
    EXPECT_EQ(val_p(R("0"), 5), std::nullopt);
    EXPECT_EQ(val_p(R("2738/2209"), 47), -2);
    EXPECT_EQ(val_p(R("-50"), 5), 2);
    EXPECT_THROW(val_p(R("3"), 4), precondition_error);
}

TEST(ValP, Additive) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-100000, 100000);
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        for (int i = 0; i < 1000; ++i) {
            BigRational a(BigInt(d(rng)), BigInt(std::abs(d(rng)) + 1)), b(BigInt(d(rng)), BigInt(std::abs(d(rng)) + 1));
            const auto va = val_p(a, p), vb = val_p(b, p), vab = val_p(a * b, p);
            if (!va || !vb) {
                ASSERT_FALSE(vab.has_value());
            } else {
                ASSERT_EQ(*vab, *va + *vb);
            }
        }
    }
}

TEST(FirstDenominatorIndex, Examples) {
    EXPECT_EQ(first_denominator_index(kFive, 47), 2u);
    EXPECT_EQ(first_denominator_index(kFour, 41), 2u);
    EXPECT_EQ(first_denominator_index({R("0"), R("1"), R("2"), R("3")}, 3), std::nullopt);
    EXPECT_EQ(first_denominator_index(kFour, 2), std::nullopt);
    // starting 0, 1 means j_p >= 2 whenever it exists
    for (std::uint64_t p : odd_primes_between(3, 100)) {
        for (const auto& seq : {kFour, kFive}) {
            auto j = first_denominator_index(seq, p);
            if (j) {
                EXPECT_GE(*j, 2u);
            }
        }
    }
}

TEST(ReduceModP, Examples) {
    const auto r = reduce_mod_p({R("0"), R("1"), R("2")}, OddPrime(5));
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[2].residue(), 2u);
    const auto four = reduce_mod_p(kFour, OddPrime(7));
    EXPECT_EQ(four.size(), 4u);
    EXPECT_TRUE(fp_condition(four));
    try {
        reduce_mod_p({R("0"), R("1"), R("1/5")}, OddPrime(5));
        FAIL() << "expected reduction_error";
    } catch (const reduction_error& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    EXPECT_THROW(reduce_mod_p({R("0"), R("1"), R("2"), R("3")}, OddPrime(3)), precondition_error);
    EXPECT_EQ(reduce_mod_p({R("-1/2")}, OddPrime(7))[0].residue(), 3u);
}

TEST(ReduceModP, SquareConditionTransfers) {
    // both worked examples, every admissible odd prime below 100
    int checked = 0;
    for (std::uint32_t p : odd_primes_between(3, 100))
        for (const auto& seq : {kFour, kFive}) {
            if (seq.size() > p || first_denominator_index(seq, p)) continue;
            ASSERT_TRUE(fp_condition(reduce_mod_p(seq, OddPrime(p)))) << p;
            ++checked;
        }
    EXPECT_GT(checked, 40);
    // a^2 j + b with random a, b, reduced wherever defined
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long long> d(-500, 500);
    for (int i = 0; i < 300; ++i) {
        const BigRational a(BigInt(d(rng)), BigInt(std::abs(d(rng)) + 1));
        const BigRational b(BigInt(d(rng)), BigInt(std::abs(d(rng)) + 1));
        RationalSeq seq;
        for (long long j = 0; j < 10; ++j) seq.push_back(a * a * BigRational(j) + b);
        for (std::uint32_t p : odd_primes_between(11, 60)) {
            if (first_denominator_index(seq, p)) continue;
            ASSERT_TRUE(fp_condition(reduce_mod_p(seq, OddPrime(p))));
        }
    }
}

TEST(ReduceModP, LiftedWitnessesRoundTrip) {
    for (std::uint32_t p : {11u, 13u, 17u}) {
        for (const auto& w : enumerate_solutions(OddPrime(p), 4)) {
            RationalSeq lifted;
            for (auto v : w.values) lifted.push_back(BigRational(static_cast<long long>(v) + p));
            const auto back = reduce_mod_p(lifted, OddPrime(p));
            std::vector<std::uint32_t> residues;
            for (const auto& e : back) residues.push_back(e.residue());
            ASSERT_EQ(residues, w.values);
            ASSERT_TRUE(fp_condition(back));
        }
    }
}

TEST(ParseSequence, CommentsAndErrors) {
    std::istringstream ok("# length 4\n0\n1\n15842/1681   # f(2)\n\n23763\n");
    EXPECT_EQ(parse_sequence(ok), kFour);
    std::istringstream bad("0\n1\nx/2\n");
    try {
        parse_sequence(bad);
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}
