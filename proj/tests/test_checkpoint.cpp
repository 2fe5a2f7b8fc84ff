#include <random>

#include <gtest/gtest.h>

#include "sqq/search.hpp"

using namespace sqq;

namespace {

SearchCheckpoint finished(std::uint32_t p, unsigned x, unsigned depth) {
    SearchCheckpoint ck{p, x, depth, {}};
    SearchOptions o;
    o.split_depth = depth;
    resume_count(ck, o);
    return ck;
}

}  // namespace

TEST(Checkpoint, Format) {
    SearchCheckpoint ck{11, 4, 2, {{{0, 1, 2}, {1, 2, 3}}}};
    EXPECT_EQ(serialize_checkpoint(ck), "p=11 x=4 depth=2 version=1\nprefix=0,1,2 counts=1,2,3\n");
    EXPECT_EQ(ck.partial_total(), 3u);
}

TEST(Checkpoint, RoundTripIsBitExact) {
    for (auto [p, x, d] : {std::tuple{11u, 4u, 2u}, {31u, 9u, 3u}, {43u, 12u, 4u}, {13u, 12u, 12u}}) {
        const auto ck = finished(p, x, d);
        const auto text = serialize_checkpoint(ck);
        const auto back = parse_checkpoint(text);
        EXPECT_EQ(back, ck);
        EXPECT_EQ(serialize_checkpoint(back), text);
    }
}

TEST(Checkpoint, RandomSubsetsRoundTrip) {
    const auto full = finished(37, 10, 3);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        SearchCheckpoint sub{full.p, full.target_x, full.split_depth, {}};
        for (const auto& kv : full.completed)
            if (rng() & 1) sub.completed.insert(kv);
        EXPECT_EQ(parse_checkpoint(serialize_checkpoint(sub)), sub);
    }
}

TEST(Checkpoint, TornLastLineIsDropped) {
    const auto ck = finished(31, 7, 3);
    auto text = serialize_checkpoint(ck);
    const auto kept = parse_checkpoint(text);
    // cut in the middle of the final record
    text.resize(text.size() - 4);
    const auto torn = parse_checkpoint(text);
    EXPECT_EQ(torn.completed.size(), kept.completed.size() - 1);
    SearchOptions o;
    auto resumed = torn;
    EXPECT_EQ(resume_count(resumed, o), ck.partial_total());
}

TEST(Checkpoint, MalformedInputRejected) {
    EXPECT_THROW(parse_checkpoint(std::string()), checkpoint_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 version=1\n"), parse_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=2 version=2\n"), checkpoint_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=5 version=1\n"), checkpoint_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=2 version=1\nprefix=0,1 counts=1,2,3\n"), checkpoint_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=2 version=1\nprefix=0,1,2 counts=1,2\n"), checkpoint_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=2 version=1\nprefix=0,1,2 counts=2,2,3\n"), checkpoint_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=2 version=1\nprefix=0,1,12 counts=1,2,3\n"), checkpoint_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=2 version=1\nprefix=0,1,x counts=1,2,3\n"), parse_error);
    EXPECT_THROW(parse_checkpoint("p=11 x=4 depth=2 version=1\nprefix=0,1,2 counts=1,2,3\nprefix=0,1,2 counts=1,2,3\n"),
                 checkpoint_error);
}

TEST(Checkpoint, SinkSeesEveryUnitOnce) {
    SearchCheckpoint ck{29, 8, 3, {}};
    std::set<std::vector<std::uint32_t>> seen;
    SearchOptions o;
    o.workers = 4;
    resume_count(ck, o, [&](const auto& prefix, const auto&) { EXPECT_TRUE(seen.insert(prefix).second); });
    EXPECT_EQ(seen.size(), ck.completed.size());
    for (const auto& [prefix, counts] : ck.completed) EXPECT_TRUE(is_valid_prefix({OddPrime(29), prefix}));
}
