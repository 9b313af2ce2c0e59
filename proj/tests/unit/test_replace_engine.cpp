#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "ragc/error.hpp"
#include "ragc/replace_engine.hpp"

using namespace ragc;
using Text = std::vector<std::uint32_t>;

TEST_CASE("build_index counts greedy non-overlapping pairs") {
    auto s = build_index({1, 2, 1, 2});
    CHECK(s.pair_count({1, 2}) == 2);
    CHECK(s.pair_count({2, 1}) == 1);

    auto runs = build_index({1, 1, 1, 1, 1});
    CHECK(runs.pair_count({1, 1}) == 2);

    auto empty = build_index({});
    CHECK(empty.pair_counts().empty());
    CHECK_FALSE(most_frequent_pair(empty).has_value());
}

TEST_CASE("bucket count is ceil(sqrt(n+1))") {
    CHECK(build_index(Text(15, 1)).bucket_count() == 4);
    CHECK(build_index(Text(16, 1)).bucket_count() == 5);
}

TEST_CASE("most_frequent_pair picks the highest count, then the leftmost") {
    auto s = build_index({1, 2, 1, 2});
    auto best = most_frequent_pair(s);
    REQUIRE(best);
    CHECK(best->pair == SymbolPair{1, 2});
    CHECK(best->count == 2);

    auto flat = build_index({1, 2, 3});
    auto one = most_frequent_pair(flat);
    REQUIRE(one);
    CHECK(one->count == 1);

    auto tie = build_index({3, 4, 1, 2, 3, 4, 1, 2});
    CHECK(most_frequent_pair(tie)->pair == SymbolPair{3, 4});
}

TEST_CASE("extend_to_maximal_repeat") {
    auto abc = build_index({1, 2, 3, 1, 2, 3, 1, 2, 3});
    auto r = extend_to_maximal_repeat(abc, {1, 2});
    CHECK(r.symbols == Text{1, 2, 3});
    CHECK(r.frequency() == 3);
    CHECK(r.starts == std::vector<Slot>{0, 3, 6});
    CHECK(r.ends == std::vector<Slot>{2, 5, 8});

    auto abab = build_index({1, 2, 1, 2});
    auto r2 = extend_to_maximal_repeat(abab, {1, 2});
    CHECK(r2.symbols == Text{1, 2});
    CHECK(r2.frequency() == 2);

    auto aaaa = build_index({1, 1, 1, 1});
    auto r3 = extend_to_maximal_repeat(aaaa, {1, 1});
    CHECK(r3.symbols == Text{1, 1});
    CHECK(r3.frequency() == 2);

    auto left = build_index({5, 1, 2, 9, 5, 1, 2});
    CHECK(extend_to_maximal_repeat(left, {1, 2}).symbols == Text{5, 1, 2});

    CHECK_THROWS_AS(extend_to_maximal_repeat(abab, {2, 1}), UsageError);
}

TEST_CASE("replace_all collapses occurrences and updates counts") {
    auto s = build_index({1, 2, 3, 1, 2, 3});
    std::vector<Slot> at{0, 3};
    replace_all(s, at, 3, 4);
    CHECK(s.text().live_symbols() == Text{4, 4});
    CHECK(s.text().live_length() == 2);
    CHECK(s.pair_count({4, 4}) == 1);
    CHECK(oracle::scratch_rebuild_equals(s).ok);

    auto one = build_index({1, 1});
    std::vector<Slot> z{0};
    replace_all(one, z, 2, 2);
    CHECK(one.text().live_symbols() == Text{2});

    auto t = build_index({1, 2, 1, 2, 1});
    std::vector<Slot> two{0, 2};
    replace_all(t, two, 2, 3);
    CHECK(t.text().live_symbols() == Text{3, 3, 1});
    CHECK(oracle::scratch_rebuild_equals(t).ok);
}

TEST_CASE("replace_all rejects overlapping or dead ranges") {
    auto s = build_index({1, 1, 1, 1});
    std::vector<Slot> overlap{0, 1};
    CHECK_THROWS_AS(replace_all(s, overlap, 2, 2), InternalError);
    std::vector<Slot> ok{0};
    replace_all(s, ok, 2, 2);
    std::vector<Slot> dead{1};
    CHECK_THROWS_AS(replace_all(s, dead, 2, 3), InternalError);
}

TEST_CASE("find_runs lists maximal runs of length at least 2") {
    auto s = build_index({1, 1, 2, 1, 1, 1, 1, 2, 1});
    auto runs = s.find_runs(1);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].start == 0);
    CHECK(runs[0].length == 2);
    CHECK(runs[1].start == 3);
    CHECK(runs[1].end == 6);
    CHECK(runs[1].length == 4);
}

TEST_CASE("left-trimming a run re-aligns the greedy count") {
    // replacing "2 1" eats the first 1 of the run, so xx parity shifts
    auto s = build_index({2, 1, 1, 1, 1, 3, 2, 1});
    std::vector<Slot> at{0, 6};
    replace_all(s, at, 2, 4);
    CHECK(s.text().live_symbols() == Text{4, 1, 1, 1, 3, 4});
    CHECK(s.pair_count({1, 1}) == 1);
    CHECK(oracle::scratch_rebuild_equals(s).ok);
}

TEST_CASE("property: incremental counts equal a scratch rebuild after every step") {
    std::mt19937_64 rng(11);
    for (int session_no = 0; session_no < 60; ++session_no) {
        Text t(1 + rng() % 2000);
        const unsigned sigma = 1 + rng() % 4;
        for (auto& x : t) x = 1 + static_cast<std::uint32_t>(rng() % sigma);
        ReplaceSession s{t};
        std::uint32_t next = sigma + 1;
        bool ok = true;
        for (int step = 0; step < 100 && ok; ++step) {
            auto best = s.most_frequent_pair();
            if (!best || best->count < 2) break;
            auto rep = s.extend_to_maximal_repeat(best->pair);
            std::vector<ReplaceSession::Region> regions;
            for (std::size_t i = 0; i < rep.starts.size(); ++i) regions.push_back({rep.starts[i], rep.ends[i], next});
            s.replace_regions(regions, next);
            ++next;
            auto check = oracle::scratch_rebuild_equals(s);
            if (!check.ok) {
                INFO(check.detail);
                ok = false;
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("property: most_frequent_pair agrees with the naive counts") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 200; ++it) {
        Text t(2 + rng() % 300);
        for (auto& x : t) x = 1 + static_cast<std::uint32_t>(rng() % 3);
        auto s = build_index(t);
        auto best = most_frequent_pair(s);
        auto naive = oracle::naive_pair_counts(t);
        std::uint32_t mx = 0;
        for (auto& [p, c] : naive) mx = std::max(mx, c);
        REQUIRE(best);
        CHECK(best->count == mx);
    }
}
