#include "doctest.h"

#include <random>

#include "oracle.hpp"

using namespace ragc;
using namespace ragc::oracle;

namespace {

Text sym(const std::string& s) {
    Text t;
    for (char c : s) t.push_back(static_cast<std::uint32_t>(c - 'a' + 1));
    return t;
}

const RepeatEntry* find(const std::vector<RepeatEntry>& r, const Text& u) {
    for (auto& e : r)
        if (e.substring == u) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("maximal repeats of abcabcabc") {
    auto r = enumerate_maximal_repeats(sym("abcabcabc"));
    auto abc = find(r, sym("abc"));
    REQUIRE(abc);
    CHECK(abc->frequency == 3);
    CHECK(abc->maximal_repeat);
    // its two occurrences overlap, so the non-overlapping count is 1
    CHECK(find(r, sym("abcabc")) == nullptr);
    CHECK(greedy_occurrences(sym("abcabcabc"), sym("abcabc")).size() == 1);
    auto ab = find(r, sym("ab"));
    REQUIRE(ab);
    CHECK_FALSE(ab->maximal_repeat);
}

TEST_CASE("maximal repeats of abab and abc") {
    auto r = enumerate_maximal_repeats(sym("abab"));
    auto ab = find(r, sym("ab"));
    REQUIRE(ab);
    CHECK(ab->frequency == 2);
    CHECK(ab->maximal_repeat);
    CHECK(enumerate_maximal_repeats(sym("abc")).empty());
    CHECK_THROWS(enumerate_maximal_repeats(Text(257, 1)));
}

TEST_CASE("naive counts") {
    auto c = naive_pair_counts({1, 1, 1, 1, 1});
    CHECK(c.at({1, 1}) == 2);
    CHECK(greedy_occurrences(sym("aaaa"), sym("aa")) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("cross_check_selection") {
    CHECK(cross_check_selection(sym("aaaa")).ok);
    CHECK(cross_check_selection(sym("abc")).ok);
    CHECK(cross_check_selection(sym("abcabcabc")).ok);
}

TEST_CASE("scratch rebuild on a fresh index, and the negative control") {
    Text t = sym("abcabcaabbabcc");
    ReplaceSession s{t};
    CHECK(scratch_rebuild_equals(s).ok);
    auto counts = s.pair_counts();
    counts[0].count += 1;
    auto bad = compare_counts(counts, s.text().live_symbols());
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.detail.empty());
}

TEST_CASE("naive expand and fibonacci words") {
    CHECK(fibonacci_word(1) == "a");
    CHECK(fibonacci_word(2) == "ab");
    CHECK(fibonacci_word(5) == "abaababa");
    CHECK(fibonacci_word(20).size() == 10946);
    std::string f = fibonacci_word(12);
    std::vector<std::uint8_t> d(f.begin(), f.end());
    CHECK(naive_expand(naive_repair(d)) == d);
    CHECK(naive_expand(naive_mr_repair(d)) == d);
    CHECK(naive_expand(naive_rl_mr_repair(d)) == d);
}
