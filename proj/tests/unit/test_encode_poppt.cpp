#include "doctest.h"

#include <random>

#include "ragc/constructors.hpp"
#include "ragc/encode_pge.hpp"
#include "ragc/encode_poppt.hpp"
#include "ragc/error.hpp"

using namespace ragc;
using Seq = std::vector<std::uint64_t>;

namespace {

std::vector<std::uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

Grammar abab() {
    Grammar g;
    g.rules = terminal_rules(bytes("ab"));
    g.rules.push_back(SequenceRule{{1, 2}});
    g.tau = {3, 3};
    return g;
}

TreeForm form_of(Algorithm a) { return a == Algorithm::RePair ? TreeForm::Binary : TreeForm::General; }

}  // namespace

TEST_CASE("binary form worked vector") {
    auto t = build_poppt(abab(), TreeForm::Binary);
    CHECK(t.B.to_string() == "00101");
    CHECK(t.U == Seq{1, 2, 3});
    CHECK(t.internal_count == 2);
    CHECK(decode_poppt(BitStream::from_string("00101"), Seq{1, 2, 3}, {}, bytes("ab"), TreeForm::Binary, 2) == abab());
}

TEST_CASE("general form worked vector") {
    auto t = build_poppt(abab(), TreeForm::General);
    CHECK(t.B.to_string() == "1100110010");
    CHECK(t.U == Seq{1, 2, 3});
    CHECK(decode_poppt(BitStream::from_string("1100110010"), Seq{1, 2, 3}, {}, bytes("ab"), TreeForm::General, 2) ==
          abab());
    CHECK_THROWS_AS(decode_poppt(BitStream::from_string("1100110010"), Seq{1, 2}, {}, bytes("ab"), TreeForm::General, 2),
                    CorruptError);
}

TEST_CASE("run node in general form") {
    auto g = construct(Algorithm::RlMrRePair, bytes("aaaaaaaa"));
    auto t = build_poppt(g, TreeForm::General);
    CHECK(t.B.to_string() == "11001010");
    CHECK(t.U == Seq{0, 1});
    CHECK(t.run_exponents == Seq{8});
    CHECK(decode_poppt(t.B, t.U, t.run_exponents, bytes("a"), TreeForm::General, 1) == g);
}

TEST_CASE("binary form rejects non-pair grammars") {
    auto g = construct(Algorithm::MrRePair, bytes("abcabcabc"));
    CHECK_THROWS_AS(build_poppt(g, TreeForm::Binary), UsageError);
}

TEST_CASE("tiny start rules") {
    Grammar single;
    single.rules = terminal_rules(bytes("q"));
    single.tau = {1};
    auto b = build_poppt(single, TreeForm::Binary);
    CHECK(b.B.to_string() == "0");
    CHECK(decode_poppt(b.B, b.U, {}, bytes("q"), TreeForm::Binary, 1) == single);
    auto gen = build_poppt(single, TreeForm::General);
    CHECK(gen.B.to_string() == "1010");
    CHECK(decode_poppt(gen.B, gen.U, {}, bytes("q"), TreeForm::General, 1) == single);

    Grammar empty;
    CHECK(build_poppt(empty, TreeForm::General).B.to_string() == "0");
    CHECK(build_poppt(empty, TreeForm::Binary).B.empty());
}

TEST_CASE("IBLE widths") {
    auto s = encode_u_ible(Seq{1, 2, 3}, 2);
    CHECK(s.size() == 8);
    CHECK(s.to_string() == "01" "010" "011");
    BitReader r(s);
    CHECK(decode_u_ible(r, 3, 2) == Seq{1, 2, 3});
    CHECK(encode_u_ible(Seq{}, 5).empty());
    CHECK_THROWS_AS(encode_u_ible(Seq{4}, 2), InternalError);
}

TEST_CASE("U through PGE uses blocks of epsilon") {
    auto b = pge_blocks(Seq{1, 2, 3}, 2);
    CHECK(b.D == Seq{2, 2});
    CHECK(pge_decode(pge_encode(Seq{1, 2, 3}, 2)) == Seq{1, 2, 3});
}

TEST_CASE("u bound") {
    CHECK(u_bound_holds(Seq{1, 2, 3}, 2));
    CHECK(u_bound_holds(Seq{0, 1}, 1));
    CHECK_FALSE(u_bound_holds(Seq{4}, 2));
}

TEST_CASE("property: decode(build(g)) generates the same text for every constructor") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 120; ++it) {
        std::vector<std::uint8_t> d(1 + rng() % 1500);
        for (auto& b : d) b = static_cast<std::uint8_t>('a' + rng() % (1 + it % 6));
        if (it % 3 == 0)
            for (std::size_t i = 0; i + 30 < d.size(); i += 60) std::fill_n(d.begin() + static_cast<std::ptrdiff_t>(i), rng() % 30, 'a');
        for (auto a : {Algorithm::RePair, Algorithm::MrRePair, Algorithm::RlMrRePair}) {
            auto g = construct(a, d);
            auto t = build_poppt(g, form_of(a));
            CHECK(u_bound_holds(t.U, g.sigma()));
            std::size_t ones = 0;
            for (std::size_t i = 0; i < t.B.size(); ++i) ones += t.B.bit(i);
            if (a == Algorithm::RePair) {
                CHECK(ones == t.internal_count);
                CHECK(t.B.size() - ones == t.U.size());
            } else {
                // one 1 per node (leaves, internal nodes, start node)
                CHECK(ones == t.U.size() + t.internal_count + 1);
                CHECK(t.B.size() - ones == ones - 1 + 1);
            }
            auto back = decode_poppt(t.B, t.U, t.run_exponents, g.terminal_map(), form_of(a), g.tau.size());
            CHECK(validate(back).empty());
            CHECK(expand(back) == d);
            CHECK(grammar_size(back) == grammar_size(g));

            for (auto code : {LabelCode::Ible, LabelCode::Pge}) {
                auto s = poppt_encode(g, form_of(a), code, 8);
                BitReader r(s);
                auto g2 = poppt_decode(r, g.terminal_map(), form_of(a), code, g.tau.size());
                CHECK(r.at_end());
                CHECK(expand(g2) == d);
            }
        }
    }
}
