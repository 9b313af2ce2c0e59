#include "doctest.h"

#include <random>

#include "ragc/bitio.hpp"
#include "ragc/error.hpp"

using namespace ragc;

namespace {
std::string gamma_bits(std::uint64_t n) {
    std::vector<std::uint64_t> v{n};
    return gamma_encode(v).to_string();
}
}  // namespace

TEST_CASE("gamma codes") {
    CHECK(gamma_bits(1) == "1");
    CHECK(gamma_bits(2) == "010");
    CHECK(gamma_bits(5) == "00101");
    std::vector<std::uint64_t> zero{0};
    CHECK_THROWS_AS(gamma_encode(zero), DomainError);
}

TEST_CASE("gamma decode and truncation") {
    CHECK(gamma_decode(BitStream::from_string("00101"), 1) == std::vector<std::uint64_t>{5});
    CHECK(gamma_decode(BitStream::from_string("1"), 1) == std::vector<std::uint64_t>{1});
    CHECK_THROWS_AS(gamma_decode(BitStream::from_string("00"), 1), CorruptError);
    CHECK_THROWS_AS(gamma_decode(BitStream::from_string("001"), 1), CorruptError);
}

TEST_CASE("property: gamma round trip and length for 1..2^20") {
    BitWriter w;
    std::size_t expect_bits = 0;
    for (std::uint64_t n = 1; n <= (1u << 20); ++n) {
        w.put_gamma(n);
        unsigned floor_log = 63 - static_cast<unsigned>(__builtin_clzll(n));
        expect_bits += 2 * floor_log + 1;
    }
    auto s = std::move(w).finish();
    CHECK(s.size() == expect_bits);
    BitReader r(s);
    bool all = true;
    for (std::uint64_t n = 1; n <= (1u << 20); ++n) all = all && r.get_gamma() == n;
    CHECK(all);
    CHECK(r.at_end());
}

TEST_CASE("gamma handles the 64-bit extreme") {
    BitWriter w;
    w.put_gamma(UINT64_MAX);
    auto s = std::move(w).finish();
    CHECK(s.size() == 127);
    BitReader r(s);
    CHECK(r.get_gamma() == UINT64_MAX);
}

TEST_CASE("fixed width codec") {
    std::vector<std::uint64_t> v{3, 1, 2};
    CHECK(fixed_width_encode(v, 2).to_string() == "110110");
    CHECK(fixed_width_decode(BitStream::from_string("110110"), 2, 3) == v);
    CHECK(fixed_width_encode({}, 5).empty());
    std::vector<std::uint64_t> four{4};
    CHECK_THROWS_AS(fixed_width_encode(four, 2), DomainError);
}

TEST_CASE("property: fixed width round trip on random values") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 300; ++it) {
        unsigned width = 1 + rng() % 64;
        std::vector<std::uint64_t> v(rng() % 200);
        for (auto& x : v) x = width == 64 ? rng() : rng() & ((std::uint64_t{1} << width) - 1);
        auto s = fixed_width_encode(v, width);
        CHECK(s.size() == width * v.size());
        CHECK(fixed_width_decode(s, width, v.size()) == v);
    }
}

TEST_CASE("rle split") {
    std::vector<std::uint64_t> t{1, 1, 1, 2, 2, 3};
    auto r = rle_split(t);
    CHECK(r.symbols == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(r.lengths == std::vector<std::uint64_t>{3, 2, 1});
    std::vector<std::uint64_t> seven{7};
    CHECK(rle_split(seven).lengths == std::vector<std::uint64_t>{1});
    CHECK(rle_split({}).symbols.empty());
}

TEST_CASE("property: rle split then join is identity, adjacent symbols differ") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
        std::vector<std::uint64_t> t(rng() % 100);
        for (auto& x : t) x = rng() % 3;
        auto r = rle_split(t);
        CHECK(rle_join(r) == t);
        for (std::size_t i = 1; i < r.symbols.size(); ++i) CHECK(r.symbols[i] != r.symbols[i - 1]);
    }
}

TEST_CASE("writer and reader agree on mixed schedules, padding is zero") {
    BitWriter w;
    w.put_bit(true);
    w.put_bits(0x2a, 7);
    w.put_gamma(9);
    w.put_bits(0xdeadbeefcafef00dULL, 64);
    auto s = std::move(w).finish();
    CHECK(s.size() == 1 + 7 + 7 + 64);
    CHECK((s.bytes().back() & 1) == 0);
    BitReader r(s);
    CHECK(r.get_bit());
    CHECK(r.get_bits(7) == 0x2a);
    CHECK(r.get_gamma() == 9);
    CHECK(r.get_bits(64) == 0xdeadbeefcafef00dULL);
    CHECK_THROWS_AS(r.get_bit(), CorruptError);
}

TEST_CASE("framed streams and append at odd offsets") {
    auto inner = BitStream::from_string("1011001110001");
    BitWriter w;
    w.put_bits(5, 3);
    put_framed(w, inner);
    w.append(inner);
    auto s = std::move(w).finish();
    BitReader r(s);
    CHECK(r.get_bits(3) == 5);
    CHECK(get_framed(r) == inner);
    CHECK(r.take(inner.size()) == inner);
    CHECK(r.at_end());
}

TEST_CASE("bit_width") {
    CHECK(bit_width_of(0) == 1);
    CHECK(bit_width_of(1) == 1);
    CHECK(bit_width_of(5) == 3);
    CHECK(bit_width_of(8) == 4);
    CHECK(bit_width_of(UINT64_MAX) == 64);
}
