#include "doctest.h"

#include <filesystem>
#include <random>

#include "ragc/corpus_io.hpp"
#include "ragc/error.hpp"

using namespace ragc;

namespace {
std::vector<std::uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }
}  // namespace

TEST_CASE("ingest assigns terminals in ascending byte order") {
    auto in = ingest_bytes(bytes("aba"));
    CHECK(in.symbols == std::vector<std::uint32_t>{1, 2, 1});
    CHECK(in.alphabet.bytes() == bytes("ab"));

    auto cab = ingest_bytes(bytes("cab"));
    CHECK(cab.symbols == std::vector<std::uint32_t>{3, 1, 2});
    CHECK(cab.alphabet.symbol_of('a') == 1);
    CHECK(cab.alphabet.symbol_of('c') == 3);
    CHECK_FALSE(cab.alphabet.symbol_of('z').has_value());

    auto empty = ingest_bytes({});
    CHECK(empty.symbols.empty());
    CHECK(empty.alphabet.sigma() == 0);
}

TEST_CASE("render_bytes inverts ingest and rejects out-of-range symbols") {
    auto map = AlphabetMap::from_bytes(bytes("ab"));
    std::vector<std::uint32_t> aba{1, 2, 1};
    CHECK(render_bytes(map, aba) == bytes("aba"));
    CHECK(render_bytes(AlphabetMap{}, {}).empty());
    std::vector<std::uint32_t> bad{1, 5};
    CHECK_THROWS_AS(render_bytes(AlphabetMap::from_bytes(bytes("a")), bad), CorruptError);
    std::vector<std::uint32_t> zero{0};
    CHECK_THROWS_AS(render_bytes(map, zero), CorruptError);
}

TEST_CASE("alphabet must be strictly ascending") {
    CHECK_THROWS_AS(AlphabetMap::from_bytes(bytes("ba")), CorruptError);
    CHECK_THROWS_AS(AlphabetMap::from_bytes(bytes("aa")), CorruptError);
}

TEST_CASE("property: render(ingest(d)) == d on random bytes") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        std::vector<std::uint8_t> d(rng() % 3000);
        unsigned sigma = 1 + rng() % 256;
        for (auto& b : d) b = static_cast<std::uint8_t>(rng() % sigma);
        auto in = ingest_bytes(d);
        REQUIRE(in.symbols.size() == d.size());
        CHECK(render_bytes(in.alphabet, in.symbols) == d);
    }
}

TEST_CASE("file round trip and missing file") {
    auto path = std::filesystem::temp_directory_path() / "ragc_corpus_io_test.bin";
    auto d = bytes(std::string_view("hello\0world", 11));
    write_file(path, d);
    CHECK(read_file(path) == d);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_file(path), IoError);
}
