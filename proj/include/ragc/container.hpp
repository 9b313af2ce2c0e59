#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ragc/constructors.hpp"
#include "ragc/grammar.hpp"

namespace ragc {

enum class Encoding : std::uint8_t {
    N32bit = 0,
    Fble = 1,
    Huffman = 2,
    Pge = 3,  // PGE over the delimited text
    PairPge = 4,
    PopptIble = 5,
    PopptPge = 6,
};

inline constexpr std::uint8_t kDefaultEpsilon = 8;

std::string_view encoding_name(Encoding e);

struct EncodingChoice {
    Encoding encoding;
    std::optional<std::uint8_t> epsilon;  // set by suffixed names such as "pge6"
};

/// Accepts the encoding names plus "pge6", "pge8", "pairpge6", "poppt-pge8", ...
EncodingChoice parse_encoding(std::string_view name);

bool uses_epsilon(Encoding e);

/// Empty when the pair is usable, otherwise the reason it is not.
std::optional<std::string> incompatibility(Algorithm algo, Encoding enc);

struct ContainerHeader {
    std::uint8_t version = 1;
    Algorithm algo = Algorithm::RePair;
    Encoding encoding = Encoding::Fble;
    std::uint8_t epsilon = 0;
    std::vector<std::uint8_t> terminals;
    std::uint64_t n = 0;
    std::uint64_t d = 0;
    std::uint64_t tau_length = 0;
};

/// Encodes an already constructed grammar of a text of length n.
std::vector<std::uint8_t> encode_container(const Grammar& g, Algorithm algo, Encoding enc, std::uint8_t epsilon,
                                           std::uint64_t n);

/// ingest, construct, encode. epsilon defaults to 8 for PGE-based encodings.
std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data, Algorithm algo, Encoding enc,
                                   std::optional<std::uint8_t> epsilon = std::nullopt);

struct DecodedContainer {
    ContainerHeader header;
    Grammar grammar;
};

/// Parses header and payload and validates the grammar, without expanding.
DecodedContainer decode_container(std::span<const std::uint8_t> file);

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> file);

struct StatsReport {
    Algorithm algo;
    Encoding encoding;
    std::uint8_t epsilon;
    GrammarStats grammar;
    std::uint64_t n = 0;
    std::uint64_t file_bytes = 0;
    std::uint64_t file_bits = 0;
    double ratio_percent = 0;  // compressed file size / input size * 100
};

StatsReport stats(std::span<const std::uint8_t> file);

}  // namespace ragc
