#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ragc/bitio.hpp"
#include "ragc/grammar.hpp"

namespace ragc {

enum class TextStyle : std::uint8_t {
    PerRule,       // a_1..a_sigma # alpha_1 # ... # alpha_d # tau
    PairsCompact,  // a_1..a_sigma # all pair bodies back to back # tau
};

/// Flat integer rendering of a grammar with sections separated by a
/// delimiter. Run rules appear as the three symbols 0, k, base.
struct DelimitedText {
    std::vector<std::uint64_t> symbols;
    std::uint64_t delimiter = 0;
    TextStyle style = TextStyle::PerRule;
};

/// sigma + d + 2: one past the start symbol.
std::uint64_t delimiter_for(const Grammar& g);

/// PairsCompact requires every variable to be a length-2 sequence; throws
/// UsageError otherwise.
DelimitedText grammar_to_text(const Grammar& g, TextStyle style);

/// Inverse of grammar_to_text. `terminal_bytes` supplies the alphabet and `d`
/// the variable count. Throws CorruptError on a malformed layout.
Grammar text_to_grammar(std::span<const std::uint64_t> text, TextStyle style,
                        std::span<const std::uint8_t> terminal_bytes, std::uint64_t d);

// Symbol-level codes over a delimited text. Every stream starts with
// gamma(|text| + 1) so the decoders need nothing else.
BitStream encode_32bit(std::span<const std::uint64_t> text);
std::vector<std::uint64_t> decode_32bit(BitReader& in);

/// Width is bit_width of the largest symbol, stored as gamma(width).
BitStream encode_fble(std::span<const std::uint64_t> text);
std::vector<std::uint64_t> decode_fble(BitReader& in);

/// Canonical code lengths for a symbol histogram; a lone symbol gets length 1.
/// Returned as (symbol, length) sorted by symbol.
std::vector<std::pair<std::uint64_t, unsigned>> huffman_code_lengths(std::span<const std::uint64_t> text);

/// Table: gamma(k + 1) then (gamma(symbol + 1), gamma(length)) for the k
/// distinct symbols, followed by the canonical codewords.
BitStream encode_huffman(std::span<const std::uint64_t> text);
std::vector<std::uint64_t> decode_huffman(BitReader& in);

}  // namespace ragc
