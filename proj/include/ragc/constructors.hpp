#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <utility>

#include "ragc/corpus_io.hpp"
#include "ragc/grammar.hpp"

namespace ragc {

enum class Algorithm : std::uint8_t { RePair = 0, MrRePair = 1, RlMrRePair = 2 };

std::string_view algorithm_name(Algorithm a);
/// Accepts "repair", "mr" / "mr-repair", "rlmr" / "rl-mr-repair".
Algorithm parse_algorithm(std::string_view name);

/// (base symbol, exponent) -> variable, so each distinct run gets one rule.
using RunDedupTable = std::map<std::pair<Symbol, std::uint64_t>, Symbol>;

/// Repeatedly replaces the most frequent pair until no pair occurs twice.
Grammar construct_repair(std::span<const std::uint32_t> text, const AlphabetMap& alphabet);

/// Replaces the most frequent maximal repeat, trimmed once when its first and
/// last symbols agree.
Grammar construct_mr_repair(std::span<const std::uint32_t> text, const AlphabetMap& alphabet);

/// MR-RePair, except that when the selected repeat is xx every run x^k (k >= 2)
/// becomes a run-length rule, shared between equal runs.
Grammar construct_rl_mr_repair(std::span<const std::uint32_t> text, const AlphabetMap& alphabet);

Grammar construct(Algorithm algo, std::span<const std::uint32_t> text, const AlphabetMap& alphabet);
Grammar construct(Algorithm algo, std::span<const std::uint8_t> data);

}  // namespace ragc
