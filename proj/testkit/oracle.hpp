#pragma once

// Brute-force reference implementations for tests. Nothing here shares code
// with the engine, codecs or constructors; only the grammar data types.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ragc/grammar.hpp"
#include "ragc/replace_engine.hpp"

namespace ragc::oracle {

using Text = std::vector<std::uint32_t>;
using PairMap = std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>;

/// Greedy left-to-right non-overlapping count of every adjacent pair.
PairMap naive_pair_counts(const Text& t);

/// Start positions of the greedy non-overlapping occurrences of `u` in `t`.
std::vector<std::size_t> greedy_occurrences(const Text& t, const Text& u);

struct RepeatEntry {
    Text substring;
    std::size_t frequency = 0;
    bool left_maximal = false;
    bool right_maximal = false;
    bool maximal_repeat = false;
};

/// Every substring of length >= 2 occurring at least twice. Refuses texts
/// longer than 256 symbols.
std::vector<RepeatEntry> enumerate_maximal_repeats(const Text& t);

struct CheckResult {
    bool ok = true;
    std::string detail;
};

/// Engine repeat selection frequency versus the oracle's largest maximal
/// repeat frequency.
CheckResult cross_check_selection(const Text& t);

/// Engine counts versus naive counts of `live`.
CheckResult compare_counts(const std::vector<PairCount>& engine, const Text& live);
CheckResult scratch_rebuild_equals(const ReplaceSession& session);

/// Recursive expansion straight from the rule table.
std::vector<std::uint8_t> naive_expand(const Grammar& g);

/// Reference constructors: recount everything after every replacement.
Grammar naive_repair(const std::vector<std::uint8_t>& data);
Grammar naive_mr_repair(const std::vector<std::uint8_t>& data);
Grammar naive_rl_mr_repair(const std::vector<std::uint8_t>& data);

/// F_1 = "a", F_2 = "ab", F_k = F_{k-1} F_{k-2}.
std::string fibonacci_word(unsigned k);

}  // namespace ragc::oracle
