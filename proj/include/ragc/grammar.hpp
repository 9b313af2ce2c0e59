#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ragc {

// Symbol ids: 0 is the run marker, 1..sigma are terminals, sigma+1.. are variables.
using Symbol = std::uint64_t;

inline constexpr Symbol kRunMarker = 0;

struct TerminalRule {
    std::uint8_t byte;
    bool operator==(const TerminalRule&) const = default;
};

struct SequenceRule {
    std::vector<Symbol> body;
    bool operator==(const SequenceRule&) const = default;
};

struct RunRule {
    Symbol base;
    std::uint64_t exponent;
    bool operator==(const RunRule&) const = default;
};

using Rule = std::variant<TerminalRule, SequenceRule, RunRule>;

/// Size contribution of one rule: 1 for terminals, body length for
/// sequences, 3 for runs.
std::uint64_t rule_size(const Rule& rule);

/// A (run-length) context-free grammar generating exactly one text.
///
/// `rules[i]` defines symbol `i + 1`. The first `sigma` rules are terminal
/// rules in ascending byte order; the remaining `d` rules define variables.
/// `tau` is the body of the start symbol `sigma + d + 1`.
struct Grammar {
    std::vector<Rule> rules;
    std::vector<Symbol> tau;

    std::size_t sigma() const;
    std::size_t variable_count() const { return rules.size() - sigma(); }
    std::vector<std::uint8_t> terminal_map() const;
    std::size_t run_rule_count() const;

    bool operator==(const Grammar&) const = default;
};

/// Builds the terminal rule block for an ascending list of bytes.
std::vector<Rule> terminal_rules(std::span<const std::uint8_t> bytes);

/// sigma + sum of variable rule sizes + |tau|.
std::uint64_t grammar_size(const Grammar& g);

struct GrammarStats {
    std::uint64_t sigma = 0;
    std::uint64_t d = 0;           // variables excluding terminals and the start symbol
    std::uint64_t rhs_total = 0;   // sum of variable rule sizes, runs counting 3
    std::uint64_t tau_length = 0;
    std::uint64_t run_rules = 0;
    std::uint64_t size = 0;
};

GrammarStats grammar_stats(const Grammar& g);

/// Returns every structural violation; empty means the grammar is valid.
std::vector<std::string> validate(const Grammar& g);

using ByteSink = std::function<void(std::span<const std::uint8_t>)>;

/// Streams the generated text into `sink` in chunks.
void expand(const Grammar& g, const ByteSink& sink);

std::vector<std::uint8_t> expand(const Grammar& g);

/// Length of the text generated by `g`, computed without expanding.
std::uint64_t expanded_length(const Grammar& g);

}  // namespace ragc
