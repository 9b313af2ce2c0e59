#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ragc/bitio.hpp"
#include "ragc/grammar.hpp"

namespace ragc {

enum class TreeForm : std::uint8_t {
    Binary,   // pair grammars: 0 per leaf, 1 per internal node
    General,  // any grammar: c zeros and a 1 per node, plus a final 0
};

/// Post-order partial parse tree of a grammar.
///
/// The tree is the parse tree pruned below every repeated variable. Internal
/// nodes are numbered 1.. in post-order; a leaf carries a terminal id 1..sigma,
/// sigma + p for an earlier internal node p, or 0 for a run marker. Run nodes
/// have the children (marker, base) and keep their exponents in a side list.
/// In the binary form a tau longer than one symbol is first folded into a
/// left-leaning chain of pairs.
struct Poppt {
    BitStream B;
    std::vector<std::uint64_t> U;
    std::vector<std::uint64_t> run_exponents;
    std::uint64_t internal_count = 0;
};

Poppt build_poppt(const Grammar& g, TreeForm form);

/// True when U[i] <= i + sigma for every 1-based position i.
bool u_bound_holds(std::span<const std::uint64_t> U, std::uint64_t sigma);

/// Rebuilds a grammar whose variables are numbered in post-order.
/// `tau_length` is needed to unwind the binary-form chain.
Grammar decode_poppt(const BitStream& B, std::span<const std::uint64_t> U,
                     std::span<const std::uint64_t> run_exponents,
                     std::span<const std::uint8_t> terminal_bytes, TreeForm form, std::uint64_t tau_length);

/// Position i (1-based) written in bit_width(i + sigma) bits.
BitStream encode_u_ible(std::span<const std::uint64_t> U, std::uint64_t sigma);
std::vector<std::uint64_t> decode_u_ible(BitReader& in, std::uint64_t count, std::uint64_t sigma);

enum class LabelCode : std::uint8_t { Ible, Pge };

/// gamma(|B|+1), gamma(|U|+1), gamma(runs+1), B, U (IBLE, or framed PGE),
/// then gamma(exponent) per run node.
BitStream poppt_encode(const Grammar& g, TreeForm form, LabelCode code, std::uint64_t epsilon);
Grammar poppt_decode(BitReader& in, std::span<const std::uint8_t> terminal_bytes, TreeForm form,
                     LabelCode code, std::uint64_t tau_length);

}  // namespace ragc
