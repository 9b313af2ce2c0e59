#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ragc/bitio.hpp"
#include "ragc/grammar.hpp"

namespace ragc {

/// The block decomposition behind packed gamma encoding.
///
/// The text is cut into q = ceil(|t| / epsilon) blocks (the last may be short)
/// and block i is stored at width D[i] = bit_width(max of block i). The widths
/// are delta coded: D_delta[i] = |D[i] - D[i-1]| + 1 with D[0] taken as 0 and
/// signs in D_pms (1 for non-decreasing). D_delta is run-length split into
/// S1/L1, and L1 again into S2/L2.
struct PgeBlocks {
    std::uint64_t epsilon = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> D;
    std::vector<std::uint64_t> D_delta;
    std::vector<bool> D_pms;
    std::vector<std::uint64_t> S1, L1, S2, L2;
};

PgeBlocks pge_blocks(std::span<const std::uint64_t> t, std::uint64_t epsilon);

/// gamma(|t|+1), gamma(epsilon+1), gamma(|S1|+1), gamma(|S2|+1), then
/// gamma(S1), gamma(S2), gamma(L2), the packed symbols and finally the q bits
/// of D_pms.
BitStream pge_encode(std::span<const std::uint64_t> t, std::uint64_t epsilon);

/// Decodes a whole stream; D_pms is read from its last q bits, so the exact
/// stream length matters. Embed with put_framed.
std::vector<std::uint64_t> pge_decode(const BitStream& s);

/// Per-rule max / delta / side bit of a pair grammar.
struct PairSplit {
    std::vector<std::uint64_t> X;
    std::vector<std::uint64_t> X_delta;
    std::vector<bool> X_pms;
};

/// Throws UsageError unless every variable is a length-2 sequence.
PairSplit split_pairs(const Grammar& g);

/// framed pge(X), gamma(X_delta + 1) per rule, X_pms bits, framed pge(tau).
BitStream pair_pge_encode(const Grammar& g, std::uint64_t epsilon);
Grammar pair_pge_decode(BitReader& in, std::span<const std::uint8_t> terminal_bytes);

}  // namespace ragc
