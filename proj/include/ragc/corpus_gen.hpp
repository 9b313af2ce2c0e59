#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ragc {

/// `copies` concatenated copies of one random block of `block` bytes; every
/// byte of every copy is independently redrawn with probability `mutation`.
std::vector<std::uint8_t> repetitive_corpus(std::size_t block, std::size_t copies, double mutation,
                                            std::uint64_t seed);

}  // namespace ragc
