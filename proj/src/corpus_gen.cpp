#include "ragc/corpus_gen.hpp"

#include <random>

namespace ragc {

std::vector<std::uint8_t> repetitive_corpus(std::size_t block, std::size_t copies, double mutation,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> base(block);
    for (auto& c : base) c = static_cast<std::uint8_t>(rng());
    std::vector<std::uint8_t> out;
    out.reserve(block * copies);
    std::uniform_real_distribution<> coin(0, 1);
    for (std::size_t i = 0; i < copies; ++i) {
        auto copy = base;
        for (auto& x : copy)
            if (coin(rng) < mutation) x = static_cast<std::uint8_t>(rng());
        out.insert(out.end(), copy.begin(), copy.end());
    }
    return out;
}

}  // namespace ragc
