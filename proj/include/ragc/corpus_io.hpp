#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "ragc/grammar.hpp"

namespace ragc {

/// Bijection between the bytes occurring in a text and terminal ids 1..sigma,
/// assigned in ascending byte order.
class AlphabetMap {
public:
    AlphabetMap() { symbol_of_.fill(0); }

    static AlphabetMap from_bytes(std::span<const std::uint8_t> ascending_bytes);

    std::size_t sigma() const { return byte_of_.size(); }
    const std::vector<std::uint8_t>& bytes() const { return byte_of_; }
    std::optional<Symbol> symbol_of(std::uint8_t b) const {
        return symbol_of_[b] ? std::optional<Symbol>(symbol_of_[b]) : std::nullopt;
    }
    std::uint8_t byte_of(Symbol s) const { return byte_of_[s - 1]; }

    bool operator==(const AlphabetMap&) const = default;

private:
    std::vector<std::uint8_t> byte_of_;
    std::array<std::uint16_t, 256> symbol_of_{};
};

struct IngestedText {
    std::vector<std::uint32_t> symbols;
    AlphabetMap alphabet;
};

IngestedText ingest_bytes(std::span<const std::uint8_t> data);

/// Inverse of ingest_bytes. Throws CorruptError on a symbol outside 1..sigma.
std::vector<std::uint8_t> render_bytes(const AlphabetMap& map, std::span<const std::uint32_t> symbols);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);

/// Reads a path, or standard input when path is "-".
std::vector<std::uint8_t> read_input(const std::string& path);
void write_output(const std::string& path, std::span<const std::uint8_t> data);

}  // namespace ragc
