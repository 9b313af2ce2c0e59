#include "ragc/corpus_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>

#include "ragc/error.hpp"

namespace ragc {

AlphabetMap AlphabetMap::from_bytes(std::span<const std::uint8_t> ascending_bytes) {
    AlphabetMap m;
    int last = -1;
    for (auto b : ascending_bytes) {
        if (static_cast<int>(b) <= last) throw CorruptError("alphabet bytes not strictly ascending");
        last = b;
        m.byte_of_.push_back(b);
        m.symbol_of_[b] = static_cast<std::uint16_t>(m.byte_of_.size());
    }
    return m;
}

IngestedText ingest_bytes(std::span<const std::uint8_t> data) {
    std::array<bool, 256> present{};
    for (auto b : data) present[b] = true;
    std::vector<std::uint8_t> bytes;
    for (int b = 0; b < 256; ++b)
        if (present[b]) bytes.push_back(static_cast<std::uint8_t>(b));

    IngestedText out{{}, AlphabetMap::from_bytes(bytes)};
    out.symbols.reserve(data.size());
    for (auto b : data) out.symbols.push_back(static_cast<std::uint32_t>(*out.alphabet.symbol_of(b)));
    return out;
}

std::vector<std::uint8_t> render_bytes(const AlphabetMap& map, std::span<const std::uint32_t> symbols) {
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        auto s = symbols[i];
        if (s < 1 || s > map.sigma())
            throw CorruptError("symbol " + std::to_string(s) + " at index " + std::to_string(i) +
                               " outside alphabet of size " + std::to_string(map.sigma()));
        out.push_back(map.byte_of(s));
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::uint8_t> read_input(const std::string& path) {
    if (path != "-") return read_file(path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return data;
}

void write_output(const std::string& path, std::span<const std::uint8_t> data) {
    if (path != "-") return write_file(path, data);
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    if (!std::cout) throw IoError("write to standard output failed");
}

}  // namespace ragc
