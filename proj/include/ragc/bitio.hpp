#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ragc {

/// Number of bits in the binary form of v; 1 for v == 0.
constexpr unsigned bit_width_of(std::uint64_t v) {
    unsigned w = 1;
    while (v >>= 1) ++w;
    return w;
}

/// Append-only bit sequence, packed MSB-first into bytes.
class BitWriter {
public:
    void put_bit(bool bit);
    /// Writes the low `width` bits of `value`, most significant first.
    void put_bits(std::uint64_t value, unsigned width);
    /// Elias gamma code; n must be >= 1.
    void put_gamma(std::uint64_t n);
    void append(const class BitStream& other);

    std::size_t size() const { return bits_; }
    class BitStream finish() &&;
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

/// A finished bit sequence: bytes plus exact bit length. Tail padding is zero.
class BitStream {
public:
    BitStream() = default;
    BitStream(std::vector<std::uint8_t> bytes, std::size_t bits);

    static BitStream from_string(const std::string& bits);

    std::size_t size() const { return bits_; }
    bool empty() const { return bits_ == 0; }
    bool bit(std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::string to_string() const;

    bool operator==(const BitStream&) const = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

/// Sequential reader over a bit range. Reading past the end throws CorruptError.
class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_length);
    explicit BitReader(const BitStream& s) : BitReader(s.bytes(), s.size()) {}

    bool get_bit();
    std::uint64_t get_bits(unsigned width);
    std::uint64_t get_gamma();
    /// Copies the next `count` bits out as a standalone stream.
    BitStream take(std::size_t count);
    void skip(std::size_t count) {
        require(count, "skipped range");
        pos_ += count;
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return end_ - pos_; }
    bool at_end() const { return pos_ == end_; }

private:
    void require(std::size_t count, const char* what) const;

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
};

BitStream gamma_encode(std::span<const std::uint64_t> values);
std::vector<std::uint64_t> gamma_decode(const BitStream& s, std::size_t count);

/// Packs every value into exactly `width` bits; values must be < 2^width.
BitStream fixed_width_encode(std::span<const std::uint64_t> values, unsigned width);
std::vector<std::uint64_t> fixed_width_decode(const BitStream& s, unsigned width, std::size_t count);

/// Maximal-run decomposition: symbols[i] repeated lengths[i] times.
struct RunLengths {
    std::vector<std::uint64_t> symbols;
    std::vector<std::uint64_t> lengths;
};

RunLengths rle_split(std::span<const std::uint64_t> values);
std::vector<std::uint64_t> rle_join(const RunLengths& runs);

/// Reads gamma(count + 1) and rejects counts whose items, at `min_bits` bits
/// each, could not fit in the rest of the stream.
std::uint64_t read_count(BitReader& in, std::size_t min_bits, const char* what);

/// Embeds a stream as gamma(bit length + 1) followed by its bits.
void put_framed(BitWriter& out, const BitStream& s);
BitStream get_framed(BitReader& in);

}  // namespace ragc
