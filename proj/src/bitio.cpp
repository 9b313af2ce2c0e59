#include "ragc/bitio.hpp"

#include "ragc/error.hpp"

namespace ragc {

void BitWriter::put_bit(bool bit) {
    if ((bits_ & 7) == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ & 7));
    ++bits_;
}

void BitWriter::put_bits(std::uint64_t value, unsigned width) {
    if (width > 64) throw DomainError("bit field wider than 64");
    if (width < 64 && (value >> width) != 0)
        throw DomainError("value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
    while (width > 0) {
        unsigned used = bits_ & 7;
        if (used == 0) bytes_.push_back(0);
        unsigned room = 8 - used;
        unsigned take = width < room ? width : room;
        auto chunk = static_cast<std::uint8_t>((value >> (width - take)) & ((1u << take) - 1));
        bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
        bits_ += take;
        width -= take;
    }
}

void BitWriter::put_gamma(std::uint64_t n) {
    if (n == 0) throw DomainError("gamma code undefined for 0");
    unsigned w = bit_width_of(n);
    put_bits(0, w - 1);
    put_bits(n, w);
}

void BitWriter::append(const BitStream& other) {
    const auto& src = other.bytes();
    std::size_t full = other.size() / 8;
    if ((bits_ & 7) == 0) {
        bytes_.insert(bytes_.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(full));
        bits_ += full * 8;
    } else {
        for (std::size_t i = 0; i < full; ++i) put_bits(src[i], 8);
    }
    for (std::size_t i = full * 8; i < other.size(); ++i) put_bit(other.bit(i));
}

BitStream BitWriter::finish() && { return BitStream(std::move(bytes_), bits_); }

BitStream::BitStream(std::vector<std::uint8_t> bytes, std::size_t bits) : bytes_(std::move(bytes)), bits_(bits) {
    if (bytes_.size() * 8 < bits_) throw InternalError("bit stream shorter than its declared length");
    bytes_.resize((bits_ + 7) / 8);
}

BitStream BitStream::from_string(const std::string& bits) {
    BitWriter w;
    for (char c : bits) {
        if (c == '0' || c == '1') w.put_bit(c == '1');
        else if (c != ' ') throw DomainError("bit string may contain only 0, 1 and spaces");
    }
    return std::move(w).finish();
}

std::string BitStream::to_string() const {
    std::string s;
    s.reserve(bits_);
    for (std::size_t i = 0; i < bits_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_length)
    : bytes_(bytes), end_(bit_length) {
    if (bytes.size() * 8 < bit_length) throw InternalError("reader range exceeds buffer");
}

void BitReader::require(std::size_t count, const char* what) const {
    if (count > end_ - pos_) throw CorruptError(std::string("stream exhausted reading ") + what, pos_);
}

bool BitReader::get_bit() {
    require(1, "bit");
    bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
    ++pos_;
    return b;
}

std::uint64_t BitReader::get_bits(unsigned width) {
    if (width > 64) throw CorruptError("bit field wider than 64", pos_);
    require(width, "fixed-width field");
    std::uint64_t v = 0;
    while (width > 0) {
        unsigned used = pos_ & 7;
        unsigned room = 8 - used;
        unsigned take = width < room ? width : room;
        unsigned chunk = (bytes_[pos_ >> 3] >> (room - take)) & ((1u << take) - 1);
        v = (take == 64 ? 0 : v << take) | chunk;
        pos_ += take;
        width -= take;
    }
    return v;
}

std::uint64_t BitReader::get_gamma() {
    std::size_t start = pos_;
    unsigned zeros = 0;
    while (true) {
        if (pos_ == end_) throw CorruptError("stream exhausted inside gamma code", start);
        if (get_bit()) break;
        if (++zeros > 63) throw CorruptError("gamma code longer than 64 bits", start);
    }
    require(zeros, "gamma code");
    return (std::uint64_t{1} << zeros) | get_bits(zeros);
}

BitStream BitReader::take(std::size_t count) {
    require(count, "embedded stream");
    BitWriter w;
    std::size_t i = 0;
    for (; i + 64 <= count; i += 64) w.put_bits(get_bits(64), 64);
    if (i < count) w.put_bits(get_bits(static_cast<unsigned>(count - i)), static_cast<unsigned>(count - i));
    return std::move(w).finish();
}

BitStream gamma_encode(std::span<const std::uint64_t> values) {
    BitWriter w;
    for (auto v : values) w.put_gamma(v);
    return std::move(w).finish();
}

std::vector<std::uint64_t> gamma_decode(const BitStream& s, std::size_t count) {
    BitReader r(s);
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(r.get_gamma());
    return out;
}

BitStream fixed_width_encode(std::span<const std::uint64_t> values, unsigned width) {
    BitWriter w;
    for (auto v : values) w.put_bits(v, width);
    return std::move(w).finish();
}

std::vector<std::uint64_t> fixed_width_decode(const BitStream& s, unsigned width, std::size_t count) {
    BitReader r(s);
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(r.get_bits(width));
    return out;
}

RunLengths rle_split(std::span<const std::uint64_t> values) {
    RunLengths out;
    for (auto v : values) {
        if (!out.symbols.empty() && out.symbols.back() == v) {
            ++out.lengths.back();
        } else {
            out.symbols.push_back(v);
            out.lengths.push_back(1);
        }
    }
    return out;
}

std::vector<std::uint64_t> rle_join(const RunLengths& runs) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < runs.symbols.size(); ++i) out.insert(out.end(), runs.lengths[i], runs.symbols[i]);
    return out;
}

std::uint64_t read_count(BitReader& in, std::size_t min_bits, const char* what) {
    std::size_t at = in.position();
    std::uint64_t count = in.get_gamma() - 1;
    if (min_bits > 0 && count > in.remaining() / min_bits)
        throw CorruptError(std::string(what) + " count " + std::to_string(count) + " exceeds the stream", at);
    return count;
}

void put_framed(BitWriter& out, const BitStream& s) {
    out.put_gamma(s.size() + 1);
    out.append(s);
}

BitStream get_framed(BitReader& in) {
    std::uint64_t bits = read_count(in, 1, "embedded stream");
    return in.take(bits);
}

}  // namespace ragc
