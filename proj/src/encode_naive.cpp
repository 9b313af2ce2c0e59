#include "ragc/encode_naive.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

#include "ragc/error.hpp"

namespace ragc {

std::uint64_t delimiter_for(const Grammar& g) { return g.rules.size() + 2; }

DelimitedText grammar_to_text(const Grammar& g, TextStyle style) {
    const std::size_t sigma = g.sigma();
    DelimitedText dt;
    dt.delimiter = delimiter_for(g);
    dt.style = style;
    auto& out = dt.symbols;
    out.reserve(grammar_size(g) + g.variable_count() + 1);
    for (std::size_t i = 1; i <= sigma; ++i) out.push_back(i);
    out.push_back(dt.delimiter);

    for (std::size_t i = sigma; i < g.rules.size(); ++i) {
        const Rule& r = g.rules[i];
        if (style == TextStyle::PairsCompact) {
            const auto* seq = std::get_if<SequenceRule>(&r);
            if (!seq || seq->body.size() != 2)
                throw UsageError("pairs-compact layout needs every rule to be a pair (RePair output)");
            out.insert(out.end(), seq->body.begin(), seq->body.end());
            continue;
        }
        if (const auto* seq = std::get_if<SequenceRule>(&r)) {
            out.insert(out.end(), seq->body.begin(), seq->body.end());
        } else if (const auto* run = std::get_if<RunRule>(&r)) {
            out.insert(out.end(), {kRunMarker, run->exponent, run->base});
        } else {
            throw UsageError("terminal rule outside the terminal block");
        }
        out.push_back(dt.delimiter);
    }
    if (style == TextStyle::PairsCompact) out.push_back(dt.delimiter);
    out.insert(out.end(), g.tau.begin(), g.tau.end());
    return dt;
}

Grammar text_to_grammar(std::span<const std::uint64_t> text, TextStyle style,
                        std::span<const std::uint8_t> terminal_bytes, std::uint64_t d) {
    const std::uint64_t sigma = terminal_bytes.size();
    const std::uint64_t delim = sigma + d + 2;
    Grammar g;
    g.rules = terminal_rules(terminal_bytes);
    std::size_t pos = 0;
    auto expect_delim = [&] {
        if (pos >= text.size() || text[pos] != delim) throw CorruptError("delimiter expected at symbol " + std::to_string(pos));
        ++pos;
    };

    for (std::uint64_t i = 1; i <= sigma; ++i, ++pos)
        if (pos >= text.size() || text[pos] != i) throw CorruptError("bad terminal section");
    expect_delim();

    if (style == TextStyle::PairsCompact) {
        if (d > (text.size() - pos) / 2) throw CorruptError("pair section shorter than the rule count");
        for (std::uint64_t i = 0; i < d; ++i, pos += 2) g.rules.push_back(SequenceRule{{text[pos], text[pos + 1]}});
        expect_delim();
    } else {
        for (std::uint64_t i = 0; i < d; ++i) {
            if (pos >= text.size()) throw CorruptError("rule section truncated");
            if (text[pos] == kRunMarker) {
                if (text.size() - pos < 3) throw CorruptError("run rule truncated");
                g.rules.push_back(RunRule{text[pos + 2], text[pos + 1]});
                pos += 3;
            } else {
                SequenceRule seq;
                while (pos < text.size() && text[pos] != delim) seq.body.push_back(text[pos++]);
                g.rules.push_back(std::move(seq));
            }
            expect_delim();
        }
    }
    g.tau.assign(text.begin() + static_cast<std::ptrdiff_t>(pos), text.end());
    return g;
}

BitStream encode_32bit(std::span<const std::uint64_t> text) {
    BitWriter w;
    w.put_gamma(text.size() + 1);
    for (auto v : text) w.put_bits(v, 32);
    return std::move(w).finish();
}

std::vector<std::uint64_t> decode_32bit(BitReader& in) {
    auto n = read_count(in, 32, "32-bit symbol");
    std::vector<std::uint64_t> out(n);
    for (auto& v : out) v = in.get_bits(32);
    return out;
}

BitStream encode_fble(std::span<const std::uint64_t> text) {
    std::uint64_t mx = 0;
    for (auto v : text) mx = std::max(mx, v);
    const unsigned width = bit_width_of(mx);
    BitWriter w;
    w.put_gamma(text.size() + 1);
    w.put_gamma(width);
    for (auto v : text) w.put_bits(v, width);
    return std::move(w).finish();
}

std::vector<std::uint64_t> decode_fble(BitReader& in) {
    auto n = read_count(in, 1, "fble symbol");
    auto at = in.position();
    auto width = in.get_gamma();
    if (width > 64) throw CorruptError("fble width above 64", at);
    if (n > in.remaining() / width) throw CorruptError("fble payload truncated", at);
    std::vector<std::uint64_t> out(n);
    for (auto& v : out) v = in.get_bits(static_cast<unsigned>(width));
    return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> huffman_code_lengths(std::span<const std::uint64_t> text) {
    std::map<std::uint64_t, std::uint64_t> freq;
    for (auto v : text) ++freq[v];
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    if (freq.empty()) return out;
    if (freq.size() == 1) return {{freq.begin()->first, 1}};

    // Tree nodes: leaves first, merged nodes appended; ties resolved by node index.
    std::vector<std::uint32_t> parent(freq.size() * 2 - 1, 0);
    using Item = std::pair<std::uint64_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::uint32_t id = 0;
    for (auto& [sym, f] : freq) heap.push({f, id++});
    while (heap.size() > 1) {
        auto [fa, a] = heap.top();
        heap.pop();
        auto [fb, b] = heap.top();
        heap.pop();
        parent[a] = parent[b] = id;
        heap.push({fa + fb, id++});
    }
    const std::uint32_t root = id - 1;
    std::vector<unsigned> depth(parent.size(), 0);
    for (std::uint32_t i = root; i-- > 0;) depth[i] = depth[parent[i]] + 1;

    id = 0;
    for (auto& [sym, f] : freq) {
        if (depth[id] > 64) throw DomainError("huffman code longer than 64 bits");
        out.emplace_back(sym, depth[id++]);
    }
    return out;
}

namespace {

struct CanonicalCode {
    // Symbols ordered by (length, symbol); codes assigned consecutively.
    std::vector<std::pair<unsigned, std::uint64_t>> order;

    explicit CanonicalCode(std::vector<std::pair<std::uint64_t, unsigned>> lengths) {
        for (auto& [sym, len] : lengths) order.emplace_back(len, sym);
        std::sort(order.begin(), order.end());
    }
};

}  // namespace

BitStream encode_huffman(std::span<const std::uint64_t> text) {
    auto lengths = huffman_code_lengths(text);
    BitWriter w;
    w.put_gamma(text.size() + 1);
    w.put_gamma(lengths.size() + 1);
    for (auto& [sym, len] : lengths) {
        w.put_gamma(sym + 1);
        w.put_gamma(len);
    }

    CanonicalCode canon(std::move(lengths));
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, unsigned>> book;
    std::uint64_t code = 0;
    unsigned prev_len = 0;
    for (auto& [len, sym] : canon.order) {
        if (prev_len != 0) code = (code + 1) << (len - prev_len);
        prev_len = len;
        book[sym] = {code, len};
    }
    for (auto v : text) {
        auto [c, len] = book.at(v);
        w.put_bits(c, len);
    }
    return std::move(w).finish();
}

std::vector<std::uint64_t> decode_huffman(BitReader& in) {
    auto n = read_count(in, 1, "huffman symbol");
    auto k = read_count(in, 2, "huffman table entry");
    if (n > 0 && k == 0) throw CorruptError("huffman table empty", in.position());
    std::vector<std::pair<std::uint64_t, unsigned>> lengths;
    lengths.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        auto at = in.position();
        auto sym = in.get_gamma() - 1;
        auto len = in.get_gamma();
        if (len > 64) throw CorruptError("huffman code length above 64", at);
        lengths.emplace_back(sym, static_cast<unsigned>(len));
    }
    CanonicalCode canon(std::move(lengths));

    // first[len] is the first code of that length, index[len] its slot in order.
    std::vector<std::uint64_t> first(66, 0), count(66, 0), index(66, 0);
    for (auto& [len, sym] : canon.order) ++count[len];
    std::uint64_t code = 0;
    std::size_t slot = 0;
    unsigned prev_len = 0;
    for (unsigned len = 1; len <= 64; ++len) {
        if (count[len] == 0) continue;
        code = prev_len == 0 ? 0 : (code << (len - prev_len));
        first[len] = code;
        index[len] = slot;
        code += count[len];
        slot += count[len];
        prev_len = len;
    }
    const unsigned max_len = canon.order.empty() ? 0 : canon.order.back().first;

    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        auto at = in.position();
        std::uint64_t c = 0;
        unsigned len = 0;
        while (true) {
            if (++len > max_len) throw CorruptError("invalid huffman codeword", at);
            c = (c << 1) | static_cast<std::uint64_t>(in.get_bit());
            if (count[len] && c >= first[len] && c - first[len] < count[len]) {
                out.push_back(canon.order[index[len] + (c - first[len])].second);
                break;
            }
        }
    }
    return out;
}

}  // namespace ragc
