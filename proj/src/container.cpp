#include "ragc/container.hpp"

#include <array>
#include <cstring>

#include "ragc/bitio.hpp"
#include "ragc/corpus_io.hpp"
#include "ragc/encode_naive.hpp"
#include "ragc/encode_pge.hpp"
#include "ragc/encode_poppt.hpp"
#include "ragc/error.hpp"

namespace ragc {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'R', 'A', 'G', 'C'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kFixedHeaderBytes = 8;

TextStyle style_for(Algorithm algo) { return algo == Algorithm::RePair ? TextStyle::PairsCompact : TextStyle::PerRule; }
TreeForm form_for(Algorithm algo) { return algo == Algorithm::RePair ? TreeForm::Binary : TreeForm::General; }

struct ParsedHeader {
    ContainerHeader header;
    std::size_t payload_bit = 0;
};

}  // namespace

std::string_view encoding_name(Encoding e) {
    switch (e) {
        case Encoding::N32bit: return "32bit";
        case Encoding::Fble: return "fble";
        case Encoding::Huffman: return "huffman";
        case Encoding::Pge: return "pge";
        case Encoding::PairPge: return "pairpge";
        case Encoding::PopptIble: return "poppt-ible";
        case Encoding::PopptPge: return "poppt-pge";
    }
    return "?";
}

bool uses_epsilon(Encoding e) {
    return e == Encoding::Pge || e == Encoding::PairPge || e == Encoding::PopptPge;
}

EncodingChoice parse_encoding(std::string_view name) {
    for (std::uint8_t i = 0; i <= 6; ++i) {
        auto e = static_cast<Encoding>(i);
        std::string_view base = encoding_name(e);
        if (name == base) return {e, std::nullopt};
        if (uses_epsilon(e) && name.size() > base.size() && name.substr(0, base.size()) == base) {
            auto suffix = name.substr(base.size());
            if (suffix == "6") return {e, 6};
            if (suffix == "8") return {e, 8};
        }
    }
    if (name == "n32bit") return {Encoding::N32bit, std::nullopt};
    throw UsageError("unknown encoding '" + std::string(name) +
                     "' (expected 32bit, fble, huffman, pge, pairpge, poppt-ible or poppt-pge)");
}

std::optional<std::string> incompatibility(Algorithm algo, Encoding enc) {
    if (enc == Encoding::PairPge && algo != Algorithm::RePair)
        return std::string("pairpge stores one max/delta per pair rule, so we applied it neither to MR-RePair "
                           "nor RL-MR-RePair; use --algo repair");
    return std::nullopt;
}

std::vector<std::uint8_t> encode_container(const Grammar& g, Algorithm algo, Encoding enc, std::uint8_t epsilon,
                                           std::uint64_t n) {
    if (auto why = incompatibility(algo, enc)) throw UsageError(*why);
    if (uses_epsilon(enc) && epsilon == 0) throw UsageError("epsilon must be between 1 and 255");
    if (!uses_epsilon(enc)) epsilon = 0;

    BitWriter w;
    for (auto b : kMagic) w.put_bits(b, 8);
    w.put_bits(kVersion, 8);
    w.put_bits(static_cast<std::uint8_t>(algo), 8);
    w.put_bits(static_cast<std::uint8_t>(enc), 8);
    w.put_bits(epsilon, 8);

    auto terminals = g.terminal_map();
    w.put_gamma(terminals.size() + 1);
    for (auto b : terminals) w.put_bits(b, 8);
    w.put_gamma(n + 1);
    w.put_gamma(g.variable_count() + 1);
    w.put_gamma(g.tau.size() + 1);

    if (n > 0) {
        switch (enc) {
            case Encoding::N32bit:
            case Encoding::Fble:
            case Encoding::Huffman:
            case Encoding::Pge: {
                auto dt = grammar_to_text(g, style_for(algo));
                if (enc == Encoding::N32bit) w.append(encode_32bit(dt.symbols));
                else if (enc == Encoding::Fble) w.append(encode_fble(dt.symbols));
                else if (enc == Encoding::Huffman) w.append(encode_huffman(dt.symbols));
                else put_framed(w, pge_encode(dt.symbols, epsilon));
                break;
            }
            case Encoding::PairPge: w.append(pair_pge_encode(g, epsilon)); break;
            case Encoding::PopptIble: w.append(poppt_encode(g, form_for(algo), LabelCode::Ible, 0)); break;
            case Encoding::PopptPge: w.append(poppt_encode(g, form_for(algo), LabelCode::Pge, epsilon)); break;
        }
    }
    auto s = std::move(w).finish();
    return s.bytes();
}

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data, Algorithm algo, Encoding enc,
                                   std::optional<std::uint8_t> epsilon) {
    if (auto why = incompatibility(algo, enc)) throw UsageError(*why);
    auto in = ingest_bytes(data);
    Grammar g = construct(algo, in.symbols, in.alphabet);
    return encode_container(g, algo, enc, epsilon.value_or(kDefaultEpsilon), data.size());
}

namespace {

ParsedHeader parse_header(BitReader& in, std::size_t file_bytes) {
    if (file_bytes < kFixedHeaderBytes) throw CorruptError("file shorter than the container header", 0);
    ParsedHeader p;
    for (auto b : kMagic)
        if (in.get_bits(8) != b) throw CorruptError("bad magic, not a RAGC container", 0);
    p.header.version = static_cast<std::uint8_t>(in.get_bits(8));
    if (p.header.version != kVersion)
        throw CorruptError("unsupported container version " + std::to_string(p.header.version), 32);
    auto algo = in.get_bits(8);
    if (algo > 2) throw CorruptError("unknown algorithm id " + std::to_string(algo), 40);
    p.header.algo = static_cast<Algorithm>(algo);
    auto enc = in.get_bits(8);
    if (enc > 6) throw CorruptError("unknown encoding id " + std::to_string(enc), 48);
    p.header.encoding = static_cast<Encoding>(enc);
    p.header.epsilon = static_cast<std::uint8_t>(in.get_bits(8));
    if (incompatibility(p.header.algo, p.header.encoding)) throw CorruptError("incompatible algorithm and encoding", 40);
    if (uses_epsilon(p.header.encoding) != (p.header.epsilon != 0)) throw CorruptError("epsilon field inconsistent", 56);

    auto at = in.position();
    auto sigma = read_count(in, 8, "terminal");
    if (sigma > 256) throw CorruptError("alphabet larger than 256", at);
    for (std::uint64_t i = 0; i < sigma; ++i) p.header.terminals.push_back(static_cast<std::uint8_t>(in.get_bits(8)));
    for (std::size_t i = 1; i < p.header.terminals.size(); ++i)
        if (p.header.terminals[i - 1] >= p.header.terminals[i]) throw CorruptError("terminal bytes not ascending", at);
    p.header.n = in.get_gamma() - 1;
    p.header.d = in.get_gamma() - 1;
    p.header.tau_length = in.get_gamma() - 1;
    p.payload_bit = in.position();
    return p;
}

}  // namespace

DecodedContainer decode_container(std::span<const std::uint8_t> file) {
    BitReader in(file, file.size() * 8);
    ParsedHeader p = parse_header(in, file.size());
    const auto& h = p.header;
    DecodedContainer out{h, {}};
    Grammar& g = out.grammar;

    if (h.n == 0) {
        if (!h.terminals.empty() || h.d != 0 || h.tau_length != 0) throw CorruptError("empty text with a grammar", p.payload_bit);
        g.rules = terminal_rules(h.terminals);
    } else {
        const TextStyle style = style_for(h.algo);
        switch (h.encoding) {
            case Encoding::N32bit: g = text_to_grammar(decode_32bit(in), style, h.terminals, h.d); break;
            case Encoding::Fble: g = text_to_grammar(decode_fble(in), style, h.terminals, h.d); break;
            case Encoding::Huffman: g = text_to_grammar(decode_huffman(in), style, h.terminals, h.d); break;
            case Encoding::Pge: g = text_to_grammar(pge_decode(get_framed(in)), style, h.terminals, h.d); break;
            case Encoding::PairPge: g = pair_pge_decode(in, h.terminals); break;
            case Encoding::PopptIble:
                g = poppt_decode(in, h.terminals, form_for(h.algo), LabelCode::Ible, h.tau_length);
                break;
            case Encoding::PopptPge:
                g = poppt_decode(in, h.terminals, form_for(h.algo), LabelCode::Pge, h.tau_length);
                break;
        }
    }
    if (in.remaining() >= 8) throw CorruptError("trailing bytes after payload", in.position());
    while (!in.at_end())
        if (in.get_bit()) throw CorruptError("nonzero padding", in.position() - 1);

    if (g.variable_count() != h.d) throw CorruptError("rule count disagrees with the header");
    if (g.tau.size() != h.tau_length) throw CorruptError("start rule length disagrees with the header");
    if (auto v = validate(g); !v.empty()) throw CorruptError("invalid grammar: " + v.front());
    if (expanded_length(g) != h.n) throw CorruptError("grammar expands to a length other than the header's");
    return out;
}

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> file) {
    auto dc = decode_container(file);
    std::vector<std::uint8_t> out;
    out.reserve(dc.header.n);
    expand(dc.grammar, [&](std::span<const std::uint8_t> chunk) { out.insert(out.end(), chunk.begin(), chunk.end()); });
    if (out.size() != dc.header.n) throw CorruptError("decoded length mismatch");
    return out;
}

StatsReport stats(std::span<const std::uint8_t> file) {
    auto dc = decode_container(file);
    StatsReport r{dc.header.algo, dc.header.encoding, dc.header.epsilon, grammar_stats(dc.grammar)};
    r.n = dc.header.n;
    r.file_bytes = file.size();
    r.file_bits = file.size() * 8;
    r.ratio_percent = r.n == 0 ? 0.0 : 100.0 * static_cast<double>(file.size()) / static_cast<double>(r.n);
    return r;
}

}  // namespace ragc
