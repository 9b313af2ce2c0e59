#include "ragc/encode_pge.hpp"

#include <algorithm>

#include "ragc/error.hpp"

namespace ragc {

PgeBlocks pge_blocks(std::span<const std::uint64_t> t, std::uint64_t epsilon) {
    if (epsilon == 0) throw DomainError("pge block size must be at least 1");
    PgeBlocks b;
    b.epsilon = epsilon;
    b.q = (t.size() + epsilon - 1) / epsilon;
    b.D.reserve(b.q);
    for (std::size_t i = 0; i < t.size(); i += epsilon) {
        auto end = std::min<std::size_t>(t.size(), i + epsilon);
        std::uint64_t mx = *std::max_element(t.begin() + static_cast<std::ptrdiff_t>(i),
                                             t.begin() + static_cast<std::ptrdiff_t>(end));
        b.D.push_back(bit_width_of(mx));
    }
    std::uint64_t prev = 0;
    for (auto w : b.D) {
        b.D_delta.push_back((w >= prev ? w - prev : prev - w) + 1);
        b.D_pms.push_back(w >= prev);
        prev = w;
    }
    auto r1 = rle_split(b.D_delta);
    b.S1 = std::move(r1.symbols);
    b.L1 = std::move(r1.lengths);
    auto r2 = rle_split(b.L1);
    b.S2 = std::move(r2.symbols);
    b.L2 = std::move(r2.lengths);
    return b;
}

BitStream pge_encode(std::span<const std::uint64_t> t, std::uint64_t epsilon) {
    PgeBlocks b = pge_blocks(t, epsilon);
    BitWriter w;
    w.put_gamma(t.size() + 1);
    w.put_gamma(epsilon + 1);
    w.put_gamma(b.S1.size() + 1);
    w.put_gamma(b.S2.size() + 1);
    for (auto v : b.S1) w.put_gamma(v);
    for (auto v : b.S2) w.put_gamma(v);
    for (auto v : b.L2) w.put_gamma(v);
    for (std::size_t i = 0; i < t.size(); ++i) w.put_bits(t[i], static_cast<unsigned>(b.D[i / epsilon]));
    for (bool bit : b.D_pms) w.put_bit(bit);
    return std::move(w).finish();
}

namespace {

std::uint64_t checked_sum(std::span<const std::uint64_t> v, std::uint64_t limit, const char* what, std::size_t at) {
    std::uint64_t sum = 0;
    for (auto x : v) {
        if (x > limit - sum) throw CorruptError(std::string(what) + " exceeds its bound", at);
        sum += x;
    }
    return sum;
}

}  // namespace

std::vector<std::uint64_t> pge_decode(const BitStream& s) {
    BitReader in(s);
    const std::uint64_t n = read_count(in, 1, "pge symbol");
    auto at = in.position();
    const std::uint64_t epsilon = in.get_gamma() - 1;
    if (epsilon == 0) throw CorruptError("pge block size 0", at);
    const std::uint64_t s1 = read_count(in, 1, "pge S1");
    const std::uint64_t s2 = read_count(in, 1, "pge S2");
    const std::uint64_t q = n / epsilon + (n % epsilon != 0);

    std::vector<std::uint64_t> S1(s1), S2(s2), L2(s2);
    for (auto& v : S1) v = in.get_gamma();
    for (auto& v : S2) v = in.get_gamma();
    for (auto& v : L2) v = in.get_gamma();

    at = in.position();
    if (checked_sum(L2, s1, "pge L2 total", at) != s1) throw CorruptError("pge L2 does not cover S1", at);
    RunLengths l1_runs{S2, L2};
    std::vector<std::uint64_t> L1 = rle_join(l1_runs);
    if (checked_sum(L1, q, "pge L1 total", at) != q) throw CorruptError("pge L1 does not cover the blocks", at);
    std::vector<std::uint64_t> D_delta = rle_join(RunLengths{std::move(S1), std::move(L1)});

    if (q > in.remaining()) throw CorruptError("pge sign bits missing", at);
    const std::size_t pms_at = s.size() - q;
    BitReader pms(s.bytes(), s.size());
    pms.skip(pms_at);

    std::vector<std::uint64_t> D(q);
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < q; ++i) {
        std::uint64_t mag = D_delta[i] - 1;
        bool up = pms.get_bit();
        if (up ? mag > 64 - prev : mag > prev) throw CorruptError("pge block width out of range", pms_at + i);
        D[i] = up ? prev + mag : prev - mag;
        if (D[i] == 0) throw CorruptError("pge block width 0", pms_at + i);
        prev = D[i];
    }

    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (in.position() >= pms_at) throw CorruptError("pge packed symbols overrun", in.position());
        out.push_back(in.get_bits(static_cast<unsigned>(D[i / epsilon])));
    }
    if (in.position() != pms_at) throw CorruptError("pge stream length mismatch", in.position());
    return out;
}

PairSplit split_pairs(const Grammar& g) {
    PairSplit p;
    for (std::size_t i = g.sigma(); i < g.rules.size(); ++i) {
        const auto* seq = std::get_if<SequenceRule>(&g.rules[i]);
        if (!seq || seq->body.size() != 2)
            throw UsageError("pair-pge applies only to RePair grammars, whose rules are all pairs");
        auto a = seq->body[0], b = seq->body[1];
        p.X.push_back(std::max(a, b));
        p.X_delta.push_back(a > b ? a - b : b - a);
        p.X_pms.push_back(a >= b);
    }
    return p;
}

BitStream pair_pge_encode(const Grammar& g, std::uint64_t epsilon) {
    PairSplit p = split_pairs(g);
    BitWriter w;
    put_framed(w, pge_encode(p.X, epsilon));
    for (auto v : p.X_delta) w.put_gamma(v + 1);
    for (bool bit : p.X_pms) w.put_bit(bit);
    put_framed(w, pge_encode(g.tau, epsilon));
    return std::move(w).finish();
}

Grammar pair_pge_decode(BitReader& in, std::span<const std::uint8_t> terminal_bytes) {
    auto X = pge_decode(get_framed(in));
    Grammar g;
    g.rules = terminal_rules(terminal_bytes);
    std::vector<std::uint64_t> delta(X.size());
    for (auto& v : delta) v = in.get_gamma() - 1;
    for (std::size_t i = 0; i < X.size(); ++i) {
        auto at = in.position();
        bool left_is_max = in.get_bit();
        if (delta[i] > X[i]) throw CorruptError("pair delta exceeds its maximum", at);
        auto other = X[i] - delta[i];
        if (left_is_max) g.rules.push_back(SequenceRule{{X[i], other}});
        else g.rules.push_back(SequenceRule{{other, X[i]}});
    }
    g.tau = pge_decode(get_framed(in));
    return g;
}

}  // namespace ragc
