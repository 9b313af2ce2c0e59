#include "ragc/encode_poppt.hpp"

#include <algorithm>

#include "ragc/encode_pge.hpp"
#include "ragc/error.hpp"

namespace ragc {

namespace {

enum class Kind : std::uint8_t { Sym, Marker, Chain, Root };

struct Node {
    Kind kind;
    std::uint64_t value;  // symbol for Sym, chain level for Chain
};

class TreeBuilder {
public:
    TreeBuilder(const Grammar& g, TreeForm form)
        : g_(g), form_(form), sigma_(g.sigma()), post_(g.rules.size() + 1, 0), entered_(g.rules.size() + 1, 0) {}

    Poppt run() {
        if (form_ == TreeForm::Binary) {
            for (std::size_t i = sigma_; i < g_.rules.size(); ++i) {
                const auto* seq = std::get_if<SequenceRule>(&g_.rules[i]);
                if (!seq || seq->body.size() != 2)
                    throw UsageError("binary tree form needs a pair grammar (RePair output)");
            }
            const auto m = g_.tau.size();
            if (m == 1) walk({Kind::Sym, g_.tau[0]});
            else if (m >= 2) walk({Kind::Chain, m - 1});
        } else {
            if (!g_.tau.empty()) walk({Kind::Root, 0});
            out_.put_bit(false);
        }
        result_.B = std::move(out_).finish();
        return std::move(result_);
    }

private:
    struct Frame {
        Node node;
        std::size_t next = 0;
    };

    bool is_leaf(const Node& n) const {
        if (n.kind == Kind::Marker) return true;
        if (n.kind != Kind::Sym) return false;
        return n.value <= sigma_ || entered_[n.value];
    }

    std::size_t child_count(const Node& n) const {
        switch (n.kind) {
            case Kind::Chain: return 2;
            case Kind::Root: return g_.tau.size();
            default: break;
        }
        const Rule& r = g_.rules[n.value - 1];
        if (const auto* seq = std::get_if<SequenceRule>(&r)) return seq->body.size();
        return 2;
    }

    Node child(const Node& n, std::size_t i) const {
        switch (n.kind) {
            case Kind::Chain:
                if (i == 1) return {Kind::Sym, g_.tau[n.value]};
                return n.value == 1 ? Node{Kind::Sym, g_.tau[0]} : Node{Kind::Chain, n.value - 1};
            case Kind::Root: return {Kind::Sym, g_.tau[i]};
            default: break;
        }
        const Rule& r = g_.rules[n.value - 1];
        if (const auto* seq = std::get_if<SequenceRule>(&r)) return {Kind::Sym, seq->body[i]};
        const auto& run = std::get<RunRule>(r);
        return i == 0 ? Node{Kind::Marker, 0} : Node{Kind::Sym, run.base};
    }

    void emit_leaf(const Node& n) {
        if (n.kind == Kind::Marker) result_.U.push_back(kRunMarker);
        else if (n.value <= sigma_) result_.U.push_back(n.value);
        else result_.U.push_back(sigma_ + post_[n.value]);
        out_.put_bit(form_ == TreeForm::General);
    }

    void emit_internal(const Node& n, std::size_t children) {
        if (form_ == TreeForm::Binary) {
            out_.put_bit(true);
        } else {
            for (std::size_t i = 0; i < children; ++i) out_.put_bit(false);
            out_.put_bit(true);
        }
        if (n.kind == Kind::Root) return;
        ++result_.internal_count;
        if (n.kind == Kind::Sym) {
            post_[n.value] = result_.internal_count;
            if (const auto* run = std::get_if<RunRule>(&g_.rules[n.value - 1]))
                result_.run_exponents.push_back(run->exponent);
        }
    }

    void walk(Node start) {
        if (is_leaf(start)) {
            emit_leaf(start);
            return;
        }
        std::vector<Frame> stack;
        auto enter = [&](const Node& n) {
            if (n.kind == Kind::Sym) entered_[n.value] = 1;
            stack.push_back({n, 0});
        };
        enter(start);
        while (!stack.empty()) {
            Frame& f = stack.back();
            const std::size_t c = child_count(f.node);
            if (f.next == c) {
                emit_internal(f.node, c);
                stack.pop_back();
                continue;
            }
            Node ch = child(f.node, f.next++);
            if (is_leaf(ch)) emit_leaf(ch);
            else enter(ch);
        }
    }

    const Grammar& g_;
    TreeForm form_;
    std::uint64_t sigma_;
    std::vector<std::uint64_t> post_;
    std::vector<std::uint8_t> entered_;
    BitWriter out_;
    Poppt result_;
};

}  // namespace

Poppt build_poppt(const Grammar& g, TreeForm form) { return TreeBuilder(g, form).run(); }

bool u_bound_holds(std::span<const std::uint64_t> U, std::uint64_t sigma) {
    for (std::size_t i = 0; i < U.size(); ++i)
        if (U[i] > i + 1 + sigma) return false;
    return true;
}

Grammar decode_poppt(const BitStream& B, std::span<const std::uint64_t> U,
                     std::span<const std::uint64_t> run_exponents,
                     std::span<const std::uint8_t> terminal_bytes, TreeForm form, std::uint64_t tau_length) {
    const std::uint64_t sigma = terminal_bytes.size();
    Grammar g;
    g.rules = terminal_rules(terminal_bytes);
    std::vector<std::uint64_t> stack;
    std::size_t u_pos = 0, exp_pos = 0;

    auto push_leaf = [&](std::size_t at) {
        if (u_pos >= U.size()) throw CorruptError("leaf labels exhausted", at);
        const std::uint64_t label = U[u_pos++];
        if (label > g.rules.size() || (label == kRunMarker && form == TreeForm::Binary))
            throw CorruptError("leaf label " + std::to_string(label) + " refers to no earlier node", at);
        stack.push_back(label);
    };
    auto make_node = [&](std::size_t c, std::size_t at) {
        if (c > stack.size()) throw CorruptError("tree stack underflow", at);
        std::vector<Symbol> ch(stack.end() - static_cast<std::ptrdiff_t>(c), stack.end());
        stack.resize(stack.size() - c);
        if (ch[0] == kRunMarker) {
            if (c != 2 || ch[1] == kRunMarker) throw CorruptError("malformed run node", at);
            if (exp_pos >= run_exponents.size()) throw CorruptError("run exponents exhausted", at);
            g.rules.push_back(RunRule{ch[1], run_exponents[exp_pos++]});
        } else {
            if (std::find(ch.begin(), ch.end(), kRunMarker) != ch.end())
                throw CorruptError("run marker outside a run node", at);
            g.rules.push_back(SequenceRule{std::move(ch)});
        }
        stack.push_back(g.rules.size());
    };

    if (form == TreeForm::Binary) {
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (B.bit(i)) make_node(2, i);
            else push_leaf(i);
        }
        if (tau_length == 0) {
            if (!stack.empty()) throw CorruptError("tree present for an empty start rule");
        } else {
            if (stack.size() != 1) throw CorruptError("tree does not reduce to one root", B.size());
            // Unwind the left-leaning chain that held tau.
            std::vector<Symbol> tau_rev;
            std::vector<std::uint8_t> chain(g.rules.size() + 1, 0);
            Symbol r = stack[0];
            for (std::uint64_t k = 1; k < tau_length; ++k) {
                if (r <= sigma) throw CorruptError("start chain shorter than the start rule");
                const auto& body = std::get<SequenceRule>(g.rules[r - 1]).body;
                chain[r] = 1;
                tau_rev.push_back(body[1]);
                r = body[0];
            }
            tau_rev.push_back(r);
            g.tau.assign(tau_rev.rbegin(), tau_rev.rend());

            if (tau_length > 1) {
                std::vector<Symbol> renum(g.rules.size() + 1, 0);
                std::vector<Rule> kept(g.rules.begin(), g.rules.begin() + static_cast<std::ptrdiff_t>(sigma));
                for (Symbol v = 1; v <= sigma; ++v) renum[v] = v;
                auto remap = [&](Symbol s) {
                    if (chain[s]) throw CorruptError("start chain node referenced from a rule");
                    return renum[s];
                };
                for (Symbol v = sigma + 1; v <= g.rules.size(); ++v) {
                    if (chain[v]) continue;
                    auto body = std::get<SequenceRule>(g.rules[v - 1]).body;
                    for (auto& s : body) s = remap(s);
                    kept.push_back(SequenceRule{std::move(body)});
                    renum[v] = kept.size();
                }
                for (auto& s : g.tau) s = remap(s);
                g.rules = std::move(kept);
            }
        }
    } else {
        std::size_t zeros = 0;
        bool any_node = false;
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (!B.bit(i)) {
                ++zeros;
                continue;
            }
            if (zeros == 0) push_leaf(i);
            else {
                make_node(zeros, i);
                any_node = true;
            }
            zeros = 0;
        }
        if (zeros != 1) throw CorruptError("tree bits must end with a single 0", B.size());
        if (!any_node) {
            if (!stack.empty() || tau_length != 0) throw CorruptError("start node missing");
        } else {
            if (stack.size() != 1 || stack[0] != g.rules.size()) throw CorruptError("tree does not reduce to one root");
            auto* root = std::get_if<SequenceRule>(&g.rules.back());
            if (!root) throw CorruptError("start node is a run");
            g.tau = std::move(root->body);
            g.rules.pop_back();
        }
    }
    if (u_pos != U.size()) throw CorruptError("unused leaf labels");
    if (exp_pos != run_exponents.size()) throw CorruptError("unused run exponents");
    if (g.tau.size() != tau_length) throw CorruptError("start rule length disagrees with the header");
    return g;
}

BitStream encode_u_ible(std::span<const std::uint64_t> U, std::uint64_t sigma) {
    BitWriter w;
    for (std::size_t i = 0; i < U.size(); ++i) {
        if (U[i] > i + 1 + sigma) throw InternalError("leaf label exceeds its position bound");
        w.put_bits(U[i], bit_width_of(i + 1 + sigma));
    }
    return std::move(w).finish();
}

std::vector<std::uint64_t> decode_u_ible(BitReader& in, std::uint64_t count, std::uint64_t sigma) {
    if (count > in.remaining()) throw CorruptError("leaf labels truncated", in.position());
    std::vector<std::uint64_t> U(count);
    for (std::uint64_t i = 0; i < count; ++i) U[i] = in.get_bits(bit_width_of(i + 1 + sigma));
    return U;
}

BitStream poppt_encode(const Grammar& g, TreeForm form, LabelCode code, std::uint64_t epsilon) {
    Poppt t = build_poppt(g, form);
    if (!u_bound_holds(t.U, g.sigma())) throw InternalError("leaf label exceeds its position bound");
    BitWriter w;
    w.put_gamma(t.B.size() + 1);
    w.put_gamma(t.U.size() + 1);
    w.put_gamma(t.run_exponents.size() + 1);
    w.append(t.B);
    if (code == LabelCode::Ible) w.append(encode_u_ible(t.U, g.sigma()));
    else put_framed(w, pge_encode(t.U, epsilon));
    for (auto k : t.run_exponents) w.put_gamma(k);
    return std::move(w).finish();
}

Grammar poppt_decode(BitReader& in, std::span<const std::uint8_t> terminal_bytes, TreeForm form,
                     LabelCode code, std::uint64_t tau_length) {
    auto b_len = read_count(in, 1, "tree bit");
    auto u_len = read_count(in, 0, "leaf label");
    auto runs = read_count(in, 0, "run exponent");
    BitStream B = in.take(b_len);
    if (u_len > b_len) throw CorruptError("more leaf labels than tree bits", in.position());
    if (runs > in.remaining()) throw CorruptError("run exponents truncated", in.position());
    std::vector<std::uint64_t> U;
    if (code == LabelCode::Ible) {
        U = decode_u_ible(in, u_len, terminal_bytes.size());
    } else {
        auto at = in.position();
        U = pge_decode(get_framed(in));
        if (U.size() != u_len) throw CorruptError("leaf label count mismatch", at);
    }
    std::vector<std::uint64_t> exps(runs);
    for (auto& k : exps) k = in.get_gamma();
    return decode_poppt(B, U, exps, terminal_bytes, form, tau_length);
}

}  // namespace ragc
