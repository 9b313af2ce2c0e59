#include "ragc/grammar.hpp"

#include <map>
#include <set>

#include "ragc/error.hpp"

namespace ragc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::size_t kSinkChunk = 1 << 16;

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    return __builtin_add_overflow(a, b, &out) ? UINT64_MAX : out;
}

}  // namespace

std::uint64_t rule_size(const Rule& rule) {
    return std::visit(Overloaded{
                          [](const TerminalRule&) -> std::uint64_t { return 1; },
                          [](const SequenceRule& r) -> std::uint64_t { return r.body.size(); },
                          [](const RunRule&) -> std::uint64_t { return 3; },
                      },
                      rule);
}

std::size_t Grammar::sigma() const {
    std::size_t s = 0;
    while (s < rules.size() && std::holds_alternative<TerminalRule>(rules[s])) ++s;
    return s;
}

std::vector<std::uint8_t> Grammar::terminal_map() const {
    std::vector<std::uint8_t> out;
    for (const auto& r : rules) {
        if (auto* t = std::get_if<TerminalRule>(&r)) out.push_back(t->byte);
        else break;
    }
    return out;
}

std::size_t Grammar::run_rule_count() const {
    std::size_t n = 0;
    for (const auto& r : rules) n += std::holds_alternative<RunRule>(r) ? 1 : 0;
    return n;
}

std::vector<Rule> terminal_rules(std::span<const std::uint8_t> bytes) {
    std::vector<Rule> rules;
    rules.reserve(bytes.size());
    for (auto b : bytes) rules.emplace_back(TerminalRule{b});
    return rules;
}

std::uint64_t grammar_size(const Grammar& g) {
    std::uint64_t total = g.tau.size();
    for (const auto& r : g.rules) total += rule_size(r);
    return total;
}

GrammarStats grammar_stats(const Grammar& g) {
    GrammarStats s;
    s.sigma = g.sigma();
    s.d = g.rules.size() - s.sigma;
    for (std::size_t i = s.sigma; i < g.rules.size(); ++i) {
        s.rhs_total += rule_size(g.rules[i]);
        if (std::holds_alternative<RunRule>(g.rules[i])) ++s.run_rules;
    }
    s.tau_length = g.tau.size();
    s.size = s.sigma + s.rhs_total + s.tau_length;
    return s;
}

std::vector<std::string> validate(const Grammar& g) {
    std::vector<std::string> problems;
    const std::size_t sigma = g.sigma();
    const Symbol start = g.rules.size() + 1;

    int last_byte = -1;
    for (std::size_t i = 0; i < sigma; ++i) {
        int b = std::get<TerminalRule>(g.rules[i]).byte;
        if (b <= last_byte)
            problems.push_back("terminal rule " + std::to_string(i + 1) + " not in ascending byte order");
        last_byte = b;
    }

    std::map<std::vector<Symbol>, Symbol> seen_bodies;
    std::set<std::pair<Symbol, std::uint64_t>> seen_runs;
    for (std::size_t i = sigma; i < g.rules.size(); ++i) {
        const Symbol id = i + 1;
        const std::string name = "rule " + std::to_string(id);
        std::visit(Overloaded{
                       [&](const TerminalRule&) {
                           problems.push_back(name + ": terminal rule after the terminal block");
                       },
                       [&](const SequenceRule& r) {
                           if (r.body.empty()) problems.push_back(name + ": empty sequence body");
                           for (Symbol s : r.body) {
                               if (s == kRunMarker || s >= start)
                                   problems.push_back(name + ": out-of-range symbol " + std::to_string(s));
                               else if (s >= id)
                                   problems.push_back(name + ": ordering violation on " + std::to_string(s));
                           }
                           auto [it, fresh] = seen_bodies.emplace(r.body, id);
                           if (!fresh)
                               problems.push_back(name + ": duplicate of rule " + std::to_string(it->second));
                       },
                       [&](const RunRule& r) {
                           if (r.exponent < 1)
                               problems.push_back(name + ": run exponent " + std::to_string(r.exponent) + " < 1");
                           if (r.base == kRunMarker || r.base >= start)
                               problems.push_back(name + ": out-of-range run base " + std::to_string(r.base));
                           else if (r.base >= id)
                               problems.push_back(name + ": ordering violation on " + std::to_string(r.base));
                           if (!seen_runs.emplace(r.base, r.exponent).second)
                               problems.push_back(name + ": duplicate run rule");
                       },
                   },
                   g.rules[i]);
    }
    for (Symbol s : g.tau) {
        if (s == kRunMarker || s >= start) problems.push_back("start rule: out-of-range symbol " + std::to_string(s));
    }
    return problems;
}

void expand(const Grammar& g, const ByteSink& sink) {
    // A frame is (symbol, cursor). For sequences the cursor is the next child
    // index, for runs the number of repetitions still to emit.
    struct Frame {
        Symbol symbol;
        std::uint64_t cursor;
    };
    std::vector<std::uint8_t> buffer;
    buffer.reserve(kSinkChunk);
    auto emit = [&](std::uint8_t b) {
        buffer.push_back(b);
        if (buffer.size() == kSinkChunk) {
            sink(buffer);
            buffer.clear();
        }
    };

    std::vector<Frame> stack;
    auto push = [&](Symbol s) {
        if (s == kRunMarker || s > g.rules.size())
            throw CorruptError("expand: symbol " + std::to_string(s) + " has no rule");
        if (auto* t = std::get_if<TerminalRule>(&g.rules[s - 1])) emit(t->byte);
        else stack.push_back({s, 0});
    };

    for (Symbol top : g.tau) {
        push(top);
        while (!stack.empty()) {
            Frame& f = stack.back();
            const Rule& rule = g.rules[f.symbol - 1];
            if (auto* seq = std::get_if<SequenceRule>(&rule)) {
                if (f.cursor == seq->body.size()) {
                    stack.pop_back();
                    continue;
                }
                Symbol child = seq->body[f.cursor++];
                push(child);
            } else {
                const auto& run = std::get<RunRule>(rule);
                if (f.cursor == run.exponent) {
                    stack.pop_back();
                    continue;
                }
                ++f.cursor;
                push(run.base);
            }
        }
    }
    if (!buffer.empty()) sink(buffer);
}

std::vector<std::uint8_t> expand(const Grammar& g) {
    std::vector<std::uint8_t> out;
    out.reserve(expanded_length(g));
    expand(g, [&](std::span<const std::uint8_t> chunk) { out.insert(out.end(), chunk.begin(), chunk.end()); });
    return out;
}

std::uint64_t expanded_length(const Grammar& g) {
    std::vector<std::uint64_t> len(g.rules.size() + 1, 0);
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const Symbol id = i + 1;
        len[id] = std::visit(Overloaded{
                                 [](const TerminalRule&) -> std::uint64_t { return 1; },
                                 [&](const SequenceRule& r) -> std::uint64_t {
                                     std::uint64_t total = 0;
                                     for (Symbol s : r.body) total = saturating_add(total, s < id ? len[s] : 0);
                                     return total;
                                 },
                                 [&](const RunRule& r) -> std::uint64_t {
                                     if (r.base >= id) return 0;
                                     std::uint64_t out = 0;
                                     if (__builtin_mul_overflow(len[r.base], r.exponent, &out)) return UINT64_MAX;
                                     return out;
                                 },
                             },
                             g.rules[i]);
    }
    std::uint64_t total = 0;
    for (Symbol s : g.tau) total = saturating_add(total, s <= g.rules.size() ? len[s] : 0);
    return total;
}

}  // namespace ragc
