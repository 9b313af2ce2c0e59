#include "ragc/constructors.hpp"

#include <limits>
#include <vector>

#include "ragc/error.hpp"
#include "ragc/replace_engine.hpp"

namespace ragc {

namespace {

class Builder {
public:
    Builder(std::span<const std::uint32_t> text, const AlphabetMap& alphabet)
        : session_(std::vector<std::uint32_t>(text.begin(), text.end())) {
        grammar_.rules = terminal_rules(alphabet.bytes());
        next_id_ = alphabet.sigma() + 1;
    }

    ReplaceSession& session() { return session_; }

    std::uint32_t add_rule(Rule rule) {
        if (next_id_ >= std::numeric_limits<std::uint32_t>::max())
            throw UsageError("too many grammar variables for 32-bit symbols");
        grammar_.rules.push_back(std::move(rule));
        return static_cast<std::uint32_t>(next_id_++);
    }

    std::uint32_t peek_id() const { return static_cast<std::uint32_t>(next_id_); }

    Grammar finish() && {
        for (auto s : session_.text().live_symbols()) grammar_.tau.push_back(s);
        return std::move(grammar_);
    }

private:
    ReplaceSession session_;
    Grammar grammar_;
    std::uint64_t next_id_ = 1;
};

std::vector<Symbol> widen(std::span<const std::uint32_t> symbols) { return {symbols.begin(), symbols.end()}; }

// One replacement round of MR-RePair; `runs` switches on the RL branch.
bool mr_step(Builder& b, bool runs) {
    auto& session = b.session();
    auto best = session.most_frequent_pair();
    if (!best || best->count < 2) return false;

    MaximalRepeat rep = session.extend_to_maximal_repeat(best->pair);

    if (runs && rep.symbols.size() == 2 && rep.symbols[0] == rep.symbols[1]) {
        const std::uint32_t x = rep.symbols[0];
        const std::uint32_t fresh = b.peek_id();
        RunDedupTable dedup;
        std::vector<ReplaceSession::Region> regions;
        for (const RunSpan& run : session.find_runs(x)) {
            auto [it, fresh_run] = dedup.try_emplace({x, run.length}, 0);
            if (fresh_run) it->second = b.add_rule(RunRule{x, run.length});
            regions.push_back({run.start, run.end, static_cast<std::uint32_t>(it->second)});
        }
        session.replace_regions(regions, fresh);
        return true;
    }

    if (rep.symbols.size() > 2 && rep.symbols.front() == rep.symbols.back()) {
        rep.symbols.pop_back();
        for (auto& e : rep.ends) e = session.text().prev(e);
    }
    const std::uint32_t v = b.add_rule(SequenceRule{widen(rep.symbols)});
    std::vector<ReplaceSession::Region> regions;
    regions.reserve(rep.starts.size());
    for (std::size_t i = 0; i < rep.starts.size(); ++i) regions.push_back({rep.starts[i], rep.ends[i], v});
    session.replace_regions(regions, v);
    return true;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::RePair: return "repair";
        case Algorithm::MrRePair: return "mr";
        case Algorithm::RlMrRePair: return "rlmr";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "repair") return Algorithm::RePair;
    if (name == "mr" || name == "mr-repair") return Algorithm::MrRePair;
    if (name == "rlmr" || name == "rl-mr-repair") return Algorithm::RlMrRePair;
    throw UsageError("unknown algorithm '" + std::string(name) + "' (expected repair, mr or rlmr)");
}

Grammar construct_repair(std::span<const std::uint32_t> text, const AlphabetMap& alphabet) {
    Builder b(text, alphabet);
    auto& session = b.session();
    while (true) {
        auto best = session.most_frequent_pair();
        if (!best || best->count < 2) break;
        auto starts = session.occurrences(best->pair);
        const std::uint32_t v = b.add_rule(SequenceRule{{best->pair.left, best->pair.right}});
        session.replace_all(starts, 2, v);
    }
    return std::move(b).finish();
}

Grammar construct_mr_repair(std::span<const std::uint32_t> text, const AlphabetMap& alphabet) {
    Builder b(text, alphabet);
    while (mr_step(b, false)) {
    }
    return std::move(b).finish();
}

Grammar construct_rl_mr_repair(std::span<const std::uint32_t> text, const AlphabetMap& alphabet) {
    Builder b(text, alphabet);
    while (mr_step(b, true)) {
    }
    return std::move(b).finish();
}

Grammar construct(Algorithm algo, std::span<const std::uint32_t> text, const AlphabetMap& alphabet) {
    switch (algo) {
        case Algorithm::RePair: return construct_repair(text, alphabet);
        case Algorithm::MrRePair: return construct_mr_repair(text, alphabet);
        case Algorithm::RlMrRePair: return construct_rl_mr_repair(text, alphabet);
    }
    throw UsageError("unknown algorithm");
}

Grammar construct(Algorithm algo, std::span<const std::uint8_t> data) {
    auto in = ingest_bytes(data);
    return construct(algo, in.symbols, in.alphabet);
}

}  // namespace ragc
