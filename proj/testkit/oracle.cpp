#include "oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ragc::oracle {

PairMap naive_pair_counts(const Text& t) {
    PairMap counts;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> last;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        std::pair<std::uint32_t, std::uint32_t> p{t[i], t[i + 1]};
        auto it = last.find(p);
        if (it != last.end() && it->second + 1 >= i) continue;
        last[p] = i;
        ++counts[p];
    }
    return counts;
}

std::vector<std::size_t> greedy_occurrences(const Text& t, const Text& u) {
    std::vector<std::size_t> out;
    if (u.empty() || u.size() > t.size()) return out;
    for (std::size_t i = 0; i + u.size() <= t.size();) {
        if (std::equal(u.begin(), u.end(), t.begin() + static_cast<std::ptrdiff_t>(i))) {
            out.push_back(i);
            i += u.size();
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<RepeatEntry> enumerate_maximal_repeats(const Text& t) {
    if (t.size() > 256) throw std::invalid_argument("oracle limited to 256 symbols");
    std::set<Text> distinct;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t len = 2; i + len <= t.size(); ++len)
            distinct.insert(Text(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(i + len)));
    std::set<std::uint32_t> alphabet(t.begin(), t.end());

    std::vector<RepeatEntry> out;
    for (const Text& u : distinct) {
        std::size_t f = greedy_occurrences(t, u).size();
        if (f < 2) continue;
        RepeatEntry e{u, f, true, true, false};
        for (auto a : alphabet) {
            Text left{a};
            left.insert(left.end(), u.begin(), u.end());
            if (greedy_occurrences(t, left).size() >= f) e.left_maximal = false;
            Text right = u;
            right.push_back(a);
            if (greedy_occurrences(t, right).size() >= f) e.right_maximal = false;
        }
        e.maximal_repeat = e.left_maximal && e.right_maximal;
        out.push_back(std::move(e));
    }
    return out;
}

CheckResult cross_check_selection(const Text& t) {
    std::size_t oracle_max = 0;
    for (const auto& e : enumerate_maximal_repeats(t))
        if (e.maximal_repeat) oracle_max = std::max(oracle_max, e.frequency);

    ReplaceSession session{Text(t)};
    std::size_t engine_f = 0;
    if (auto best = session.most_frequent_pair(); best && best->count >= 2)
        engine_f = session.extend_to_maximal_repeat(best->pair).frequency();
    if (engine_f == oracle_max) return {};
    return {false, "engine frequency " + std::to_string(engine_f) + " vs oracle " + std::to_string(oracle_max)};
}

CheckResult compare_counts(const std::vector<PairCount>& engine, const Text& live) {
    PairMap expect = naive_pair_counts(live);
    PairMap got;
    for (const auto& pc : engine)
        if (pc.count > 0) got[{pc.pair.left, pc.pair.right}] = pc.count;
    if (got == expect) return {};
    std::string detail;
    for (const auto& [p, c] : expect) {
        auto it = got.find(p);
        std::uint32_t g = it == got.end() ? 0 : it->second;
        if (g != c)
            detail += "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ") engine " +
                      std::to_string(g) + " naive " + std::to_string(c) + "; ";
    }
    for (const auto& [p, c] : got)
        if (!expect.count(p))
            detail += "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ") engine " +
                      std::to_string(c) + " naive 0; ";
    return {false, detail};
}

CheckResult scratch_rebuild_equals(const ReplaceSession& session) {
    return compare_counts(session.pair_counts(), session.text().live_symbols());
}

namespace {

void expand_into(const Grammar& g, Symbol s, std::vector<std::uint8_t>& out, int depth) {
    if (depth > 100000) throw std::runtime_error("oracle expansion too deep");
    const Rule& r = g.rules.at(s - 1);
    if (const auto* t = std::get_if<TerminalRule>(&r)) {
        out.push_back(t->byte);
    } else if (const auto* seq = std::get_if<SequenceRule>(&r)) {
        for (auto c : seq->body) expand_into(g, c, out, depth + 1);
    } else {
        const auto& run = std::get<RunRule>(r);
        for (std::uint64_t k = 0; k < run.exponent; ++k) expand_into(g, run.base, out, depth + 1);
    }
}

struct NaiveBuild {
    Text text;
    Grammar g;
    std::uint32_t next_id = 1;

    explicit NaiveBuild(const std::vector<std::uint8_t>& data) {
        std::set<std::uint8_t> bytes(data.begin(), data.end());
        std::map<std::uint8_t, std::uint32_t> id;
        for (auto b : bytes) {
            g.rules.push_back(TerminalRule{b});
            id[b] = next_id++;
        }
        for (auto b : data) text.push_back(id[b]);
    }

    // Highest count, ties to the earliest first counted occurrence.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> select() const {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::size_t, std::size_t>> info;  // count, first
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> last;
        for (std::size_t i = 0; i + 1 < text.size(); ++i) {
            std::pair<std::uint32_t, std::uint32_t> p{text[i], text[i + 1]};
            auto it = last.find(p);
            if (it != last.end() && it->second + 1 >= i) continue;
            last[p] = i;
            auto [slot, fresh] = info.try_emplace(p, 0, i);
            ++slot->second.first;
        }
        std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
        std::size_t best_count = 0, best_first = 0;
        for (const auto& [p, cf] : info) {
            if (cf.first > best_count || (cf.first == best_count && cf.second < best_first)) {
                best = p;
                best_count = cf.first;
                best_first = cf.second;
            }
        }
        if (best_count < 2) return std::nullopt;
        return best;
    }

    void replace(const std::vector<std::size_t>& starts, const std::vector<std::size_t>& ends,
                 const std::vector<std::uint32_t>& symbols) {
        Text out;
        std::size_t k = 0;
        for (std::size_t i = 0; i < text.size();) {
            if (k < starts.size() && i == starts[k]) {
                out.push_back(symbols[k]);
                i = ends[k] + 1;
                ++k;
            } else {
                out.push_back(text[i++]);
            }
        }
        text = std::move(out);
    }

    bool mr_step(bool runs) {
        auto p = select();
        if (!p) return false;
        Text r{p->first, p->second};
        auto starts = greedy_occurrences(text, r);
        std::vector<std::size_t> ends;
        for (auto s : starts) ends.push_back(s + 1);
        const std::size_t f = starts.size();

        while (true) {
            bool ok = starts[0] > 0;
            for (std::size_t i = 0; ok && i < f; ++i) {
                if (starts[i] == 0 || text[starts[i] - 1] != text[starts[0] - 1]) ok = false;
                else if (i > 0 && starts[i] - 1 <= ends[i - 1]) ok = false;
            }
            if (!ok) break;
            r.insert(r.begin(), text[starts[0] - 1]);
            for (auto& s : starts) --s;
        }
        while (true) {
            bool ok = ends[0] + 1 < text.size();
            for (std::size_t i = 0; ok && i < f; ++i) {
                if (ends[i] + 1 >= text.size() || text[ends[i] + 1] != text[ends[0] + 1]) ok = false;
                else if (i + 1 < f && ends[i] + 1 >= starts[i + 1]) ok = false;
            }
            if (!ok) break;
            r.push_back(text[ends[0] + 1]);
            for (auto& e : ends) ++e;
        }

        if (runs && r.size() == 2 && r[0] == r[1]) {
            const std::uint32_t x = r[0];
            std::map<std::uint64_t, std::uint32_t> seen;
            std::vector<std::size_t> rs, re;
            std::vector<std::uint32_t> syms;
            for (std::size_t i = 0; i < text.size();) {
                std::size_t j = i;
                while (j < text.size() && text[j] == text[i]) ++j;
                if (text[i] == x && j - i >= 2) {
                    auto [it, fresh] = seen.try_emplace(j - i, 0);
                    if (fresh) {
                        g.rules.push_back(RunRule{x, j - i});
                        it->second = next_id++;
                    }
                    rs.push_back(i);
                    re.push_back(j - 1);
                    syms.push_back(it->second);
                }
                i = j;
            }
            replace(rs, re, syms);
            return true;
        }

        if (r.size() > 2 && r.front() == r.back()) {
            r.pop_back();
            for (auto& e : ends) --e;
        }
        g.rules.push_back(SequenceRule{std::vector<Symbol>(r.begin(), r.end())});
        replace(starts, ends, std::vector<std::uint32_t>(f, next_id++));
        return true;
    }

    Grammar finish() {
        g.tau.assign(text.begin(), text.end());
        return std::move(g);
    }
};

}  // namespace

std::vector<std::uint8_t> naive_expand(const Grammar& g) {
    std::vector<std::uint8_t> out;
    for (auto s : g.tau) expand_into(g, s, out, 0);
    return out;
}

Grammar naive_repair(const std::vector<std::uint8_t>& data) {
    NaiveBuild b(data);
    while (auto p = b.select()) {
        Text r{p->first, p->second};
        auto starts = greedy_occurrences(b.text, r);
        std::vector<std::size_t> ends;
        for (auto s : starts) ends.push_back(s + 1);
        b.g.rules.push_back(SequenceRule{{p->first, p->second}});
        b.replace(starts, ends, std::vector<std::uint32_t>(starts.size(), b.next_id++));
    }
    return b.finish();
}

Grammar naive_mr_repair(const std::vector<std::uint8_t>& data) {
    NaiveBuild b(data);
    while (b.mr_step(false)) {
    }
    return b.finish();
}

Grammar naive_rl_mr_repair(const std::vector<std::uint8_t>& data) {
    NaiveBuild b(data);
    while (b.mr_step(true)) {
    }
    return b.finish();
}

std::string fibonacci_word(unsigned k) {
    if (k == 0) throw std::invalid_argument("fibonacci words start at k = 1");
    std::string prev = "a", cur = "ab";
    if (k == 1) return prev;
    for (unsigned i = 2; i < k; ++i) {
        std::string next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace ragc::oracle
