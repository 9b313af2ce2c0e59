#include "ragc/replace_engine.hpp"

#include <algorithm>
#include <cmath>

#include "ragc/error.hpp"

namespace ragc {

namespace {

// Min-heap on leftmost occurrence.
struct LaterHead {
    template <class E>
    bool operator()(const E& a, const E& b) const {
        return a.head != b.head ? a.head > b.head : a.rec > b.rec;
    }
};

std::uint32_t ceil_sqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r < v) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= v) --r;
    return static_cast<std::uint32_t>(r);
}

}  // namespace

WorkText::WorkText(std::vector<std::uint32_t> symbols) {
    if (symbols.size() >= kTombstone) throw UsageError("text too long for 32-bit slots");
    const auto n = static_cast<Slot>(symbols.size());
    cells_.resize(n);
    for (Slot i = 0; i < n; ++i)
        cells_[i] = {symbols[i], i == 0 ? kNoSlot : i - 1, i + 1 == n ? kNoSlot : i + 1, kNoSlot, kNoSlot, 0};
    live_ = n;
}

std::vector<std::uint32_t> WorkText::live_symbols() const {
    std::vector<std::uint32_t> out;
    out.reserve(live_);
    for (Slot s = head(); s != kNoSlot; s = cells_[s].next) out.push_back(cells_[s].sym);
    return out;
}

ReplaceSession::ReplaceSession(std::vector<std::uint32_t> text) : text_(std::move(text)) {
    const std::size_t n = text_.capacity();
    top_threshold_ = std::max<std::uint32_t>(2, ceil_sqrt(std::uint64_t{n} + 1));
    buckets_.resize(top_threshold_);
    bucket_live_.assign(top_threshold_, 0);
    table_.reserve(std::min<std::size_t>(n, 1 << 20));

    auto& cell = text_.cells_;
    for (Slot i = 0; i + 1 < n; ++i) {
        if (cell[i].sym == cell[i + 1].sym && i > 0 && cell[i - 1].sym == cell[i].sym && text_.cells_[i - 1].counted) continue;
        add_occurrence(i);
    }
    settle();
}

std::uint32_t ReplaceSession::find(SymbolPair p) const {
    auto it = table_.find(key(p.left, p.right));
    return it == table_.end() ? UINT32_MAX : it->second;
}

std::uint32_t ReplaceSession::find_or_create(SymbolPair p) {
    auto [it, fresh] = table_.try_emplace(key(p.left, p.right), 0);
    if (!fresh) return it->second;
    std::uint32_t id;
    if (!free_records_.empty()) {
        id = free_records_.back();
        free_records_.pop_back();
    } else {
        id = static_cast<std::uint32_t>(records_.size());
        records_.emplace_back();
    }
    Record& r = records_[id];
    bool in_top = r.in_top;
    r = Record{};
    r.pair = p;
    r.alive = true;
    r.in_top = in_top;
    it->second = id;
    return id;
}

void ReplaceSession::set_count(Record& r, std::uint32_t count) {
    if (r.count >= 2 && r.count < top_threshold_) --bucket_live_[r.count];
    r.count = count;
    if (r.count >= 2 && r.count < top_threshold_) ++bucket_live_[r.count];
}

void ReplaceSession::touch(std::uint32_t rec) {
    if (records_[rec].stamp == stamp_) return;
    records_[rec].stamp = stamp_;
    touched_.push_back(rec);
}

void ReplaceSession::link_tail(std::uint32_t rec, Slot s) {
    Record& r = records_[rec];
    text_.cells_[s].occ_prev = r.tail;
    text_.cells_[s].occ_next = kNoSlot;
    if (r.tail == kNoSlot) r.head = s;
    else text_.cells_[r.tail].occ_next = s;
    r.tail = s;
    text_.cells_[s].counted = 1;
    set_count(r, r.count + 1);
    touch(rec);
}

void ReplaceSession::link_after(std::uint32_t rec, Slot after, Slot s) {
    Record& r = records_[rec];
    Slot following = after == kNoSlot ? r.head : text_.cells_[after].occ_next;
    text_.cells_[s].occ_prev = after;
    text_.cells_[s].occ_next = following;
    if (after == kNoSlot) r.head = s;
    else text_.cells_[after].occ_next = s;
    if (following == kNoSlot) r.tail = s;
    else text_.cells_[following].occ_prev = s;
    text_.cells_[s].counted = 1;
    set_count(r, r.count + 1);
    touch(rec);
}

void ReplaceSession::unlink(std::uint32_t rec, Slot s) {
    Record& r = records_[rec];
    Slot p = text_.cells_[s].occ_prev;
    Slot q = text_.cells_[s].occ_next;
    if (p == kNoSlot) r.head = q;
    else text_.cells_[p].occ_next = q;
    if (q == kNoSlot) r.tail = p;
    else text_.cells_[q].occ_prev = p;
    text_.cells_[s].occ_prev = text_.cells_[s].occ_next = kNoSlot;
    text_.cells_[s].counted = 0;
    set_count(r, r.count - 1);
    touch(rec);
}

void ReplaceSession::add_occurrence(Slot s) {
    auto& cell = text_.cells_;
    std::uint32_t rec = find_or_create({cell[s].sym, cell[text_.cells_[s].next].sym});
    link_tail(rec, s);
}

void ReplaceSession::remove_occurrence(Slot s, Slot right) {
    auto& cell = text_.cells_;
    std::uint32_t rec = find({cell[s].sym, cell[right].sym});
    if (rec == UINT32_MAX) throw InternalError("counted occurrence without a pair record");
    unlink(rec, s);
}

void ReplaceSession::push_bucket(std::uint32_t rec) {
    const Record& r = records_[rec];
    if (r.count >= top_threshold_) {
        if (!r.in_top) {
            records_[rec].in_top = true;
            top_.push_back(rec);
        }
        return;
    }
    auto& heap = buckets_[r.count];
    heap.push_back({r.head, rec});
    std::push_heap(heap.begin(), heap.end(), LaterHead{});
    max_bucket_ = std::max(max_bucket_, r.count);
    if (heap.size() > 2 * bucket_live_[r.count] + 32) compact_bucket(r.count);
}

void ReplaceSession::compact_bucket(std::uint32_t c) {
    auto& heap = buckets_[c];
    std::erase_if(heap, [&](const HeapEntry& e) {
        const Record& r = records_[e.rec];
        return !r.alive || r.count != c || r.head != e.head;
    });
    std::sort(heap.begin(), heap.end(), [](const HeapEntry& a, const HeapEntry& b) {
        return a.head != b.head ? a.head < b.head : a.rec < b.rec;
    });
    heap.erase(std::unique(heap.begin(), heap.end(),
                           [](const HeapEntry& a, const HeapEntry& b) { return a.head == b.head && a.rec == b.rec; }),
               heap.end());
    std::make_heap(heap.begin(), heap.end(), LaterHead{});
}

void ReplaceSession::settle() {
    for (std::uint32_t rec : touched_) {
        Record& r = records_[rec];
        if (!r.alive) continue;
        if (r.count == 0) {
            table_.erase(key(r.pair.left, r.pair.right));
            r.alive = false;
            free_records_.push_back(rec);
        } else if (r.count >= 2) {
            push_bucket(rec);
        }
    }
    touched_.clear();
    ++stamp_;
}

std::optional<PairCount> ReplaceSession::most_frequent_pair() {
    const Record* best = nullptr;
    for (std::size_t k = 0; k < top_.size();) {
        Record& r = records_[top_[k]];
        if (!r.alive || r.count < top_threshold_) {
            r.in_top = false;
            top_[k] = top_.back();
            top_.pop_back();
            continue;
        }
        if (!best || r.count > best->count || (r.count == best->count && r.head < best->head)) best = &r;
        ++k;
    }
    if (best) return PairCount{best->pair, best->count};

    for (std::uint32_t c = max_bucket_; c >= 2; --c) {
        auto& heap = buckets_[c];
        while (!heap.empty()) {
            const HeapEntry& e = heap.front();
            const Record& r = records_[e.rec];
            if (r.alive && r.count == c && r.head == e.head) return PairCount{r.pair, c};
            std::pop_heap(heap.begin(), heap.end(), LaterHead{});
            heap.pop_back();
        }
        max_bucket_ = c - 1;
    }

    if (text_.live_length() < 2) return std::nullopt;
    Slot h = text_.head();
    SymbolPair p{text_.cells_[h].sym, text_.cells_[text_.cells_[h].next].sym};
    return PairCount{p, pair_count(p)};
}

MaximalRepeat ReplaceSession::extend_to_maximal_repeat(SymbolPair p) const {
    MaximalRepeat rep;
    rep.starts = occurrences(p);
    const std::size_t f = rep.starts.size();
    if (f < 2) throw UsageError("maximal repeat extension needs a pair occurring at least twice");
    rep.ends.reserve(f);
    for (Slot s : rep.starts) rep.ends.push_back(text_.cells_[s].next);

    auto& cell = text_.cells_;

    while (true) {
        Slot first = cell[rep.starts[0]].prev;
        if (first == kNoSlot) break;
        const std::uint32_t c = cell[first].sym;
        bool ok = true;
        for (std::size_t i = 1; i < f && ok; ++i) {
            Slot q = cell[rep.starts[i]].prev;
            ok = q != kNoSlot && cell[q].sym == c && q != rep.ends[i - 1];
        }
        if (!ok) break;
        for (auto& s : rep.starts) s = cell[s].prev;
    }
    while (true) {
        Slot last = cell[rep.ends[f - 1]].next;
        if (last == kNoSlot) break;
        const std::uint32_t c = cell[last].sym;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < f && ok; ++i) {
            Slot q = cell[rep.ends[i]].next;
            ok = q != kNoSlot && cell[q].sym == c && q != rep.starts[i + 1];
        }
        if (!ok) break;
        for (auto& e : rep.ends) e = cell[e].next;
    }

    for (Slot s = rep.starts[0];; s = cell[s].next) {
        rep.symbols.push_back(cell[s].sym);
        if (s == rep.ends[0]) break;
    }
    return rep;
}

void ReplaceSession::replace_all(std::span<const Slot> starts, std::size_t m, std::uint32_t v) {
    if (m < 2) throw UsageError("replaced ranges must span at least two symbols");
    std::vector<Region> regions;
    regions.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
        Slot s = starts[i];
        if (s >= text_.capacity() || !text_.live(s)) throw InternalError("replacement starts at a dead slot");
        Slot e = s;
        for (std::size_t k = 1; k < m; ++k) {
            e = text_.cells_[e].next;
            if (e == kNoSlot) throw InternalError("replacement range runs past the end of the text");
            if (i + 1 < starts.size() && e == starts[i + 1]) throw InternalError("overlapping replacement ranges");
        }
        regions.push_back({s, e, v});
    }
    replace_regions(regions, v);
}

void ReplaceSession::replace_regions(std::span<const Region> regions, std::uint32_t fresh_from) {
    auto& cell = text_.cells_;
    pending_.clear();

    for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto [s, e, v] = regions[i];
        if (v < fresh_from) throw InternalError("region symbol is not fresh");
        if (i > 0 && s <= regions[i - 1].end) throw InternalError("overlapping replacement ranges");
        const Slot next_start = i + 1 < regions.size() ? regions[i + 1].start : kNoSlot;
        const Slot left = cell[s].prev;
        const Slot right = cell[e].next;

        if (left != kNoSlot && text_.cells_[left].counted) remove_occurrence(left, s);
        std::size_t width = 1;
        for (Slot j = s; j != e; j = cell[j].next, ++width) {
            if (text_.cells_[j].counted) remove_occurrence(j, cell[j].next);
        }
        if (right != kNoSlot && text_.cells_[e].counted) {
            // Trimming a run of x from the left shifts the greedy xx positions
            // of its remainder; fix after all ranges are collapsed.
            if (cell[e].sym == cell[right].sym && right != next_start) pending_.push_back({e, right});
            else remove_occurrence(e, right);
        }

        for (Slot j = cell[s].next; j != right;) {
            Slot nj = cell[j].next;
            cell[j].next = WorkText::kTombstone;
            j = nj;
        }
        cell[s].sym = v;
        cell[s].next = right;
        if (right != kNoSlot) cell[right].prev = s;
        text_.live_ -= width - 1;
    }

    for (const auto& p : pending_) realign_run(p);

    for (const auto& region : regions) {
        const Slot s = region.start;
        const Slot p = cell[s].prev;
        if (p != kNoSlot && cell[p].sym < fresh_from) add_occurrence(p);
        const Slot q = cell[s].next;
        if (q == kNoSlot) continue;
        if (cell[q].sym == cell[s].sym) {
            if (!(p != kNoSlot && cell[p].sym == cell[s].sym && text_.cells_[p].counted)) add_occurrence(s);
        } else {
            add_occurrence(s);
        }
    }
    settle();
}

void ReplaceSession::realign_run(const PendingRun& pending) {
    auto& cell = text_.cells_;
    const std::uint32_t x = cell[pending.survivor].sym;
    const std::uint32_t rec = find({x, x});
    if (rec == UINT32_MAX) throw InternalError("pending run without its pair record");

    Slot after = text_.cells_[pending.old_start].occ_prev;
    unlink(rec, pending.old_start);

    // Greedy xx positions restart at the survivor: every even offset that has
    // an x to its right.
    std::size_t offset = 0;
    for (Slot q = pending.survivor; q != kNoSlot && cell[q].sym == x; q = cell[q].next, ++offset) {
        const Slot r = cell[q].next;
        const bool has_pair = r != kNoSlot && cell[r].sym == x;
        const bool want = has_pair && offset % 2 == 0;
        if (has_pair && text_.cells_[q].counted && !want) unlink(rec, q);
        if (want && !text_.cells_[q].counted) link_after(rec, after, q);
        if (want) after = q;
    }
}

std::vector<RunSpan> ReplaceSession::find_runs(std::uint32_t x) const {
    std::vector<RunSpan> runs;
    const std::uint32_t rec = find({x, x});
    if (rec == UINT32_MAX) return runs;
    auto& cell = text_.cells_;
    for (Slot s = records_[rec].head; s != kNoSlot; s = text_.cells_[s].occ_next) {
        if (cell[s].prev != kNoSlot && cell[cell[s].prev].sym == x) continue;
        Slot e = s;
        std::uint32_t k = 1;
        while (cell[e].next != kNoSlot && cell[cell[e].next].sym == x) {
            e = cell[e].next;
            ++k;
        }
        runs.push_back({s, e, k});
    }
    return runs;
}

std::uint32_t ReplaceSession::pair_count(SymbolPair p) const {
    std::uint32_t rec = find(p);
    return rec == UINT32_MAX ? 0 : records_[rec].count;
}

std::vector<Slot> ReplaceSession::occurrences(SymbolPair p) const {
    std::vector<Slot> out;
    std::uint32_t rec = find(p);
    if (rec == UINT32_MAX) return out;
    out.reserve(records_[rec].count);
    for (Slot s = records_[rec].head; s != kNoSlot; s = text_.cells_[s].occ_next) out.push_back(s);
    return out;
}

std::vector<PairCount> ReplaceSession::pair_counts() const {
    std::vector<PairCount> out;
    for (const auto& [k, rec] : table_) {
        const Record& r = records_[rec];
        if (r.count > 0) out.push_back({r.pair, r.count});
    }
    std::sort(out.begin(), out.end(), [](const PairCount& a, const PairCount& b) { return a.pair < b.pair; });
    return out;
}

ReplaceSession build_index(std::vector<std::uint32_t> text) { return ReplaceSession(std::move(text)); }

std::optional<PairCount> most_frequent_pair(ReplaceSession& session) { return session.most_frequent_pair(); }

MaximalRepeat extend_to_maximal_repeat(const ReplaceSession& session, SymbolPair p) {
    return session.extend_to_maximal_repeat(p);
}

void replace_all(ReplaceSession& session, std::span<const Slot> starts, std::size_t m, std::uint32_t v) {
    session.replace_all(starts, m, v);
}

}  // namespace ragc
