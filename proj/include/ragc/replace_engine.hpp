#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "ragc/huge_alloc.hpp"

namespace ragc {

using Slot = std::uint32_t;
inline constexpr Slot kNoSlot = UINT32_MAX;

struct SymbolPair {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    auto operator<=>(const SymbolPair&) const = default;
};

struct PairCount {
    SymbolPair pair;
    std::uint32_t count = 0;
    bool operator==(const PairCount&) const = default;
};

/// A repeat grown from a pair, with its non-overlapping occurrences as
/// inclusive slot ranges in text order.
struct MaximalRepeat {
    std::vector<std::uint32_t> symbols;
    std::vector<Slot> starts;
    std::vector<Slot> ends;
    std::size_t frequency() const { return starts.size(); }
};

/// Maximal single-symbol run x^k found in the live text.
struct RunSpan {
    Slot start;
    Slot end;
    std::uint32_t length;
};

/// Symbol array with live prev/next links; replaced ranges leave tombstones.
class WorkText {
public:
    explicit WorkText(std::vector<std::uint32_t> symbols);

    std::size_t capacity() const { return cells_.size(); }
    std::size_t live_length() const { return live_; }
    Slot head() const { return live_ == 0 ? kNoSlot : 0; }
    Slot next(Slot s) const { return cells_[s].next; }
    Slot prev(Slot s) const { return cells_[s].prev; }
    std::uint32_t symbol(Slot s) const { return cells_[s].sym; }
    bool live(Slot s) const { return cells_[s].next != kTombstone; }
    std::vector<std::uint32_t> live_symbols() const;

private:
    friend class ReplaceSession;
    static constexpr Slot kTombstone = UINT32_MAX - 1;

    // Text links and the pair-occurrence links share one cell per slot.
    struct Cell {
        std::uint32_t sym;
        Slot prev;
        Slot next;
        Slot occ_prev;
        Slot occ_next;
        std::uint32_t counted;
    };

    std::vector<Cell, HugePageAllocator<Cell>> cells_;
    std::size_t live_ = 0;
};

/// Working text plus the pair-frequency index over it.
///
/// Pair frequencies are greedy left-to-right non-overlapping counts: every
/// occurrence of a pair ab with a != b counts, and inside a maximal run of x
/// the pair xx counts at the run start and every second position after it.
/// Each pair keeps its counted occurrences in a slot-ordered list threaded
/// through the text. Pairs with count in [2, B) live in per-count buckets
/// ordered by leftmost occurrence, B = ceil(sqrt(n + 1)); pairs with count
/// >= B share one overflow bucket.
///
/// A session is single-owner mutable state.
class ReplaceSession {
public:
    explicit ReplaceSession(std::vector<std::uint32_t> text);

    const WorkText& text() const { return text_; }
    std::size_t bucket_count() const { return top_threshold_; }

    /// Highest count, ties broken by leftmost occurrence. When no pair occurs
    /// twice, returns the first pair of the text (count 1). Empty index: none.
    std::optional<PairCount> most_frequent_pair();

    /// Grows `p`'s occurrences one symbol to the left until blocked, then to the
    /// right. A step is taken only when every occurrence has the same neighbor
    /// and the grown occurrences stay pairwise disjoint.
    MaximalRepeat extend_to_maximal_repeat(SymbolPair p) const;

    /// Collapses each range [starts[i], starts[i] + m) to the single symbol v.
    /// Ranges must be disjoint, live and in text order.
    void replace_all(std::span<const Slot> starts, std::size_t m, std::uint32_t v);

    struct Region {
        Slot start;
        Slot end;
        std::uint32_t symbol;
    };
    /// Collapses inclusive ranges, each to its own symbol. Every region symbol
    /// must be >= fresh_from and every pre-existing symbol < fresh_from.
    void replace_regions(std::span<const Region> regions, std::uint32_t fresh_from);

    /// All maximal runs x^k with k >= 2, in text order.
    std::vector<RunSpan> find_runs(std::uint32_t x) const;

    std::uint32_t pair_count(SymbolPair p) const;
    std::vector<Slot> occurrences(SymbolPair p) const;
    /// Every pair with a nonzero count.
    std::vector<PairCount> pair_counts() const;

private:
    struct Record {
        SymbolPair pair;
        std::uint32_t count = 0;
        Slot head = kNoSlot;
        Slot tail = kNoSlot;
        std::uint32_t stamp = 0;
        bool alive = false;
        bool in_top = false;
    };
    struct HeapEntry {
        Slot head;
        std::uint32_t rec;
    };
    struct PendingRun {
        Slot old_start;   // tombstoned slot still holding the counted xx node
        Slot survivor;    // first live slot of the trimmed run
    };

    static std::uint64_t key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }
    std::uint32_t find(SymbolPair p) const;
    std::uint32_t find_or_create(SymbolPair p);
    void set_count(Record& r, std::uint32_t count);
    void touch(std::uint32_t rec);
    void link_tail(std::uint32_t rec, Slot s);
    void link_after(std::uint32_t rec, Slot after, Slot s);
    void unlink(std::uint32_t rec, Slot s);
    void add_occurrence(Slot s);
    void remove_occurrence(Slot s, Slot right);
    void realign_run(const PendingRun& p);
    void settle();
    void push_bucket(std::uint32_t rec);
    void compact_bucket(std::uint32_t c);

    WorkText text_;

    std::vector<Record, HugePageAllocator<Record>> records_;
    std::vector<std::uint32_t> free_records_;
    absl::flat_hash_map<std::uint64_t, std::uint32_t, absl::Hash<std::uint64_t>, std::equal_to<>,
                        HugePageAllocator<std::pair<const std::uint64_t, std::uint32_t>>>
        table_;

    std::uint32_t top_threshold_ = 2;
    std::vector<std::vector<HeapEntry>> buckets_;
    std::vector<std::size_t> bucket_live_;
    std::vector<std::uint32_t> top_;
    std::uint32_t max_bucket_ = 0;

    std::uint32_t stamp_ = 1;
    std::vector<std::uint32_t> touched_;
    std::vector<PendingRun> pending_;
};

// Free-function spellings of the session operations.
ReplaceSession build_index(std::vector<std::uint32_t> text);
std::optional<PairCount> most_frequent_pair(ReplaceSession& session);
MaximalRepeat extend_to_maximal_repeat(const ReplaceSession& session, SymbolPair p);
void replace_all(ReplaceSession& session, std::span<const Slot> starts, std::size_t m, std::uint32_t v);

}  // namespace ragc
