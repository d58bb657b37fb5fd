#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "shiftlcs/lcs.hpp"
#include "shiftlcs/words.hpp"

namespace shiftlcs {

/// Fraction of n separating small from large spans.
inline constexpr double kDefaultEps = 0.01;

/// Horizontal displacement of an edge when W is drawn s positions right of V.
/// Zero span means both endpoints are the same symbol of the source word.
constexpr std::int64_t span_of(Edge e, std::size_t s) noexcept
{
    return static_cast<std::int64_t>(e.j) + static_cast<std::int64_t>(s) - static_cast<std::int64_t>(e.i);
}

struct SpannedEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    std::int64_t span = 0;
};

std::vector<SpannedEdge> spanned_edges(const Alignment& a, std::size_t s);
std::int64_t min_span(const Alignment& a, std::size_t s);

enum class SpanCase { NonPositive, Small, Large };

std::string_view to_string(SpanCase c) noexcept;

/// Largest span still classified Small: floor(eps * n), tolerant of rounding
/// in eps * n.
std::int64_t small_span_limit(std::size_t n, double eps);
/// V-block length ceil(eps * n), at least 1.
std::size_t block_length(std::size_t n, double eps);

/// NonPositive if the minimum span is <= 0, Small if it is <= eps * n,
/// otherwise Large. Throws on an empty alignment.
SpanCase classify_min_span(const Alignment& a, std::size_t s, std::size_t n, double eps = kDefaultEps);

struct Interval {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - begin; }
    bool empty() const noexcept { return begin == end; }
    bool contains(std::size_t x) const noexcept { return begin <= x && x < end; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Paired ordered partitions of V and W; pair p is (v_blocks[p], w_blocks[p]).
struct BlockPartition {
    std::vector<Interval> v_blocks;
    std::vector<Interval> w_blocks;

    std::size_t size() const noexcept { return v_blocks.size(); }

    /// Both lists contiguous, in order, of equal count, covering [0, n) and [0, m).
    bool valid_for(std::size_t n, std::size_t m) const noexcept;
    /// Every edge joins a V-block to its paired W-block.
    bool dominates(const Alignment& a) const noexcept;
    /// No pair shares a source position: V[x] is Z[x] and W[y] is Z[y + s].
    bool nonoverlapping(std::size_t s) const noexcept;
};

/// Partition dominating an alignment whose spans all exceed eps * n.
///
/// V is cut into blocks of block_length(n, eps) (the last may be shorter). W
/// block p starts at the W endpoint of the first edge leaving V block p; a V
/// block without edges takes the start of the next block that has one (or
/// |W|), giving an empty W block. The W prefix before the first edge goes to a
/// leading pair whose V block is empty, so the result has one pair more than
/// there are V blocks.
BlockPartition build_block_partition(const Alignment& a, const Word& v, const Word& w, std::size_t s, double eps);

/// Sum over pairs of lcs_dp(V_p, W_p).
std::size_t dominated_lcs(const Word& v, const Word& w, const BlockPartition& p);

/// binom(n, round(1/eps))^2, saturating at UINT64_MAX.
std::uint64_t blockcount_bound(std::size_t n, double eps);

/// Exact binom(n, j), saturating at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t j) noexcept;

}  // namespace shiftlcs
