#include "shiftlcs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shiftlcs {

namespace {

// Slack for eps * n landing a hair off an integer (0.01 * 300 and friends).
constexpr double kRoundingSlack = 1e-9;

void check_eps(double eps)
{
    if (!(eps > 0.0) || !(eps <= 1.0))
        throw std::invalid_argument("eps must lie in (0, 1]");
}

}  // namespace

std::vector<SpannedEdge> spanned_edges(const Alignment& a, std::size_t s)
{
    std::vector<SpannedEdge> out;
    out.reserve(a.size());
    for (const Edge& e : a.edges)
        out.push_back({e.i, e.j, span_of(e, s)});
    return out;
}

std::int64_t min_span(const Alignment& a, std::size_t s)
{
    if (a.empty())
        throw std::invalid_argument("alignment is empty");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const Edge& e : a.edges)
        best = std::min(best, span_of(e, s));
    return best;
}

std::string_view to_string(SpanCase c) noexcept
{
    switch (c) {
    case SpanCase::NonPositive: return "nonpositive";
    case SpanCase::Small: return "small";
    case SpanCase::Large: return "large";
    }
    return "unknown";
}

std::int64_t small_span_limit(std::size_t n, double eps)
{
    check_eps(eps);
    return static_cast<std::int64_t>(std::floor(eps * static_cast<double>(n) + kRoundingSlack));
}

std::size_t block_length(std::size_t n, double eps)
{
    check_eps(eps);
    const double raw = std::ceil(eps * static_cast<double>(n) - kRoundingSlack);
    return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

SpanCase classify_min_span(const Alignment& a, std::size_t s, std::size_t n, double eps)
{
    const std::int64_t lowest = min_span(a, s);
    if (lowest <= 0)
        return SpanCase::NonPositive;
    if (lowest <= small_span_limit(n, eps))
        return SpanCase::Small;
    return SpanCase::Large;
}

//---------------------------------------------------------------------------//

bool BlockPartition::valid_for(std::size_t n, std::size_t m) const noexcept
{
    if (v_blocks.size() != w_blocks.size() || v_blocks.empty())
        return false;
    auto covers = [](const std::vector<Interval>& blocks, std::size_t len) {
        std::size_t cursor = 0;
        for (const Interval& b : blocks) {
            if (b.begin != cursor || b.end < b.begin)
                return false;
            cursor = b.end;
        }
        return cursor == len;
    };
    return covers(v_blocks, n) && covers(w_blocks, m);
}

bool BlockPartition::dominates(const Alignment& a) const noexcept
{
    std::size_t p = 0;
    for (const Edge& e : a.edges) {
        while (p < v_blocks.size() && !v_blocks[p].contains(e.i))
            ++p;
        if (p == v_blocks.size() || !w_blocks[p].contains(e.j))
            return false;
    }
    return true;
}

bool BlockPartition::nonoverlapping(std::size_t s) const noexcept
{
    for (std::size_t p = 0; p < v_blocks.size(); ++p) {
        const Interval& vb = v_blocks[p];
        const Interval& wb = w_blocks[p];
        if (vb.empty() || wb.empty())
            continue;
        const std::size_t w_lo = wb.begin + s;
        const std::size_t w_hi = wb.end + s;
        if (w_lo < vb.end && vb.begin < w_hi)
            return false;
    }
    return true;
}

BlockPartition build_block_partition(const Alignment& a, const Word& v, const Word& w, std::size_t s, double eps)
{
    const std::size_t n = v.size();
    const std::size_t m = w.size();
    if (!a.valid_for(v, w))
        throw std::invalid_argument("alignment is not valid for these words");
    const std::int64_t limit = small_span_limit(n, eps);
    for (const Edge& e : a.edges) {
        if (span_of(e, s) <= limit)
            throw std::invalid_argument("every edge span must exceed eps * n");
    }

    const std::size_t len = block_length(n, eps);
    const std::size_t v_count = n == 0 ? 0 : (n + len - 1) / len;

    // starts[p] = W endpoint of the first edge leaving V block p, or unset.
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> starts(v_count + 1, unset);
    for (const Edge& e : a.edges) {
        const std::size_t p = e.i / len;
        if (starts[p] == unset)
            starts[p] = e.j;
    }
    starts[v_count] = m;
    for (std::size_t p = v_count; p-- > 0;) {
        if (starts[p] == unset)
            starts[p] = starts[p + 1];
    }

    BlockPartition out;
    out.v_blocks.reserve(v_count + 1);
    out.w_blocks.reserve(v_count + 1);
    out.v_blocks.push_back({0, 0});
    out.w_blocks.push_back({0, v_count == 0 ? m : starts[0]});
    for (std::size_t p = 0; p < v_count; ++p) {
        out.v_blocks.push_back({p * len, std::min(n, (p + 1) * len)});
        out.w_blocks.push_back({starts[p], starts[p + 1]});
    }
    return out;
}

std::size_t dominated_lcs(const Word& v, const Word& w, const BlockPartition& p)
{
    if (!p.valid_for(v.size(), w.size()))
        throw std::invalid_argument("block partition does not fit these words");
    std::size_t total = 0;
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        const Interval& vb = p.v_blocks[idx];
        const Interval& wb = p.w_blocks[idx];
        if (vb.empty() || wb.empty())
            continue;
        total += lcs_dp(v.subword(vb.begin, vb.end), w.subword(wb.begin, wb.end));
    }
    return total;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t j) noexcept
{
    if (j > n)
        return 0;
    j = std::min(j, n - j);
    __extension__ typedef unsigned __int128 u128;
    constexpr u128 cap = std::numeric_limits<std::uint64_t>::max();
    u128 c = 1;
    // C(n - j + i, i) grows with i, so once it passes the cap it stays there.
    for (std::uint64_t i = 1; i <= j; ++i) {
        c = c * (n - j + i) / i;
        if (c > cap)
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(c);
}

std::uint64_t blockcount_bound(std::size_t n, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");
    const auto blocks = static_cast<std::uint64_t>(std::llround(1.0 / eps));
    const std::uint64_t c = binomial_saturating(n, blocks);
    __extension__ typedef unsigned __int128 u128;
    const u128 squared = static_cast<u128>(c) * c;
    if (squared > std::numeric_limits<std::uint64_t>::max())
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(squared);
}

}  // namespace shiftlcs
