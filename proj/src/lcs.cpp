#include "shiftlcs/lcs.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>

#include "shiftlcs/geometry.hpp"

namespace shiftlcs {

bool Alignment::valid_for(const Word& v, const Word& w) const noexcept
{
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        const Edge& e = edges[idx];
        if (e.i >= v.size() || e.j >= w.size() || v[e.i] != w[e.j])
            return false;
        if (idx > 0 && (e.i <= edges[idx - 1].i || e.j <= edges[idx - 1].j))
            return false;
    }
    return true;
}

Kernel parse_kernel(std::string_view name)
{
    if (name == "oracle")
        return Kernel::Oracle;
    if (name == "dp")
        return Kernel::Dp;
    if (name == "bitparallel")
        return Kernel::BitParallel;
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::string_view to_string(Kernel kernel) noexcept
{
    switch (kernel) {
    case Kernel::Oracle: return "oracle";
    case Kernel::Dp: return "dp";
    case Kernel::BitParallel: return "bitparallel";
    }
    return "unknown";
}

//---------------------------------------------------------------------------//

std::size_t lcs_oracle(const Word& v, const Word& w)
{
    const Word& shorter = v.size() <= w.size() ? v : w;
    const Word& longer = v.size() <= w.size() ? w : v;
    const std::size_t m = shorter.size();
    if (m > kOracleMaxLength)
        throw std::length_error("lcs_oracle accepts words of at most "
                                + std::to_string(kOracleMaxLength) + " symbols");

    std::vector<Symbol> picked;
    picked.reserve(m);
    for (std::size_t size = m; size > 0; --size) {
        // Gosper's hack over masks with exactly `size` bits.
        std::uint32_t mask = (std::uint32_t{1} << size) - 1;
        const std::uint32_t limit = std::uint32_t{1} << m;
        while (mask < limit) {
            picked.clear();
            for (std::size_t b = 0; b < m; ++b) {
                if (mask & (std::uint32_t{1} << b))
                    picked.push_back(shorter[b]);
            }
            std::size_t matched = 0;
            for (std::size_t i = 0; i < longer.size() && matched < picked.size(); ++i) {
                if (longer[i] == picked[matched])
                    ++matched;
            }
            if (matched == picked.size())
                return size;
            const std::uint32_t low = mask & (0 - mask);
            const std::uint32_t ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    return 0;
}

std::size_t lcs_dp(const Word& v, const Word& w)
{
    const Word& cols = v.size() <= w.size() ? v : w;
    const Word& rows = v.size() <= w.size() ? w : v;
    std::vector<std::uint32_t> row(cols.size() + 1, 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Symbol c = rows[r];
        std::uint32_t diag = 0;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::uint32_t up = row[j + 1];
            row[j + 1] = cols[j] == c ? diag + 1 : std::max(up, row[j]);
            diag = up;
        }
    }
    return row.back();
}

std::size_t lcs_bitparallel(const Word& v, const Word& w)
{
    const Word& pattern = v.size() <= w.size() ? v : w;
    const Word& text = v.size() <= w.size() ? w : v;
    const std::size_t m = pattern.size();
    if (m == 0)
        return 0;
    const std::size_t blocks = (m + 63) / 64;

    // Compress the pattern alphabet; text symbols absent from it leave X unchanged.
    std::vector<Symbol> alphabet(pattern.begin(), pattern.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    auto row_of = [&](Symbol s) -> std::ptrdiff_t {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), s);
        return (it != alphabet.end() && *it == s) ? it - alphabet.begin() : -1;
    };

    std::vector<std::uint64_t> masks(alphabet.size() * blocks, 0);
    for (std::size_t p = 0; p < m; ++p) {
        const auto r = static_cast<std::size_t>(row_of(pattern[p]));
        masks[r * blocks + p / 64] |= std::uint64_t{1} << (p % 64);
    }

    const std::uint64_t top_mask = (m % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (m % 64)) - 1);
    std::vector<std::uint64_t> x(blocks, ~std::uint64_t{0});
    x.back() = top_mask;

    for (Symbol c : text) {
        const std::ptrdiff_t r = row_of(c);
        if (r < 0)
            continue;
        const std::uint64_t* mask = masks.data() + static_cast<std::size_t>(r) * blocks;
        std::uint64_t carry = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::uint64_t xb = x[b];
            const std::uint64_t u = xb & mask[b];
            const std::uint64_t partial = xb + u;
            const std::uint64_t sum = partial + carry;
            carry = static_cast<std::uint64_t>(partial < xb) | static_cast<std::uint64_t>(sum < partial);
            x[b] = sum | (xb & ~mask[b]);
        }
        x.back() &= top_mask;
    }

    std::size_t ones = 0;
    for (std::uint64_t b : x)
        ones += static_cast<std::size_t>(std::popcount(b));
    return m - ones;
}

std::size_t lcs(const Word& v, const Word& w, Kernel kernel)
{
    switch (kernel) {
    case Kernel::Oracle: return lcs_oracle(v, w);
    case Kernel::Dp: return lcs_dp(v, w);
    case Kernel::BitParallel: return lcs_bitparallel(v, w);
    }
    throw std::invalid_argument("unknown kernel");
}

//---------------------------------------------------------------------------//

namespace {

std::int64_t edge_span(std::size_t i, std::size_t j, std::int64_t offset) noexcept
{
    return static_cast<std::int64_t>(j) + offset - static_cast<std::int64_t>(i);
}

/// suffix[i][j] = constrained LCS of v[i..) and w[j..), row-major (m + 1) wide.
std::vector<std::uint32_t> suffix_table(const Word& v, const Word& w, std::int64_t offset, SpanWindow window)
{
    const std::size_t n = v.size();
    const std::size_t m = w.size();
    const std::size_t width = m + 1;
    std::vector<std::uint32_t> table((n + 1) * width, 0);
    for (std::size_t i = n; i-- > 0;) {
        std::uint32_t* row = table.data() + i * width;
        const std::uint32_t* below = row + width;
        for (std::size_t j = m; j-- > 0;) {
            std::uint32_t best = std::max(below[j], row[j + 1]);
            if (v[i] == w[j] && window.admits(edge_span(i, j, offset)))
                best = std::max(best, below[j + 1] + 1);
            row[j] = best;
        }
    }
    return table;
}

}  // namespace

std::size_t constrained_lcs(const Word& v, const Word& w, std::int64_t offset, SpanWindow window)
{
    std::vector<std::uint32_t> row(w.size() + 1, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::uint32_t diag = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            const std::uint32_t up = row[j + 1];
            std::uint32_t best = std::max(up, row[j]);
            if (v[i] == w[j] && window.admits(edge_span(i, j, offset)))
                best = std::max(best, diag + 1);
            row[j + 1] = best;
            diag = up;
        }
    }
    return row.back();
}

Alignment constrained_witness(const Word& v, const Word& w, std::int64_t offset, SpanWindow window)
{
    const std::size_t n = v.size();
    const std::size_t m = w.size();
    const std::size_t width = m + 1;
    const auto table = suffix_table(v, w, offset, window);
    auto at = [&](std::size_t i, std::size_t j) { return table[i * width + j]; };

    // Positions of w sorted by (symbol, position).
    std::vector<std::size_t> order(m);
    for (std::size_t j = 0; j < m; ++j)
        order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });

    // First column >= from matching v[i] whose edge the window admits.
    auto first_admissible = [&](std::size_t i, std::size_t from) -> std::optional<std::size_t> {
        if (window.lo != std::numeric_limits<std::int64_t>::min()) {
            const std::int64_t lo_col = static_cast<std::int64_t>(i) - offset + window.lo;
            if (lo_col > static_cast<std::int64_t>(from))
                from = static_cast<std::size_t>(lo_col);
        }
        if (from >= m)
            return std::nullopt;
        const Symbol sym = v[i];
        auto it = std::partition_point(order.begin(), order.end(), [&](std::size_t pos) {
            return w[pos] < sym || (w[pos] == sym && pos < from);
        });
        if (it == order.end() || w[*it] != sym || !window.admits(edge_span(i, *it, offset)))
            return std::nullopt;
        return *it;
    };

    Alignment out;
    std::size_t j = 0;
    std::uint32_t remaining = at(0, 0);
    // Smallest row first. Within a row the suffix value is nonincreasing in the
    // column, so the first admissible occurrence is the only candidate.
    for (std::size_t i = 0; i < n && remaining > 0; ++i) {
        const auto col = first_admissible(i, j);
        if (!col || at(i + 1, *col + 1) + 1 != remaining)
            continue;
        out.edges.push_back({i, *col});
        --remaining;
        j = *col + 1;
    }
    if (remaining != 0)
        throw std::logic_error("witness traceback lost the optimum");
    return out;
}

Alignment lcs_witness(const Word& v, const Word& w)
{
    return constrained_witness(v, w, 0, SpanWindow{});
}

std::size_t bigshift_bruteforce(const ShiftedPair& pair, Edge e)
{
    const Word& v = pair.v;
    const Word& w = pair.w;
    if (v.size() > kOracleMaxLength)
        throw std::length_error("bigshift_bruteforce accepts n of at most "
                                + std::to_string(kOracleMaxLength));
    if (e.i >= v.size() || e.j >= w.size())
        throw std::out_of_range("edge endpoint out of range");
    if (v[e.i] != w[e.j])
        throw std::invalid_argument("edge joins unequal symbols");

    const auto s = static_cast<std::int64_t>(pair.shift);
    const std::int64_t span = span_of(e, pair.shift);
    const SpanWindow window{std::numeric_limits<std::int64_t>::min(), span};

    const std::size_t left = constrained_lcs(v.subword(0, e.i), w.subword(0, e.j), s, window);
    const std::int64_t right_offset = s + static_cast<std::int64_t>(e.j) - static_cast<std::int64_t>(e.i);
    const std::size_t right = constrained_lcs(v.subword(e.i + 1, v.size()), w.subword(e.j + 1, w.size()),
                                              right_offset, window);
    return left + 1 + right;
}

}  // namespace shiftlcs
