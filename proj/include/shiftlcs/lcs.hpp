#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "shiftlcs/words.hpp"

namespace shiftlcs {

/// An edge joins V[i] to W[j].
struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A set of noncrossing edges, strictly increasing in both coordinates.
struct Alignment {
    std::vector<Edge> edges;

    std::size_t size() const noexcept { return edges.size(); }
    bool empty() const noexcept { return edges.empty(); }

    /// Monotone in both coordinates and every edge joins equal symbols.
    bool valid_for(const Word& v, const Word& w) const noexcept;
};

enum class Kernel { Oracle, Dp, BitParallel };

Kernel parse_kernel(std::string_view name);
std::string_view to_string(Kernel kernel) noexcept;

/// Largest shorter-word length lcs_oracle accepts.
inline constexpr std::size_t kOracleMaxLength = 14;

/// Exhaustive reference: tries subsequences of the shorter word from the
/// longest down. Throws std::length_error past kOracleMaxLength.
std::size_t lcs_oracle(const Word& v, const Word& w);

/// Quadratic DP with a single rolling row over the shorter word.
std::size_t lcs_dp(const Word& v, const Word& w);

/// Bit-parallel row update over 64-bit blocks, shorter word as the pattern:
///   X <- (X + (X & M[c])) | (X & ~M[c]);  LCS = m - popcount(X).
std::size_t lcs_bitparallel(const Word& v, const Word& w);

std::size_t lcs(const Word& v, const Word& w, Kernel kernel);

/// A maximum alignment; the lexicographically smallest edge list by (i, j).
Alignment lcs_witness(const Word& v, const Word& w);

/// Edges (i, j) are admitted only when lo <= j + offset - i <= hi.
struct SpanWindow {
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();

    bool admits(std::int64_t span) const noexcept { return lo <= span && span <= hi; }
};

std::size_t constrained_lcs(const Word& v, const Word& w, std::int64_t offset, SpanWindow window);
Alignment constrained_witness(const Word& v, const Word& w, std::int64_t offset, SpanWindow window);

/// Maximum length of a common subsequence of pair.v and pair.w that uses e and
/// in which e has the largest span (ties allowed). Never less than 1.
/// Throws for unequal endpoint symbols or n > kOracleMaxLength.
std::size_t bigshift_bruteforce(const ShiftedPair& pair, Edge e);

}  // namespace shiftlcs
