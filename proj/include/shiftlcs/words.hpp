#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlcs {

/// Symbols are 1-based: a word over alphabet size k only holds values in [1, k].
using Symbol = std::uint32_t;

class Word {
public:
    Word() = default;
    explicit Word(unsigned k);
    Word(std::vector<Symbol> symbols, unsigned k);

    /// 'a'..'z' map to 1..26. Throws if a letter falls outside [1, k].
    static Word from_letters(std::string_view text, unsigned k = 26);
    std::string to_letters() const;

    unsigned k() const noexcept { return k_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    /// The subword W[begin, end).
    Word subword(std::size_t begin, std::size_t end) const;
    /// The subsequence W[A] for a strictly increasing index set A.
    Word pick(std::span<const std::size_t> indices) const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
    unsigned k_ = 1;
};

//---------------------------------------------------------------------------//
// Seeding
//---------------------------------------------------------------------------//

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Per-trial stream seed: splitmix64(splitmix64(master) ^ trial). Depends on
/// nothing but its two arguments, so any worker can derive any trial.
constexpr std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept
{
    return splitmix64(splitmix64(master_seed) ^ trial_index);
}

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    std::uint64_t stream_seed() const noexcept { return mix_seed(master_seed, trial_index); }
};

/// Random source for word generation. Uses the fully specified mt19937_64
/// engine and its own unbiased bounded draw, so streams are identical across
/// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(const SeedSpec& seed, std::uint64_t substream = 0)
        : engine_(substream == 0 ? seed.stream_seed() : mix_seed(seed.stream_seed(), substream))
    {
    }

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t bound);
    /// Uniform symbol in [1, k].
    Symbol symbol(unsigned k) { return static_cast<Symbol>(below(k) + 1); }
    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

//---------------------------------------------------------------------------//
// Generation
//---------------------------------------------------------------------------//

Word random_word(unsigned k, std::size_t n, const SeedSpec& seed);
Word random_word(unsigned k, std::size_t n, Rng& rng);

/// V = Z[0, n), W = Z[s, n + s). The last n - s symbols of V equal the first
/// n - s symbols of W.
struct ShiftedPair {
    Word source;
    Word v;
    Word w;
    std::size_t shift = 0;

    std::size_t n() const noexcept { return v.size(); }
    std::size_t overlap() const noexcept { return v.size() - shift; }
    double alpha() const noexcept { return v.empty() ? 0.0 : static_cast<double>(shift) / static_cast<double>(v.size()); }
};

ShiftedPair make_shifted_pair(unsigned k, std::size_t n, std::size_t s, const SeedSpec& seed);
ShiftedPair make_shifted_pair(unsigned k, std::size_t n, std::size_t s, Rng& rng);
/// Windows an existing source word of length n + s.
ShiftedPair make_shifted_pair(Word source, std::size_t n);

/// Output of the placeholder-filling generator.
///
/// A = V[{i_1..i_t}] and B = W[b_start, n) with b_start = max(i_t - t + 2 - s, 0)
/// (0-based), so that A[l] sits strictly left of B[l] in Z for every l.
/// waits[l] is the number of symbols drawn from the R stream while matching A[l];
/// its sum is at most |B| exactly when A is a subsequence of B.
struct CoupledSample {
    Word source;
    std::vector<std::uint64_t> waits;
    std::vector<std::size_t> a_indices;
    std::size_t n = 0;
    std::size_t shift = 0;
    std::size_t b_start = 0;

    Word a() const;
    Word b() const;
    std::uint64_t total_wait() const noexcept;
};

/// Generates Z by filling n + s placeholders from two independent streams S and
/// R: A's placeholders come from S, then R is scanned until it reproduces the
/// current A symbol, writing each scanned symbol into the next empty B
/// placeholder (dropped once B is full). Leftover placeholders come from S.
CoupledSample coupled_generate(unsigned k,
                               std::size_t n,
                               std::size_t s,
                               std::span<const std::size_t> indices,
                               const SeedSpec& seed);

//---------------------------------------------------------------------------//
// Subsequences
//---------------------------------------------------------------------------//

class NotSubsequenceError : public std::invalid_argument {
public:
    NotSubsequenceError() : std::invalid_argument("not a subsequence") {}
};

/// Greedy leftmost scan.
bool is_subsequence(const Word& sub, const Word& host) noexcept;

/// Leftmost greedy embedding of sub in host, as host indices.
std::vector<std::size_t> leftmost_embedding(const Word& sub, const Word& host);

/// host with the leftmost embedding of sub removed.
Word delete_embedded(const Word& host, const Word& sub);

}  // namespace shiftlcs
