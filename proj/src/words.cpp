#include "shiftlcs/words.hpp"

#include <algorithm>
#include <numeric>

namespace shiftlcs {

namespace {

void check_alphabet(unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("alphabet size k must be at least 1");
}

}  // namespace

Word::Word(unsigned k) : k_(k)
{
    check_alphabet(k);
}

Word::Word(std::vector<Symbol> symbols, unsigned k) : symbols_(std::move(symbols)), k_(k)
{
    check_alphabet(k);
    for (Symbol s : symbols_) {
        if (s < 1 || s > k)
            throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet [1, "
                                        + std::to_string(k) + "]");
    }
}

Word Word::from_letters(std::string_view text, unsigned k)
{
    std::vector<Symbol> symbols;
    symbols.reserve(text.size());
    for (char c : text) {
        if (c < 'a' || c > 'z')
            throw std::invalid_argument(std::string("invalid letter '") + c + "'");
        symbols.push_back(static_cast<Symbol>(c - 'a' + 1));
    }
    return Word(std::move(symbols), k);
}

std::string Word::to_letters() const
{
    if (k_ > 26)
        throw std::invalid_argument("letter form requires k <= 26");
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_)
        out.push_back(static_cast<char>('a' + s - 1));
    return out;
}

Word Word::subword(std::size_t begin, std::size_t end) const
{
    if (begin > end || end > symbols_.size())
        throw std::out_of_range("subword bounds out of range");
    return Word(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(begin),
                                    symbols_.begin() + static_cast<std::ptrdiff_t>(end)),
                k_);
}

Word Word::pick(std::span<const std::size_t> indices) const
{
    std::vector<Symbol> out;
    out.reserve(indices.size());
    for (std::size_t idx = 0; idx < indices.size(); ++idx) {
        if (indices[idx] >= symbols_.size() || (idx > 0 && indices[idx] <= indices[idx - 1]))
            throw std::invalid_argument("index set must be strictly increasing and in range");
        out.push_back(symbols_[indices[idx]]);
    }
    return Word(std::move(out), k_);
}

//---------------------------------------------------------------------------//

std::uint64_t Rng::below(std::uint64_t bound)
{
    __extension__ typedef unsigned __int128 u128;
    std::uint64_t x = next();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = next();
            m = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

Word random_word(unsigned k, std::size_t n, Rng& rng)
{
    check_alphabet(k);
    std::vector<Symbol> symbols(n);
    for (auto& s : symbols)
        s = rng.symbol(k);
    return Word(std::move(symbols), k);
}

Word random_word(unsigned k, std::size_t n, const SeedSpec& seed)
{
    Rng rng(seed);
    return random_word(k, n, rng);
}

ShiftedPair make_shifted_pair(Word source, std::size_t n)
{
    if (source.size() < n || source.size() > 2 * n)
        throw std::invalid_argument("source length must lie in [n, 2n]");
    const std::size_t s = source.size() - n;
    ShiftedPair pair;
    pair.v = source.subword(0, n);
    pair.w = source.subword(s, n + s);
    pair.shift = s;
    pair.source = std::move(source);
    return pair;
}

ShiftedPair make_shifted_pair(unsigned k, std::size_t n, std::size_t s, Rng& rng)
{
    if (s > n)
        throw std::invalid_argument("shift s must satisfy s <= n");
    return make_shifted_pair(random_word(k, n + s, rng), n);
}

ShiftedPair make_shifted_pair(unsigned k, std::size_t n, std::size_t s, const SeedSpec& seed)
{
    Rng rng(seed);
    return make_shifted_pair(k, n, s, rng);
}

//---------------------------------------------------------------------------//

Word CoupledSample::a() const
{
    return source.subword(0, n).pick(a_indices);
}

Word CoupledSample::b() const
{
    return source.subword(shift + b_start, shift + n);
}

std::uint64_t CoupledSample::total_wait() const noexcept
{
    return std::accumulate(waits.begin(), waits.end(), std::uint64_t{0});
}

CoupledSample coupled_generate(unsigned k,
                               std::size_t n,
                               std::size_t s,
                               std::span<const std::size_t> indices,
                               const SeedSpec& seed)
{
    check_alphabet(k);
    if (indices.empty())
        throw std::invalid_argument("index set must be nonempty");
    if (s > n)
        throw std::invalid_argument("shift s must satisfy s <= n");
    for (std::size_t l = 0; l < indices.size(); ++l) {
        if (indices[l] >= n || (l > 0 && indices[l] <= indices[l - 1]))
            throw std::invalid_argument("indices must be strictly increasing and below n");
    }

    const auto t = static_cast<std::int64_t>(indices.size());
    const auto last = static_cast<std::int64_t>(indices.back());
    // One past the textbook max(i_t - t + 1 - s, 0): with 0-based positions that
    // start lets A's last placeholder coincide with a B placeholder.
    const std::int64_t b_start = std::max<std::int64_t>(last - t + 2 - static_cast<std::int64_t>(s), 0);

    CoupledSample out;
    out.n = n;
    out.shift = s;
    out.b_start = static_cast<std::size_t>(b_start);
    out.a_indices.assign(indices.begin(), indices.end());
    out.waits.reserve(indices.size());

    // 0 marks an empty placeholder.
    std::vector<Symbol> z(n + s, 0);
    Rng s_stream(seed, 1);
    Rng r_stream(seed, 2);

    const std::size_t b_origin = s + out.b_start;
    const std::size_t b_len = n - out.b_start;
    std::size_t next_b = 0;

    for (std::size_t pos : indices) {
        if (z[pos] == 0)
            z[pos] = s_stream.symbol(k);
        const Symbol target = z[pos];
        std::uint64_t wait = 0;
        for (;;) {
            const Symbol drawn = r_stream.symbol(k);
            ++wait;
            if (next_b < b_len) {
                // B[next_b] lies strictly right of every A placeholder filled so far.
                if (z[b_origin + next_b] != 0)
                    throw std::logic_error("coupled generator filled a B placeholder twice");
                z[b_origin + next_b] = drawn;
                ++next_b;
            }
            if (drawn == target)
                break;
        }
        out.waits.push_back(wait);
    }

    for (auto& sym : z) {
        if (sym == 0)
            sym = s_stream.symbol(k);
    }
    out.source = Word(std::move(z), k);
    return out;
}

//---------------------------------------------------------------------------//

bool is_subsequence(const Word& sub, const Word& host) noexcept
{
    std::size_t matched = 0;
    for (std::size_t i = 0; i < host.size() && matched < sub.size(); ++i) {
        if (host[i] == sub[matched])
            ++matched;
    }
    return matched == sub.size();
}

std::vector<std::size_t> leftmost_embedding(const Word& sub, const Word& host)
{
    std::vector<std::size_t> positions;
    positions.reserve(sub.size());
    for (std::size_t i = 0; i < host.size() && positions.size() < sub.size(); ++i) {
        if (host[i] == sub[positions.size()])
            positions.push_back(i);
    }
    if (positions.size() != sub.size())
        throw NotSubsequenceError();
    return positions;
}

Word delete_embedded(const Word& host, const Word& sub)
{
    const auto positions = leftmost_embedding(sub, host);
    std::vector<Symbol> kept;
    kept.reserve(host.size() - sub.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < host.size(); ++i) {
        if (next < positions.size() && positions[next] == i)
            ++next;
        else
            kept.push_back(host[i]);
    }
    return Word(std::move(kept), host.k());
}

}  // namespace shiftlcs
