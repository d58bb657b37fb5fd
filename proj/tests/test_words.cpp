#include <doctest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "shiftlcs/word_io.hpp"
#include "shiftlcs/words.hpp"

using namespace shiftlcs;

namespace {

Word letters(const char* text, unsigned k = 26) { return Word::from_letters(text, k); }

}  // namespace

TEST_CASE("words hold symbols in [1, k]")
{
    CHECK_THROWS_AS(Word({0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(Word({3}, 2), std::invalid_argument);
    CHECK_THROWS_AS(Word(0u), std::invalid_argument);
    const Word w({1, 2, 2, 1}, 2);
    CHECK(w.size() == 4);
    CHECK(w.to_letters() == "abba");
    CHECK(w.subword(1, 3).to_letters() == "bb");
    const std::vector<std::size_t> idx{0, 3};
    CHECK(w.pick(idx).to_letters() == "aa");
    CHECK(Word(3).empty());
    CHECK_THROWS(letters("abc", 2));
}

TEST_CASE("seed mixing depends only on (master, trial)")
{
    CHECK(mix_seed(7, 3) == mix_seed(7, 3));
    CHECK(mix_seed(7, 3) != mix_seed(7, 4));
    CHECK(mix_seed(7, 3) != mix_seed(8, 3));
    CHECK(SeedSpec{7, 3}.stream_seed() == mix_seed(7, 3));
    // splitmix64 reference output for state 0 after one increment
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);

    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 1000; ++t)
        seen.insert(mix_seed(42, t));
    CHECK(seen.size() == 1000);
}

TEST_CASE("bounded draws stay in range and cover it")
{
    Rng rng(SeedSpec{1, 0});
    std::vector<int> hits(7);
    for (int i = 0; i < 7000; ++i) {
        const auto x = rng.below(7);
        REQUIRE(x < 7);
        ++hits[x];
    }
    for (int h : hits)
        CHECK(h > 800);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("random_word")
{
    SUBCASE("one-symbol alphabet")
    {
        CHECK(random_word(1, 5, SeedSpec{123, 9}).to_letters() == "aaaaa");
    }
    SUBCASE("zero length")
    {
        CHECK(random_word(2, 0, SeedSpec{5, 0}).empty());
    }
    SUBCASE("rejects k = 0")
    {
        CHECK_THROWS_AS(random_word(0, 3, SeedSpec{}), std::invalid_argument);
    }
    SUBCASE("repeatable")
    {
        const SeedSpec seed{99, 17};
        CHECK(random_word(2, 3, seed) == random_word(2, 3, seed));
        CHECK(random_word(26, 100, seed) == random_word(26, 100, seed));
        CHECK(random_word(26, 100, seed) != random_word(26, 100, SeedSpec{99, 18}));
    }
    SUBCASE("uniform over the 8 words of length 3")
    {
        std::vector<std::uint64_t> counts(8);
        for (std::uint64_t t = 0; t < 100000; ++t)
            ++counts[oracle::binary_index(random_word(2, 3, SeedSpec{2024, t}))];
        const std::vector<double> p(8, 1.0 / 8);
        CHECK(oracle::chi_square_p_value(counts, p) > 0.001);
        // each frequency within 3 sigma of 1/8
        const double sigma = std::sqrt(100000 * (1.0 / 8) * (7.0 / 8));
        for (auto c : counts)
            CHECK(std::abs(static_cast<double>(c) - 12500.0) < 3 * sigma);
    }
}

TEST_CASE("make_shifted_pair")
{
    SUBCASE("windows a given source")
    {
        const ShiftedPair p = make_shifted_pair(letters("abcdef"), 4);
        CHECK(p.v.to_letters() == "abcd");
        CHECK(p.w.to_letters() == "cdef");
        CHECK(p.shift == 2);
        CHECK(p.overlap() == 2);
        CHECK(p.v.subword(2, 4) == p.w.subword(0, 2));
        CHECK(p.alpha() == doctest::Approx(0.5));
    }
    SUBCASE("zero shift gives identical words")
    {
        const ShiftedPair p = make_shifted_pair(3, 20, 0, SeedSpec{4, 4});
        CHECK(p.v == p.w);
        CHECK(p.v == p.source);
    }
    SUBCASE("full shift has no overlap")
    {
        const ShiftedPair p = make_shifted_pair(3, 20, 20, SeedSpec{4, 4});
        CHECK(p.overlap() == 0);
        CHECK(p.source.size() == 40);
        CHECK(p.w == p.source.subword(20, 40));
    }
    SUBCASE("rejects s > n")
    {
        CHECK_THROWS_AS(make_shifted_pair(2, 5, 6, SeedSpec{}), std::invalid_argument);
        CHECK_THROWS_AS(make_shifted_pair(letters("abc"), 4), std::invalid_argument);
    }
    SUBCASE("overlap agreement on random pairs")
    {
        Rng pick(SeedSpec{77, 0});
        for (std::uint64_t t = 0; t < 500; ++t) {
            const std::size_t n = pick.below(60);
            const std::size_t s = pick.below(n + 1);
            const unsigned k = 1 + static_cast<unsigned>(pick.below(5));
            const ShiftedPair p = make_shifted_pair(k, n, s, SeedSpec{77, t + 1});
            REQUIRE(p.source.size() == n + s);
            REQUIRE(p.v == p.source.subword(0, n));
            REQUIRE(p.w == p.source.subword(s, n + s));
            for (std::size_t x = 0; x + s < n; ++x)
                REQUIRE(p.v[s + x] == p.w[x]);
        }
    }
}

TEST_CASE("coupled_generate")
{
    SUBCASE("one-symbol alphabet waits one step per symbol")
    {
        const std::vector<std::size_t> idx{0, 2, 5};
        const CoupledSample c = coupled_generate(1, 8, 3, idx, SeedSpec{1, 1});
        CHECK(c.waits == std::vector<std::uint64_t>{1, 1, 1});
        CHECK(c.source.size() == 11);
    }
    SUBCASE("rejects bad index sets")
    {
        const std::vector<std::size_t> none;
        CHECK_THROWS_AS(coupled_generate(2, 8, 2, none, SeedSpec{}), std::invalid_argument);
        const std::vector<std::size_t> unordered{3, 1};
        CHECK_THROWS_AS(coupled_generate(2, 8, 2, unordered, SeedSpec{}), std::invalid_argument);
        const std::vector<std::size_t> too_far{8};
        CHECK_THROWS_AS(coupled_generate(2, 8, 2, too_far, SeedSpec{}), std::invalid_argument);
    }
    SUBCASE("A and B are read back from the source")
    {
        const std::vector<std::size_t> idx{1, 4, 6};
        const CoupledSample c = coupled_generate(3, 10, 4, idx, SeedSpec{8, 2});
        CHECK(c.a() == c.source.pick(idx));
        CHECK(c.b_start == 1);  // max(6 - 3 + 2 - 4, 0)
        CHECK(c.b() == c.source.subword(4 + c.b_start, 14));
    }
    SUBCASE("A[l] lies strictly left of B[l] in the source")
    {
        Rng pick(SeedSpec{6, 0});
        for (std::uint64_t trial = 0; trial < 2000; ++trial) {
            const std::size_t n = 1 + pick.below(30);
            const std::size_t s = pick.below(n + 1);
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i)
                if (pick.below(2) == 0)
                    idx.push_back(i);
            if (idx.empty())
                idx.push_back(pick.below(n));
            const CoupledSample c = coupled_generate(2, n, s, idx, SeedSpec{6, trial + 1});
            for (std::size_t l = 0; l < idx.size() && c.b_start + l < n; ++l)
                REQUIRE(idx[l] < s + c.b_start + l);
        }
    }
    SUBCASE("A is a subsequence of B exactly when the waits fit in B")
    {
        Rng pick(SeedSpec{5, 0});
        for (std::uint64_t trial = 0; trial < 3000; ++trial) {
            const std::size_t n = 4 + pick.below(20);
            const std::size_t s = pick.below(n + 1);
            const unsigned k = 1 + static_cast<unsigned>(pick.below(4));
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i)
                if (pick.below(3) == 0)
                    idx.push_back(i);
            if (idx.empty())
                idx.push_back(n - 1);
            const CoupledSample c = coupled_generate(k, n, s, idx, SeedSpec{5, trial + 1});
            REQUIRE(is_subsequence(c.a(), c.b()) == (c.total_wait() <= c.b().size()));
        }
    }
    SUBCASE("mean total wait is t * k")
    {
        std::vector<std::size_t> idx(50);
        for (std::size_t i = 0; i < 50; ++i)
            idx[i] = 2 * i;
        const int runs = 10000;
        double sum = 0, sum_sq = 0;
        for (int r = 0; r < runs; ++r) {
            const double x = static_cast<double>(coupled_generate(4, 100, 100, idx, SeedSpec{31, std::uint64_t(r)}).total_wait());
            sum += x;
            sum_sq += x * x;
        }
        const double mean = sum / runs;
        const double se = std::sqrt((sum_sq / runs - mean * mean) / (runs - 1));
        CHECK(std::abs(mean - 200.0) < 3 * se);
    }
    SUBCASE("each wait is geometric with success probability 1/k")
    {
        // bins j = 1..9 and a tail bin j >= 10
        const unsigned k = 2;
        std::vector<std::uint64_t> counts(10);
        const std::vector<std::size_t> idx{0, 3, 4, 7};
        for (std::uint64_t r = 0; r < 25000; ++r) {
            const CoupledSample c = coupled_generate(k, 10, 6, idx, SeedSpec{12, r});
            for (auto x : c.waits)
                ++counts[std::min<std::uint64_t>(x, 10) - 1];
        }
        std::vector<double> p(10);
        double q = 1.0;
        for (int j = 0; j < 9; ++j) {
            p[j] = q / k;
            q *= 1.0 - 1.0 / k;
        }
        p[9] = q;
        CHECK(oracle::chi_square_p_value(counts, p) > 0.001);
    }
    SUBCASE("source is uniform for k = 2, n + s = 8")
    {
        std::vector<std::uint64_t> counts(256);
        const std::vector<std::size_t> idx{1, 2, 4};
        for (std::uint64_t r = 0; r < 100000; ++r)
            ++counts[oracle::binary_index(coupled_generate(2, 5, 3, idx, SeedSpec{606, r}).source)];
        CHECK(oracle::chi_square_p_value(counts, std::vector<double>(256, 1.0 / 256)) > 0.001);
    }
}

TEST_CASE("subsequence tests and deletion")
{
    CHECK(is_subsequence(letters("abda"), letters("aabdca")));
    CHECK(is_subsequence(Word(26), letters("xyz")));
    CHECK(is_subsequence(Word(26), Word(26)));
    CHECK_FALSE(is_subsequence(letters("ba"), letters("ab")));

    CHECK(leftmost_embedding(letters("abd"), letters("aabdca")) == std::vector<std::size_t>{0, 2, 3});
    CHECK(delete_embedded(letters("aabdca"), letters("abd")).to_letters() == "aca");
    CHECK(delete_embedded(letters("aabdca"), letters("aabdca")).empty());
    CHECK(delete_embedded(letters("aabdca"), Word(26)) == letters("aabdca"));
    CHECK_THROWS_AS(delete_embedded(letters("ab"), letters("ba")), NotSubsequenceError);

    Rng pick(SeedSpec{3, 0});
    for (std::uint64_t t = 0; t < 2000; ++t) {
        const Word host = random_word(3, pick.below(30), SeedSpec{3, 2 * t + 1});
        const Word sub = random_word(3, pick.below(8), SeedSpec{3, 2 * t + 2});
        const bool contained = is_subsequence(sub, host);
        // containment agrees with the LCS characterization
        REQUIRE(contained == (oracle::lcs_recursive(sub, host) == sub.size() || sub.empty()));
        if (contained)
            REQUIRE(delete_embedded(host, sub).size() == host.size() - sub.size());
        else
            REQUIRE_THROWS_AS(delete_embedded(host, sub), NotSubsequenceError);
    }
}

TEST_CASE("word files")
{
    SUBCASE("letters round trip")
    {
        WordFile f;
        f.k = 4;
        f.words = {letters("abcd", 4), Word(4), letters("dd", 4)};
        std::ostringstream out;
        write_words(out, f);
        CHECK(out.str() == "k=4\nabcd\n\ndd\n");
        std::istringstream in(out.str());
        const WordFile back = read_words(in);
        CHECK(back.k == 4);
        REQUIRE(back.words.size() == 3);
        CHECK(back.words[0] == f.words[0]);
        CHECK(back.words[1].empty());
        CHECK(back.words[2] == f.words[2]);
    }
    SUBCASE("decimal form past 26 symbols")
    {
        const Word w({30, 1, 27}, 30);
        CHECK(format_word(w) == "30,1,27");
        std::istringstream in("k=30\r\n30,1,27\r\n");
        const WordFile f = read_words(in);
        REQUIRE(f.words.size() == 1);
        CHECK(f.words[0] == w);
    }
    SUBCASE("malformed input")
    {
        std::istringstream no_header("abc\n");
        CHECK_THROWS(read_words(no_header));
        std::istringstream out_of_range("k=2\nabc\n");
        CHECK_THROWS(read_words(out_of_range));
        CHECK_THROWS(parse_word("1,x", 30));
    }
    SUBCASE("inline words")
    {
        CHECK(parse_inline_word("abedbba").to_letters() == "abedbba");
        CHECK(parse_inline_word("").empty());
        const Word d = parse_inline_word("3,1,2");
        CHECK(d.k() == 3);
        CHECK(d == Word({3, 1, 2}, 3));
        CHECK_THROWS(parse_inline_word("A"));
    }
}
