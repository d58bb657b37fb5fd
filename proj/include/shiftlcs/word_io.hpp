#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "shiftlcs/words.hpp"

namespace shiftlcs {

/// Text word file: a `k=<int>` header, then one word per line. For k <= 26
/// words are letters ('a' = 1); otherwise comma-separated decimal symbols.
/// An empty line is the empty word.
struct WordFile {
    unsigned k = 26;
    std::vector<Word> words;
};

WordFile read_words(std::istream& in);
void write_words(std::ostream& out, const WordFile& file);

/// One word in the line format implied by k.
std::string format_word(const Word& word);
Word parse_word(std::string_view line, unsigned k);

/// Inline command-line word: letters, or decimal symbols when a comma or digit
/// appears. k = 0 picks 26 for letters and the largest symbol for decimals.
Word parse_inline_word(std::string_view text, unsigned k = 0);

}  // namespace shiftlcs
