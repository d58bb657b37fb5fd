#include "shiftlcs/word_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace shiftlcs {

namespace {

std::string_view trim_cr(std::string_view line)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    return line;
}

std::vector<Symbol> parse_decimal_list(std::string_view text)
{
    std::vector<Symbol> symbols;
    if (text.empty())
        return symbols;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
        Symbol value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
            throw std::invalid_argument("malformed symbol '" + std::string(item) + "'");
        symbols.push_back(value);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return symbols;
}

}  // namespace

Word parse_word(std::string_view line, unsigned k)
{
    line = trim_cr(line);
    if (k <= 26)
        return Word::from_letters(line, k);
    return Word(parse_decimal_list(line), k);
}

std::string format_word(const Word& word)
{
    if (word.k() <= 26)
        return word.to_letters();
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0)
            out.push_back(',');
        out += std::to_string(word[i]);
    }
    return out;
}

WordFile read_words(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("word file is missing the k=<int> header");
    std::string_view header = trim_cr(line);
    if (header.substr(0, 2) != "k=")
        throw std::invalid_argument("word file header must be k=<int>");
    WordFile file;
    header.remove_prefix(2);
    const auto [ptr, ec] = std::from_chars(header.data(), header.data() + header.size(), file.k);
    if (ec != std::errc() || ptr != header.data() + header.size() || file.k == 0)
        throw std::invalid_argument("word file header must be k=<int> with k >= 1");
    while (std::getline(in, line))
        file.words.push_back(parse_word(line, file.k));
    return file;
}

void write_words(std::ostream& out, const WordFile& file)
{
    out << "k=" << file.k << '\n';
    for (const auto& word : file.words) {
        if (word.k() != file.k)
            throw std::invalid_argument("word alphabet differs from file header");
        out << format_word(word) << '\n';
    }
}

Word parse_inline_word(std::string_view text, unsigned k)
{
    const bool decimal = std::any_of(text.begin(), text.end(), [](char c) { return c == ',' || (c >= '0' && c <= '9'); });
    if (!decimal)
        return Word::from_letters(text, k == 0 ? 26 : k);
    auto symbols = parse_decimal_list(text);
    if (k == 0) {
        const Symbol top = symbols.empty() ? 1 : *std::max_element(symbols.begin(), symbols.end());
        k = std::max<Symbol>(top, 1);
    }
    return Word(std::move(symbols), k);
}

}  // namespace shiftlcs
