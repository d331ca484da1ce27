#pragma once
// Plain-text word files and small parsing helpers shared by the CLI.
//
// Word file format: whitespace-separated positive integers, one word per
// line. An optional first line "#alphabet 1=a 2=b" declares letter aliases,
// after which alias tokens are accepted in place of integers. Other lines
// starting with '#' are comments.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cfstammer/words.hpp"

namespace cfstammer {

struct WordFile {
  std::vector<Word> words;
  std::map<std::string, Letter> aliases;
};

WordFile read_word_file(std::istream& in);
WordFile read_word_file(const std::string& path);  // throws std::invalid_argument

void write_word_line(std::ostream& out, const Word& w);

// "7" or "7/4" -> rational; validates positivity of the denominator.
Rat parse_rational(const std::string& text);

// "1,2,3" -> letters; each entry must be a positive integer.
Word parse_letter_list(const std::string& text);

}  // namespace cfstammer
