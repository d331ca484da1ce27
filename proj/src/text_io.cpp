#include "cfstammer/text_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cfstammer {

namespace {

bool parse_u64(const std::string& tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  out = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
    if (out > (UINT64_MAX - d) / 10) return false;
    out = out * 10 + d;
  }
  return true;
}

Letter parse_letter_token(const std::string& tok, const std::map<std::string, Letter>& aliases) {
  std::uint64_t v;
  if (parse_u64(tok, v)) {
    if (v == 0 || v > UINT32_MAX)
      throw std::invalid_argument("word file: letter out of range: " + tok);
    return static_cast<Letter>(v);
  }
  auto it = aliases.find(tok);
  if (it == aliases.end())
    throw std::invalid_argument("word file: unknown token: " + tok);
  return it->second;
}

}  // namespace

WordFile read_word_file(std::istream& in) {
  WordFile wf;
  std::string line;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line

    if (tok.rfind('#', 0) == 0) {
      if (first_content_line && tok == "#alphabet") {
        // "#alphabet 1=a 2=b": declare aliases for letters.
        std::string decl;
        while (ls >> decl) {
          const auto eq = decl.find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 >= decl.size())
            throw std::invalid_argument("word file: bad alphabet declaration: " + decl);
          std::uint64_t v;
          if (!parse_u64(decl.substr(0, eq), v) || v == 0 || v > UINT32_MAX)
            throw std::invalid_argument("word file: bad alphabet letter: " + decl);
          wf.aliases[decl.substr(eq + 1)] = static_cast<Letter>(v);
        }
        first_content_line = false;
      }
      continue;  // other '#' lines are comments
    }

    first_content_line = false;
    Word w;
    w.push_back(parse_letter_token(tok, wf.aliases));
    while (ls >> tok) w.push_back(parse_letter_token(tok, wf.aliases));
    wf.words.push_back(std::move(w));
  }
  return wf;
}

WordFile read_word_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open word file: " + path);
  return read_word_file(in);
}

void write_word_line(std::ostream& out, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    out << w[i];
  }
  out << '\n';
}

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  std::uint64_t num, den = 1;
  const std::string num_part = slash == std::string::npos ? text : text.substr(0, slash);
  if (!parse_u64(num_part, num) || num > INT64_MAX)
    throw std::invalid_argument("bad rational: " + text);
  if (slash != std::string::npos) {
    if (!parse_u64(text.substr(slash + 1), den) || den == 0 || den > INT64_MAX)
      throw std::invalid_argument("bad rational: " + text);
  }
  return Rat(static_cast<long long>(num), static_cast<long long>(den));
}

Word parse_letter_list(const std::string& text) {
  Word out;
  std::string tok;
  std::istringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    std::uint64_t v;
    if (!parse_u64(tok, v) || v == 0 || v > UINT32_MAX)
      throw std::invalid_argument("bad letter list: " + text);
    out.push_back(static_cast<Letter>(v));
  }
  if (out.empty()) throw std::invalid_argument("bad letter list: " + text);
  return out;
}

}  // namespace cfstammer
