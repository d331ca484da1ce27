#pragma once
// Finite-word algebra and morphism machinery: fractional powers, mirrors,
// sign words, morphism application/iteration (fixed points) and letter codings.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace cfstammer {

// Letters are positive integers; they double as continued-fraction partial
// quotients, so 0 is never a valid letter.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using Sign = std::int8_t;  // +1 or -1
using SignedWord = std::vector<Sign>;
using Rat = boost::rational<long long>;

struct StreamExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered finite alphabet of positive letters.
struct Alphabet {
  std::vector<Letter> letters;  // strictly increasing, all >= 1

  explicit Alphabet(std::vector<Letter> ls);
  std::size_t size() const { return letters.size(); }
  bool contains(Letter x) const;
};

// Pull-based infinite (or finite) letter stream. next() returns nullopt only
// when a finite source is exhausted. position() counts letters emitted so far.
class WordStream {
 public:
  virtual ~WordStream() = default;

  std::optional<Letter> next() {
    auto x = pull();
    if (x) ++pos_;
    return x;
  }
  std::uint64_t position() const { return pos_; }

 protected:
  virtual std::optional<Letter> pull() = 0;

 private:
  std::uint64_t pos_ = 0;
};

// First n letters; throws StreamExhausted if the stream ends early.
Word take(WordStream& s, std::size_t n);
// First n letters or fewer if the stream ends.
Word take_at_most(WordStream& s, std::size_t n);

class FiniteWordStream : public WordStream {
 public:
  explicit FiniteWordStream(Word w) : word_(std::move(w)) {}

 protected:
  std::optional<Letter> pull() override {
    if (i_ >= word_.size()) return std::nullopt;
    return word_[i_++];
  }

 private:
  Word word_;
  std::size_t i_ = 0;
};

// Repeats a non-empty pattern forever.
class PeriodicStream : public WordStream {
 public:
  explicit PeriodicStream(Word pattern);

 protected:
  std::optional<Letter> pull() override {
    Letter x = pattern_[i_];
    if (++i_ == pattern_.size()) i_ = 0;
    return x;
  }

 private:
  Word pattern_;
  std::size_t i_ = 0;
};

// Substitution on letters; images are non-empty words. uniform_length is set
// iff every image has the same length (then codings are the 1-uniform case).
struct Morphism {
  std::map<Letter, Word> images;
  std::optional<std::size_t> uniform_length;

  explicit Morphism(std::map<Letter, Word> imgs);
  const Word& image(Letter x) const;  // throws std::invalid_argument on unknown letter
  bool is_coding() const { return uniform_length == std::size_t{1}; }
  Word apply(const Word& w) const;
};

// Largest-prefix fractional power: |result| = x * |w| letters of w^infinity.
// Requires w non-empty, x > 0, and x * |w| integral.
Word frac_power(const Word& w, const Rat& x);

Word mirror(Word w);
SignedWord mirror(SignedWord s);
SignedWord negate(SignedWord s);

Word morphism_apply(const Morphism& sigma, const Word& w);

// Infinite fixed point sigma^infinity(seed). Requires sigma prolongable at
// seed: image(seed) starts with seed and has length >= 2.
std::unique_ptr<WordStream> fixed_point_stream(Morphism sigma, Letter seed);

// Letterwise relabeling of an inner stream by a 1-uniform morphism.
std::unique_ptr<WordStream> coding_apply(Morphism phi, std::unique_ptr<WordStream> inner);

}  // namespace cfstammer
