#include "cfstammer/words.hpp"

#include <algorithm>
#include <utility>

namespace cfstammer {

Alphabet::Alphabet(std::vector<Letter> ls) : letters(std::move(ls)) {
  if (letters.empty()) throw std::invalid_argument("alphabet: must be non-empty");
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == 0) throw std::invalid_argument("alphabet: letters must be positive");
    if (i > 0 && letters[i] <= letters[i - 1])
      throw std::invalid_argument("alphabet: letters must be strictly increasing");
  }
}

bool Alphabet::contains(Letter x) const {
  return std::binary_search(letters.begin(), letters.end(), x);
}

Word take(WordStream& s, std::size_t n) {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = s.next();
    if (!x) throw StreamExhausted("stream ended after " + std::to_string(i) + " of " +
                                  std::to_string(n) + " letters");
    out.push_back(*x);
  }
  return out;
}

Word take_at_most(WordStream& s, std::size_t n) {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = s.next();
    if (!x) break;
    out.push_back(*x);
  }
  return out;
}

PeriodicStream::PeriodicStream(Word pattern) : pattern_(std::move(pattern)) {
  if (pattern_.empty()) throw std::invalid_argument("periodic stream: empty pattern");
}

Morphism::Morphism(std::map<Letter, Word> imgs) : images(std::move(imgs)) {
  if (images.empty()) throw std::invalid_argument("morphism: no images");
  bool uniform = true;
  std::size_t len = images.begin()->second.size();
  for (const auto& [x, img] : images) {
    if (x == 0) throw std::invalid_argument("morphism: letters must be positive");
    if (img.empty()) throw std::invalid_argument("morphism: empty image for letter " +
                                                 std::to_string(x));
    if (img.size() != len) uniform = false;
  }
  if (uniform) uniform_length = len;
}

const Word& Morphism::image(Letter x) const {
  auto it = images.find(x);
  if (it == images.end())
    throw std::invalid_argument("morphism: no image for letter " + std::to_string(x));
  return it->second;
}

Word Morphism::apply(const Word& w) const {
  Word out;
  if (uniform_length) out.reserve(w.size() * *uniform_length);
  for (Letter x : w) {
    const Word& img = image(x);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Word morphism_apply(const Morphism& sigma, const Word& w) { return sigma.apply(w); }

Word frac_power(const Word& w, const Rat& x) {
  if (w.empty()) throw std::invalid_argument("frac_power: empty word");
  if (x <= Rat(0)) throw std::invalid_argument("frac_power: exponent must be positive");
  const Rat len = x * Rat(static_cast<long long>(w.size()));
  if (len.denominator() != 1)
    throw std::invalid_argument("frac_power: x*|w| must be an integer");
  const auto total = static_cast<std::size_t>(len.numerator());
  Word out;
  out.reserve(total);
  for (std::size_t i = 0; i < total; ++i) out.push_back(w[i % w.size()]);
  return out;
}

Word mirror(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

SignedWord mirror(SignedWord s) {
  std::reverse(s.begin(), s.end());
  return s;
}

SignedWord negate(SignedWord s) {
  for (Sign& x : s) x = static_cast<Sign>(-x);
  return s;
}

namespace {

class FixedPointStream : public WordStream {
 public:
  FixedPointStream(Morphism sigma, Letter seed) : sigma_(std::move(sigma)) {
    const Word& img = sigma_.image(seed);
    if (img.size() < 2 || img[0] != seed)
      throw std::invalid_argument(
          "fixed point: image of the seed must start with the seed and have length >= 2");
    buffer_ = img;
  }

 protected:
  std::optional<Letter> pull() override {
    // Invariant: buffer_ is a prefix of the fixed point, and expanding the
    // letter at expand_ appends strictly beyond what it replaces.
    while (emit_ >= buffer_.size()) {
      const Word& img = sigma_.image(buffer_[expand_++]);
      buffer_.insert(buffer_.end(), img.begin(), img.end());
    }
    return buffer_[emit_++];
  }

 private:
  Morphism sigma_;
  Word buffer_;
  std::size_t emit_ = 0;
  std::size_t expand_ = 1;  // buffer_[0..expand_) already expanded into buffer_
};

class CodingStream : public WordStream {
 public:
  CodingStream(Morphism phi, std::unique_ptr<WordStream> inner)
      : phi_(std::move(phi)), inner_(std::move(inner)) {
    if (!phi_.is_coding())
      throw std::invalid_argument("coding: morphism must be 1-uniform");
  }

 protected:
  std::optional<Letter> pull() override {
    auto x = inner_->next();
    if (!x) return std::nullopt;
    return phi_.image(*x)[0];
  }

 private:
  Morphism phi_;
  std::unique_ptr<WordStream> inner_;
};

}  // namespace

std::unique_ptr<WordStream> fixed_point_stream(Morphism sigma, Letter seed) {
  return std::make_unique<FixedPointStream>(std::move(sigma), seed);
}

std::unique_ptr<WordStream> coding_apply(Morphism phi, std::unique_ptr<WordStream> inner) {
  return std::make_unique<CodingStream>(std::move(phi), std::move(inner));
}

}  // namespace cfstammer
