#include "cfstammer/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <unordered_map>
#include <utility>

namespace cfstammer {

// ---------------------------------------------------------------------------
// Binary-digit automatic sequences. Both streams emit letters for n = 0, 1, ...
// ---------------------------------------------------------------------------

namespace {

class RudinShapiroStream : public WordStream {
 public:
  RudinShapiroStream(Letter a, Letter b) : a_(a), b_(b) {}

 protected:
  std::optional<Letter> pull() override {
    const std::uint64_t n = n_++;
    // Parity of the number of overlapping "11" factors in binary(n).
    const int pairs = std::popcount(n & (n >> 1));
    return (pairs % 2 == 0) ? a_ : b_;
  }

 private:
  Letter a_, b_;
  std::uint64_t n_ = 0;
};

bool has_odd_zero_block(std::uint64_t m) {
  while (m != 0) {
    if (m & 1) {
      m >>= 1;
      continue;
    }
    const unsigned run = static_cast<unsigned>(std::countr_zero(m));
    if (run & 1) return true;
    m >>= run;
  }
  return false;
}

class BaumSweetStream : public WordStream {
 public:
  BaumSweetStream(Letter a, Letter b) : a_(a), b_(b) {}

 protected:
  std::optional<Letter> pull() override {
    const std::uint64_t n = n_++;
    if (n == 0) return b_;
    return has_odd_zero_block(n) ? a_ : b_;
  }

 private:
  Letter a_, b_;
  std::uint64_t n_ = 0;
};

}  // namespace

std::unique_ptr<WordStream> rudin_shapiro_stream(Letter a, Letter b) {
  if (a == 0 || b == 0) throw std::invalid_argument("rudin-shapiro: letters must be positive");
  return std::make_unique<RudinShapiroStream>(a, b);
}

std::unique_ptr<WordStream> baum_sweet_stream(Letter a, Letter b) {
  if (a == 0 || b == 0) throw std::invalid_argument("baum-sweet: letters must be positive");
  return std::make_unique<BaumSweetStream>(a, b);
}

Morphism rs_morphism() {
  return Morphism({{1, {1, 2}}, {2, {1, 3}}, {3, {4, 2}}, {4, {4, 3}}});
}

Morphism rs_coding(Letter a, Letter b) {
  return Morphism({{1, {a}}, {2, {a}}, {3, {b}}, {4, {b}}});
}

Morphism bs_morphism() {
  return Morphism({{1, {1, 2}}, {2, {3, 2}}, {3, {2, 4}}, {4, {4, 4}}});
}

Morphism bs_coding(Letter a, Letter b) {
  return Morphism({{1, {b}}, {2, {b}}, {3, {a}}, {4, {a}}});
}

// ---------------------------------------------------------------------------
// Beatty floors and Davison words.
// ---------------------------------------------------------------------------

BeattyOracle::BeattyOracle(std::unique_ptr<WordStream> theta) : theta_(std::move(theta)) {
  convs_.push_back(scan_.current());  // j = 0: p/q = 0/1
}

void BeattyOracle::extend() {
  auto a = theta_->next();
  if (!a)
    throw StreamExhausted("theta expansion ended: floors need an infinite (irrational) theta");
  scan_.push(*a);
  convs_.push_back(scan_.current());
}

BigInt BeattyOracle::floor_mult(const BigInt& n) {
  if (n < 0) throw std::invalid_argument("floor_mult: n must be non-negative");
  if (n == 0) return 0;
  // theta lies strictly between consecutive convergents, so once the floors
  // of n*p_j/q_j and n*p_{j+1}/q_{j+1} agree, that value is floor(n*theta).
  for (std::size_t j = 0;; ++j) {
    while (convs_.size() < j + 2) extend();
    const BigInt fa = (n * convs_[j].p) / convs_[j].q;
    const BigInt fb = (n * convs_[j + 1].p) / convs_[j + 1].q;
    if (fa == fb) return fa;
  }
}

BigInt floor_n_theta(WordStream& theta, const BigInt& n) {
  if (n == 0) return 0;
  ConvergentScan scan;
  BigInt prev_p = scan.p(), prev_q = scan.q();
  for (;;) {
    auto a = theta.next();
    if (!a)
      throw StreamExhausted("theta expansion ended: floors need an infinite (irrational) theta");
    scan.push(*a);
    const BigInt fa = (n * prev_p) / prev_q;
    const BigInt fb = (n * scan.p()) / scan.q();
    if (fa == fb) return fa;
    prev_p = scan.p();
    prev_q = scan.q();
  }
}

namespace {

class DavisonStream : public WordStream {
 public:
  DavisonStream(std::unique_ptr<WordStream> theta, unsigned k)
      : oracle_(std::move(theta)), k_(k) {
    if (k == 0) throw std::invalid_argument("davison: modulus k must be positive");
  }

 protected:
  std::optional<Letter> pull() override {
    const BigInt f = oracle_.floor_mult(BigInt(++n_));
    const auto rem = (f % k_).convert_to<unsigned>();
    return static_cast<Letter>(1 + rem);
  }

 private:
  BeattyOracle oracle_;
  unsigned k_;
  std::uint64_t n_ = 0;
};

}  // namespace

std::unique_ptr<WordStream> davison_stream(std::unique_ptr<WordStream> theta, unsigned k) {
  return std::make_unique<DavisonStream>(std::move(theta), k);
}

FloorIdentityReport verify_floor_identities(const Word& theta_pattern, unsigned n_max,
                                            std::uint64_t cap) {
  if (theta_pattern.empty())
    throw std::invalid_argument("floor identities: empty quotient pattern");
  if (n_max < 1) throw std::invalid_argument("floor identities: n_max must be >= 1");
  if (cap == 0) throw std::invalid_argument("floor identities: cap must be >= 1");

  PeriodicStream pat(theta_pattern);
  const auto convs = convergents(pat, n_max + 1);
  const auto a_at = [&](unsigned idx) {  // a_idx, idx >= 1
    return theta_pattern[(idx - 1) % theta_pattern.size()];
  };

  BeattyOracle oracle(std::make_unique<PeriodicStream>(theta_pattern));
  std::unordered_map<std::uint64_t, BigInt> floor_cache;
  const auto floor_of = [&](std::uint64_t r) -> const BigInt& {
    auto it = floor_cache.find(r);
    if (it == floor_cache.end())
      it = floor_cache.emplace(r, oracle.floor_mult(BigInt(r))).first;
    return it->second;
  };
  const auto as_u64 = [](const BigInt& x) { return x.convert_to<std::uint64_t>(); };

  FloorIdentityReport rep;
  const auto fail = [&](const std::string& what) {
    if (rep.pass) {
      rep.pass = false;
      rep.first_failure = what;
    }
  };

  // shift: floor((q_n + r) theta) = p_n + floor(r theta), 1 <= r < q_{n+1}.
  for (unsigned n = 1; n <= n_max && rep.shift_checked < cap && rep.pass; ++n) {
    const auto qn = as_u64(convs[n].q);
    const auto qn1 = as_u64(convs[n + 1].q);
    for (std::uint64_t r = 1; r < qn1 && rep.shift_checked < cap; ++r) {
      ++rep.shift_checked;
      if (oracle.floor_mult(BigInt(qn + r)) != convs[n].p + floor_of(r)) {
        fail("shift identity failed at n=" + std::to_string(n) + " r=" + std::to_string(r));
        break;
      }
    }
  }

  // scaled: floor((s q_n + r) theta) = s p_n + floor(r theta),
  // 0 <= s <= a_{n+1}, 1 <= r < q_n + q_{n-1}.
  for (unsigned n = 1; n <= n_max && rep.scaled_checked < cap && rep.pass; ++n) {
    const auto qn = as_u64(convs[n].q);
    const auto qn_1 = as_u64(convs[n - 1].q);
    const Letter an1 = a_at(n + 1);
    for (std::uint64_t s = 0; s <= an1 && rep.scaled_checked < cap && rep.pass; ++s) {
      for (std::uint64_t r = 1; r < qn + qn_1 && rep.scaled_checked < cap; ++r) {
        ++rep.scaled_checked;
        if (oracle.floor_mult(BigInt(s * qn + r)) != BigInt(s) * convs[n].p + floor_of(r)) {
          fail("scaled identity failed at n=" + std::to_string(n) + " s=" + std::to_string(s) +
               " r=" + std::to_string(r));
          break;
        }
      }
    }
  }

  // telescoped: floor((q_{n+l} + ... + q_n + r) theta) = p_{n+l} + ... + p_n
  // + floor(r theta), l >= 0, 1 <= r < q_{n+1}.
  for (unsigned n = 1; n <= n_max && rep.telescoped_checked < cap && rep.pass; ++n) {
    const auto qn1 = as_u64(convs[n + 1].q);
    for (unsigned l = 0; n + l <= n_max && rep.telescoped_checked < cap && rep.pass; ++l) {
      std::uint64_t q_sum = 0;
      BigInt p_sum = 0;
      for (unsigned i = n; i <= n + l; ++i) {
        q_sum += as_u64(convs[i].q);
        p_sum += convs[i].p;
      }
      for (std::uint64_t r = 1; r < qn1 && rep.telescoped_checked < cap; ++r) {
        ++rep.telescoped_checked;
        if (oracle.floor_mult(BigInt(q_sum + r)) != p_sum + floor_of(r)) {
          fail("telescoped identity failed at n=" + std::to_string(n) +
               " l=" + std::to_string(l) + " r=" + std::to_string(r));
          break;
        }
      }
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Paperfolding words.
// ---------------------------------------------------------------------------

namespace {

void require_sign(Sign s) {
  if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
}

class ConstantSigns : public SignStream {
 public:
  explicit ConstantSigns(Sign s) : s_(s) { require_sign(s); }
  Sign next() override { return s_; }

 private:
  Sign s_;
};

class PeriodicSigns : public SignStream {
 public:
  explicit PeriodicSigns(SignedWord pattern) : pattern_(std::move(pattern)) {
    if (pattern_.empty()) throw std::invalid_argument("periodic signs: empty pattern");
    for (Sign s : pattern_) require_sign(s);
  }
  Sign next() override {
    Sign s = pattern_[i_];
    if (++i_ == pattern_.size()) i_ = 0;
    return s;
  }

 private:
  SignedWord pattern_;
  std::size_t i_ = 0;
};

class SeededSigns : public SignStream {
 public:
  explicit SeededSigns(std::uint64_t seed) : gen_(seed) {}
  Sign next() override { return (gen_() & 1) ? Sign{1} : Sign{-1}; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

std::unique_ptr<SignStream> constant_signs(Sign s) { return std::make_unique<ConstantSigns>(s); }

std::unique_ptr<SignStream> periodic_signs(SignedWord pattern) {
  return std::make_unique<PeriodicSigns>(std::move(pattern));
}

std::unique_ptr<SignStream> seeded_signs(std::uint64_t seed) {
  return std::make_unique<SeededSigns>(seed);
}

SignedWord fold_once(Sign i, const SignedWord& w) {
  require_sign(i);
  SignedWord out;
  out.reserve(2 * w.size() + 1);
  out = w;
  out.push_back(i);
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(static_cast<Sign>(-*it));
  return out;
}

namespace {

class PaperfoldingStream : public WordStream {
 public:
  explicit PaperfoldingStream(FoldingSystem sys)
      : instructions_(std::move(sys.instructions)),
        plus_(sys.letter_plus),
        minus_(sys.letter_minus) {
    if (!instructions_) throw std::invalid_argument("paperfolding: missing instruction stream");
    if (plus_ == 0 || minus_ == 0)
      throw std::invalid_argument("paperfolding: letters must be positive");
    buffer_.push_back(instructions_->next());
    require_sign(buffer_[0]);
  }

 protected:
  std::optional<Letter> pull() override {
    while (emit_ >= buffer_.size()) {
      const Sign e = instructions_->next();
      require_sign(e);
      // In-place fold: T <- T . e . -mirror(T); prefixes never change.
      const std::size_t n = buffer_.size();
      buffer_.reserve(2 * n + 1);
      buffer_.push_back(e);
      for (std::size_t i = n; i-- > 0;) buffer_.push_back(static_cast<Sign>(-buffer_[i]));
    }
    return buffer_[emit_++] > 0 ? plus_ : minus_;
  }

 private:
  std::unique_ptr<SignStream> instructions_;
  Letter plus_, minus_;
  SignedWord buffer_;
  std::size_t emit_ = 0;
};

}  // namespace

std::unique_ptr<WordStream> paperfolding_stream(FoldingSystem sys) {
  return std::make_unique<PaperfoldingStream>(std::move(sys));
}

// ---------------------------------------------------------------------------
// Perturbed-symmetry words.
// ---------------------------------------------------------------------------

Word apply_symmetry(const PerturbedSymmetry& sym, const Word& w) {
  if (sym.inserts.empty() || sym.inserts.size() != sym.modes.size())
    throw std::invalid_argument("perturbed symmetry: need k >= 1 inserts with matching modes");
  std::size_t total = w.size();
  for (const Word& x : sym.inserts) total += x.size() + w.size();
  Word out;
  out.reserve(total);
  out = w;
  for (std::size_t i = 0; i < sym.inserts.size(); ++i) {
    out.insert(out.end(), sym.inserts[i].begin(), sym.inserts[i].end());
    if (sym.modes[i] == InsertMode::E) {
      out.insert(out.end(), w.begin(), w.end());
    } else {
      out.insert(out.end(), w.rbegin(), w.rend());
    }
  }
  return out;
}

namespace {

class PeriodicIndices : public IndexStream {
 public:
  explicit PeriodicIndices(std::vector<std::size_t> pattern) : pattern_(std::move(pattern)) {
    if (pattern_.empty()) throw std::invalid_argument("periodic indices: empty pattern");
  }
  std::size_t next() override {
    std::size_t x = pattern_[i_];
    if (++i_ == pattern_.size()) i_ = 0;
    return x;
  }

 private:
  std::vector<std::size_t> pattern_;
  std::size_t i_ = 0;
};

class SeededIndices : public IndexStream {
 public:
  SeededIndices(std::uint64_t seed, std::size_t bound) : gen_(seed), dist_(0, bound - 1) {
    if (bound == 0) throw std::invalid_argument("seeded indices: bound must be positive");
  }
  std::size_t next() override { return dist_(gen_); }

 private:
  std::mt19937_64 gen_;
  std::uniform_int_distribution<std::size_t> dist_;
};

class PerturbedStream : public WordStream {
 public:
  explicit PerturbedStream(PerturbedSystem sys)
      : symmetries_(std::move(sys.symmetry_set)), schedule_(std::move(sys.schedule)) {
    if (sys.seed.empty()) throw std::invalid_argument("perturbed: empty seed word");
    if (symmetries_.empty()) throw std::invalid_argument("perturbed: empty symmetry set");
    if (!schedule_) throw std::invalid_argument("perturbed: missing schedule");
    for (Letter x : sys.seed)
      if (!sys.alphabet.contains(x))
        throw std::invalid_argument("perturbed: seed letter outside alphabet");
    for (const auto& sym : symmetries_) {
      if (sym.inserts.empty() || sym.inserts.size() != sym.modes.size())
        throw std::invalid_argument("perturbed symmetry: need k >= 1 inserts with matching modes");
      for (const Word& x : sym.inserts)
        for (Letter l : x)
          if (!sys.alphabet.contains(l))
            throw std::invalid_argument("perturbed: insert letter outside alphabet");
    }
    buffer_ = std::move(sys.seed);
  }

 protected:
  std::optional<Letter> pull() override {
    while (emit_ >= buffer_.size()) {
      const std::size_t idx = schedule_->next();
      if (idx >= symmetries_.size())
        throw std::invalid_argument("perturbed: schedule index out of range");
      buffer_ = apply_symmetry(symmetries_[idx], buffer_);
    }
    return buffer_[emit_++];
  }

 private:
  std::vector<PerturbedSymmetry> symmetries_;
  std::unique_ptr<IndexStream> schedule_;
  Word buffer_;
  std::size_t emit_ = 0;
};

}  // namespace

std::unique_ptr<IndexStream> periodic_indices(std::vector<std::size_t> pattern) {
  return std::make_unique<PeriodicIndices>(std::move(pattern));
}

std::unique_ptr<IndexStream> seeded_indices(std::uint64_t seed, std::size_t bound) {
  return std::make_unique<SeededIndices>(seed, bound);
}

std::unique_ptr<WordStream> perturbed_symmetry_stream(PerturbedSystem sys) {
  return std::make_unique<PerturbedStream>(std::move(sys));
}

// ---------------------------------------------------------------------------
// Equal-count concatenation family.
// ---------------------------------------------------------------------------

namespace {

class FixedBlocks : public BlockSource {
 public:
  explicit FixedBlocks(std::vector<Word> blocks) : blocks_(std::move(blocks)) {}
  Word next_block() override {
    if (i_ >= blocks_.size())
      throw StreamExhausted("block source exhausted after " + std::to_string(i_) + " blocks");
    return blocks_[i_++];
  }

 private:
  std::vector<Word> blocks_;
  std::size_t i_ = 0;
};

class RandomEqualBlocks : public BlockSource {
 public:
  RandomEqualBlocks(Alphabet alphabet, double lambda, std::uint64_t seed, bool odd_lengths)
      : alphabet_(std::move(alphabet)), lambda_(lambda), gen_(seed), odd_(odd_lengths) {
    if (!(lambda > 1.0)) throw std::invalid_argument("random blocks: lambda must exceed 1");
    if (odd_ && alphabet_.size() % 2 == 0)
      throw std::invalid_argument("random blocks: odd lengths need an odd alphabet size");
  }

  Word next_block() override {
    const std::size_t k = alphabet_.size();
    std::size_t h;
    if (prev_len_ == 0) {
      h = 1;
    } else {
      // Smallest per-letter count with k*h > lambda * prev_len (parity-adjusted).
      h = static_cast<std::size_t>(std::floor(lambda_ * static_cast<double>(prev_len_))) / k + 1;
      while (static_cast<double>(k * h) <= lambda_ * static_cast<double>(prev_len_)) ++h;
    }
    if (odd_)
      while ((k * h) % 2 == 0) ++h;

    Word w;
    w.reserve(k * h);
    for (Letter x : alphabet_.letters) w.insert(w.end(), h, x);
    std::shuffle(w.begin(), w.end(), gen_);

    // Keep the designed square runs exact: the block must start and end with
    // letters different from the previous block's first and last letters.
    if (prev_len_ != 0) {
      if (w[0] == prev_first_) {
        for (std::size_t j = 1; j < w.size(); ++j)
          if (w[j] != prev_first_) {
            std::swap(w[0], w[j]);
            break;
          }
      }
      if (w.back() == prev_last_) {
        for (std::size_t j = w.size() - 1; j-- > 1;)
          if (w[j] != prev_last_) {
            std::swap(w.back(), w[j]);
            break;
          }
      }
    }

    prev_len_ = w.size();
    prev_first_ = w[0];
    prev_last_ = w.back();
    return w;
  }

 private:
  Alphabet alphabet_;
  double lambda_;
  std::mt19937_64 gen_;
  bool odd_;
  std::size_t prev_len_ = 0;
  Letter prev_first_ = 0, prev_last_ = 0;
};

}  // namespace

std::unique_ptr<BlockSource> fixed_blocks(std::vector<Word> blocks) {
  return std::make_unique<FixedBlocks>(std::move(blocks));
}

std::unique_ptr<BlockSource> random_equal_blocks(const Alphabet& alphabet, double lambda,
                                                 std::uint64_t seed, bool odd_lengths) {
  return std::make_unique<RandomEqualBlocks>(alphabet, lambda, seed, odd_lengths);
}

ConcatBlocks::ConcatBlocks(const ConcatFamily& fam)
    : alphabet_(fam.alphabet), lambda_(fam.lambda), source_(fam.source) {
  if (!source_) throw std::invalid_argument("concat family: missing block source");
  if (!(lambda_ > 1.0)) throw std::invalid_argument("concat family: lambda must exceed 1");
}

const Word& ConcatBlocks::block(std::size_t n) {
  if (n == 0) throw std::invalid_argument("concat family: blocks are 1-based");
  while (cache_.size() < n) {
    Word w = source_->next_block();
    if (w.empty()) throw std::invalid_argument("concat family: empty block");
    std::size_t count0 = 0;
    for (Letter x : w) {
      if (!alphabet_.contains(x))
        throw std::invalid_argument("concat family: block letter outside alphabet");
      if (x == alphabet_.letters[0]) ++count0;
    }
    if (count0 * alphabet_.size() != w.size())
      throw std::invalid_argument("concat family: block letter counts are not equal");
    for (Letter a : alphabet_.letters) {
      const auto c = static_cast<std::size_t>(std::count(w.begin(), w.end(), a));
      if (c != count0)
        throw std::invalid_argument("concat family: block letter counts are not equal");
    }
    if (!cache_.empty() &&
        !(static_cast<double>(w.size()) > lambda_ * static_cast<double>(cache_.back().size())))
      throw std::invalid_argument("concat family: block " + std::to_string(cache_.size() + 1) +
                                  " violates |W_{n+1}| > lambda |W_n|");
    cache_.push_back(std::move(w));
  }
  return cache_[n - 1];
}

namespace {

class ConcatStream : public WordStream {
 public:
  explicit ConcatStream(const ConcatFamily& fam) : blocks_(fam) {}

 protected:
  std::optional<Letter> pull() override {
    if (pos_ >= current_.size()) {
      if (copies_left_ > 0) {
        --copies_left_;
      } else {
        current_ = blocks_.block(++n_);
        copies_left_ = (n_ == 1) ? 0 : 1;  // W1 once, W_n twice for n >= 2
      }
      pos_ = 0;
    }
    return current_[pos_++];
  }

 private:
  ConcatBlocks blocks_;
  std::size_t n_ = 0;
  Word current_;
  std::size_t pos_ = 0;
  int copies_left_ = 0;
};

}  // namespace

std::unique_ptr<WordStream> concat_family_stream(const ConcatFamily& fam) {
  return std::make_unique<ConcatStream>(fam);
}

}  // namespace cfstammer
