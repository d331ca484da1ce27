#pragma once
// Sequence families: Beatty-modular (Davison) words, Rudin-Shapiro and
// Baum-Sweet codings, paperfolding words, perturbed-symmetry words, and the
// equal-count concatenation family; plus exact Beatty floor-identity checks.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cfstammer/cf.hpp"
#include "cfstammer/words.hpp"

namespace cfstammer {

// ---------------------------------------------------------------------------
// Binary-digit automatic sequences.
// ---------------------------------------------------------------------------

// Letter at position n (n = 0, 1, 2, ...) is `a` when the count of
// overlapping "11" factors in the binary expansion of n is even, else `b`.
// Direct definition is the normative one; the morphic route below is the
// cross-check.
std::unique_ptr<WordStream> rudin_shapiro_stream(Letter a, Letter b);

// Letter at position n is `a` when the binary expansion of n contains a
// maximal block of zeros of odd length, else `b` (position 0 yields `b`).
std::unique_ptr<WordStream> baum_sweet_stream(Letter a, Letter b);

Morphism rs_morphism();                    // 1->12, 2->13, 3->42, 4->43
Morphism rs_coding(Letter a, Letter b);    // 1,2 -> a; 3,4 -> b
Morphism bs_morphism();                    // 1->12, 2->32, 3->24, 4->44
Morphism bs_coding(Letter a, Letter b);    // 1,2 -> b; 3,4 -> a

// ---------------------------------------------------------------------------
// Beatty floors and Davison words.
// ---------------------------------------------------------------------------

// floor(n * theta) for irrational theta = [0; a1, a2, ...] in (0, 1), exactly:
// pulls quotients until the floors of n*p_j/q_j and n*p_{j+1}/q_{j+1} agree
// (theta lies strictly between consecutive convergents). Consumes the stream.
BigInt floor_n_theta(WordStream& theta, const BigInt& n);

// Same oracle with the quotient stream and its convergents cached across calls.
class BeattyOracle {
 public:
  explicit BeattyOracle(std::unique_ptr<WordStream> theta);
  BigInt floor_mult(const BigInt& n);

 private:
  void extend();
  std::unique_ptr<WordStream> theta_;
  ConvergentScan scan_;
  std::vector<Convergent> convs_;  // index j >= 0
};

// d_n = 1 + (floor(n * theta) mod k) for n = 1, 2, ...
std::unique_ptr<WordStream> davison_stream(std::unique_ptr<WordStream> theta, unsigned k);

// Exhaustive exact checks of the three Beatty floor identities for a periodic
// quotient pattern, n = 1..n_max, each identity capped at `cap` instances
// (scanned in lexicographic parameter order):
//   shift:      floor((q_n + r) theta)            = p_n + floor(r theta),  1 <= r < q_{n+1}
//   scaled:     floor((s q_n + r) theta)          = s p_n + floor(r theta),
//               0 <= s <= a_{n+1}, 1 <= r < q_n + q_{n-1}
//   telescoped: floor((q_{n+l} + ... + q_n + r) theta)
//               = p_{n+l} + ... + p_n + floor(r theta), l >= 0, 1 <= r < q_{n+1}
struct FloorIdentityReport {
  std::uint64_t shift_checked = 0;
  std::uint64_t scaled_checked = 0;
  std::uint64_t telescoped_checked = 0;
  bool pass = true;
  std::string first_failure;  // empty when pass
};
FloorIdentityReport verify_floor_identities(const Word& theta_pattern, unsigned n_max,
                                            std::uint64_t cap);

// ---------------------------------------------------------------------------
// Paperfolding words.
// ---------------------------------------------------------------------------

class SignStream {
 public:
  virtual ~SignStream() = default;
  virtual Sign next() = 0;
};

std::unique_ptr<SignStream> constant_signs(Sign s);
std::unique_ptr<SignStream> periodic_signs(SignedWord pattern);
std::unique_ptr<SignStream> seeded_signs(std::uint64_t seed);

// One folding step: w -> w . i . -mirror(w).
SignedWord fold_once(Sign i, const SignedWord& w);

// Word of the folding sequence under instructions (e_n): the limit of
// T_n = T_{n-1} . e_n . -mirror(T_{n-1}) from T_0 = [e_0], coded +1 -> plus,
// -1 -> minus. |T_n| = 2^{n+1} - 1 and each T_n is a prefix of the limit.
struct FoldingSystem {
  std::unique_ptr<SignStream> instructions;
  Letter letter_plus = 1;
  Letter letter_minus = 2;
};
std::unique_ptr<WordStream> paperfolding_stream(FoldingSystem sys);

// ---------------------------------------------------------------------------
// Perturbed-symmetry words.
// ---------------------------------------------------------------------------

enum class InsertMode : char { E = 'E', R = 'R' };  // identity / mirror

// S(w) = w x_1 w^{m_1} x_2 w^{m_2} ... x_k w^{m_k}, each insert x_i a (possibly
// empty) word and each m_i either w itself (E) or mirror(w) (R).
struct PerturbedSymmetry {
  std::vector<Word> inserts;
  std::vector<InsertMode> modes;  // same length as inserts, length k >= 1
};

Word apply_symmetry(const PerturbedSymmetry& sym, const Word& w);

class IndexStream {
 public:
  virtual ~IndexStream() = default;
  virtual std::size_t next() = 0;
};

std::unique_ptr<IndexStream> periodic_indices(std::vector<std::size_t> pattern);
std::unique_ptr<IndexStream> seeded_indices(std::uint64_t seed, std::size_t bound);

// Limit of S_{j_n}(... S_{j_1}(S_{j_0}(seed)) ...) with j_n drawn from the
// schedule; each step prepends nothing, so prefixes stabilize.
struct PerturbedSystem {
  Alphabet alphabet;
  Word seed;
  std::vector<PerturbedSymmetry> symmetry_set;
  std::unique_ptr<IndexStream> schedule;
};
std::unique_ptr<WordStream> perturbed_symmetry_stream(PerturbedSystem sys);

// ---------------------------------------------------------------------------
// Equal-count concatenation family: a = W1 W2^2 W3^2 W4^2 ...
// ---------------------------------------------------------------------------

class BlockSource {
 public:
  virtual ~BlockSource() = default;
  virtual Word next_block() = 0;  // 1st call yields W1, then W2, ...
};

std::unique_ptr<BlockSource> fixed_blocks(std::vector<Word> blocks);

// Pseudorandom equal-count blocks over the alphabet: each block is a shuffled
// multiset with equal letter counts, lengths growing just past lambda times
// the previous length. odd_lengths forces odd block lengths (requires odd
// alphabet size). Consecutive blocks are adjusted to start and end with
// different letters so the designed square runs stay exact.
std::unique_ptr<BlockSource> random_equal_blocks(const Alphabet& alphabet, double lambda,
                                                 std::uint64_t seed, bool odd_lengths);

// lambda is the required growth ratio: |W_{n+1}| > lambda * |W_n|, checked
// lazily as blocks are pulled, along with non-emptiness, alphabet membership
// and equal letter counts. Violations throw std::invalid_argument.
struct ConcatFamily {
  Alphabet alphabet;
  double lambda = 4.0;
  std::shared_ptr<BlockSource> source;
};

// Validated, cached access to the family's blocks (1-based).
class ConcatBlocks {
 public:
  explicit ConcatBlocks(const ConcatFamily& fam);
  const Word& block(std::size_t n);  // n >= 1; pulls and validates on demand

 private:
  Alphabet alphabet_;
  double lambda_;
  std::shared_ptr<BlockSource> source_;
  std::vector<Word> cache_;
};

std::unique_ptr<WordStream> concat_family_stream(const ConcatFamily& fam);

}  // namespace cfstammer
