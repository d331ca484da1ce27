#pragma once
// Prefix-repetition detection (U V^w prefixes), the two repetition-scale
// conditions, eventual-periodicity scanning, and the verdict rules.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfstammer/cf.hpp"
#include "cfstammer/words.hpp"

namespace cfstammer {

// A prefix of the scanned word of the form U V^w with |U| = r, |V| = s and
// w = p / s: positions r .. r+p-1 satisfy word[i] == word[i+s] shifted, i.e.
// the run of period s starting at r has length p. Within the scanned prefix,
// p is maximal for the pair (r, s).
struct RepetitionWitness {
  std::uint64_t r = 0;  // offset |U|
  std::uint64_t s = 0;  // period |V|
  std::uint64_t p = 0;  // maximal s-periodic run length from r
  Rat w() const { return Rat(static_cast<long long>(p), static_cast<long long>(s)); }
  Rat offset_ratio() const { return Rat(static_cast<long long>(r), static_cast<long long>(s)); }
};

inline constexpr std::uint64_t kDefaultMaxR = 1024;
inline constexpr int kDefaultT = 5;
inline const Rat kDefaultMinW{5, 4};
inline const Rat kDefaultMaxWprime{1, 2};

// One witness per scale s: among offsets r <= max_r with exponent >= min_w,
// the largest exponent wins, ties broken by the smaller offset. Runs in
// O(|prefix| * (max_r + 1)) via per-offset longest-common-extension arrays.
// Requires a non-empty prefix, max_r < |prefix| and min_w > 1.
std::vector<RepetitionWitness> detect_repetitions(const Word& prefix, std::uint64_t max_r,
                                                  const Rat& min_w);

// Evidence for the repetition-scale conditions. star_* fields describe
// offset-zero repetitions (prefixes V^w); starstar_* fields describe bounded
// relative-offset repetitions (prefixes U V^w with |U|/|V| <= w').
struct ConditionReport {
  int T = kDefaultT;
  Rat min_w = kDefaultMinW;

  std::optional<Rat> star_w;
  std::vector<RepetitionWitness> star_witnesses;

  std::optional<Rat> starstar_w;
  std::optional<Rat> starstar_wprime;
  std::vector<RepetitionWitness> starstar_witnesses;

  // The witness list backing the strongest condition that holds.
  const std::vector<RepetitionWitness>& witnesses() const {
    return starstar_w ? starstar_witnesses : star_witnesses;
  }
};

// Offset-zero condition: star_w is the largest w such that at least T
// witnesses (at strictly increasing scales) have exponent >= w — the T-th
// largest exponent. Absent when fewer than T offset-zero witnesses exist;
// the witnesses found are reported either way, sorted by scale.
// Requires |prefix| >= 10 and T >= 3.
ConditionReport condition_star(const Word& prefix, int T, const Rat& min_w);
ConditionReport condition_star(WordStream& s, std::size_t prefix_len, int T, const Rat& min_w);

// Bounded-offset condition on the detector table (one witness per scale,
// offsets r <= max_r). Eligible witnesses have offset ratio r/s <= max_wprime.
// starstar_w is the T-th largest exponent among eligible witnesses;
// starstar_wprime is the T-th smallest offset ratio among eligible witnesses
// with exponent >= starstar_w. Reported witnesses are the eligible ones with
// exponent >= starstar_w and ratio <= starstar_wprime — the best (w, w') pair
// in the order "maximize w, then minimize w'". Requires T >= 3.
ConditionReport condition_star_star(const Word& prefix, int T, const Rat& min_w,
                                    const Rat& max_wprime, std::uint64_t max_r = kDefaultMaxR);
ConditionReport condition_star_star(WordStream& s, std::size_t prefix_len, int T,
                                    const Rat& min_w, const Rat& max_wprime,
                                    std::uint64_t max_r = kDefaultMaxR);

// Both conditions evaluated on one prefix (the offset-zero condition uses its
// own max_r = 0 detector pass so its witnesses cannot be shadowed).
ConditionReport condition_both(const Word& prefix, int T, const Rat& min_w,
                               const Rat& max_wprime, std::uint64_t max_r = kDefaultMaxR);

struct Periodicity {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
};

// Least eventual periodicity visible in the prefix: smallest period whose
// minimal preperiod is <= max_preperiod, with that preperiod. Requires
// max_preperiod + 2 * max_period <= |prefix|.
std::optional<Periodicity> periodicity_scan(const Word& prefix, std::uint64_t max_period,
                                            std::uint64_t max_preperiod);
std::optional<Periodicity> periodicity_scan(WordStream& s, std::size_t prefix_len,
                                            std::uint64_t max_period, std::uint64_t max_preperiod);

enum class VerdictRule {
  theorem_a_w2,       // offset-zero exponents reach 2
  theorem_a_bounded,  // offset-zero exponents exceed 1, bounded alphabet
  theorem_31,         // w > w'(2L - 1) + 1 with L = log M_hat / log m_hat
  theorem_b,          // w > w'(2L - 1) + L (fallback; dominated when L >= 1)
  inconclusive
};

// Wire labels used in reports: TheoremA_w2, TheoremA_bounded, Theorem31,
// TheoremB, Inconclusive.
std::string to_string(VerdictRule rule);

struct CriterionVerdict {
  VerdictRule rule = VerdictRule::inconclusive;
  std::optional<Rat> w;
  std::optional<Rat> w_prime;
  double M_hat = 0.0;
  double m_hat = 0.0;
  double margin = 0.0;  // left minus right of the applied inequality
  std::string caveat;
};

// Applies the rules in precedence order (periodic input short-circuits to
// Inconclusive): TheoremA_w2, then TheoremA_bounded, then Theorem31, then
// TheoremB. Growth ratios enter through L = log M_hat / log m_hat evaluated
// as an interval with 1e-12 outward rounding on both logs; a rule fires only
// if its inequality holds at the unfavorable interval end, while the reported
// margin uses the midpoint. Requires M_hat > 1 and m_hat > 1 unless periodic.
CriterionVerdict criterion_verdict(const ConditionReport& report, const GrowthEstimate& growth,
                                   const std::optional<Periodicity>& periodic,
                                   bool bounded_alphabet = true);

}  // namespace cfstammer
