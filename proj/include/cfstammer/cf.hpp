#pragma once
// Exact continued-fraction arithmetic for [0; a1, a2, ...]: convergents,
// continuants, value bracketing, and growth-exponent estimation.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cfstammer/words.hpp"

namespace cfstammer {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct Convergent {
  std::uint64_t index = 0;  // l, with p_l / q_l the l-th convergent
  BigInt p;
  BigInt q;
};

// Streaming convergent recurrence p_l = a_l p_{l-1} + p_{l-2} (q likewise),
// seeded (p_0, q_0) = (0, 1) and (p_{-1}, q_{-1}) = (1, 0).
class ConvergentScan {
 public:
  void push(Letter a);
  std::uint64_t index() const { return index_; }  // letters consumed so far
  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& p_prev() const { return pp_; }
  const BigInt& q_prev() const { return qp_; }
  Convergent current() const { return {index_, p_, q_}; }

 private:
  std::uint64_t index_ = 0;
  BigInt p_ = 0, q_ = 1;   // (p_l, q_l)
  BigInt pp_ = 1, qp_ = 0; // (p_{l-1}, q_{l-1})
};

// Convergents for l = 0..L. Throws StreamExhausted if fewer than L quotients
// remain (a finite expansion denotes a rational input).
std::vector<Convergent> convergents(WordStream& cf, std::uint64_t L);
std::vector<Convergent> convergents(const Word& quotients, std::uint64_t L);

// Continuant K(w): denominator q_{|w|} of [0; w]. K of the empty word is 1.
// Switches to a balanced 2x2 matrix product above kContinuantSplitLen letters;
// both routes agree exactly.
inline constexpr std::size_t kContinuantSplitLen = 10000;
BigInt continuant(const Word& w);
BigInt continuant_linear(const Word& w);
BigInt continuant_matrix(const Word& w);

// Open interval bracketing the value of [0; a1, a2, ...] after L quotients:
// the ordered pair of the (L-1)-th and L-th convergents. Requires L >= 1.
struct RationalInterval {
  BigRat lo, hi;
};
RationalInterval eval_interval(WordStream& cf, std::uint64_t L);
RationalInterval eval_interval(const Word& quotients, std::uint64_t L);

// Natural log of a positive bigint. Computed from the leading 256 bits plus
// the bit length, so cost is O(1) in the magnitude. The environment variable
// CFSTAMMER_LOG_DIGITS (decimal digits, default 30, clamped to [15, 50])
// selects the internal precision; the result is always a double.
double log_of(const BigInt& q);

// Windowed growth estimate over the trailing tail_fraction of the scan:
// M_hat / m_hat are max / min of q_l^{1/l} over the window.
struct GrowthEstimate {
  double M_hat = 0.0;
  double m_hat = 0.0;
  std::uint64_t window_start = 0;  // first l in the window (1-based)
  std::uint64_t window_end = 0;    // last l in the window
  std::vector<double> samples;     // q_l^{1/l} for l in the window
};

// Requires at least 10 convergents with l >= 1 and tail_fraction in (0, 1].
GrowthEstimate growth_estimate(const std::vector<Convergent>& convs, double tail_fraction);
// Same, from precomputed natural logs of q_l (log_q[i] is for l = i + 1).
GrowthEstimate growth_from_logs(const std::vector<double>& log_q, double tail_fraction);

// CSV dump "l,p,q,growth" with q_l^{1/l} at 15 significant digits.
void write_convergents_csv(std::ostream& out, const Word& quotients, std::uint64_t L);

}  // namespace cfstammer
