#pragma once
// Exact 2x2 letter matrices, spectral radii, the alphabet growth spectrum,
// continuant growth bound checks, and the concatenation-family growth
// analyzer.

#include <cstdint>
#include <vector>

#include "cfstammer/cf.hpp"
#include "cfstammer/generators.hpp"
#include "cfstammer/words.hpp"

namespace cfstammer {

// Exponent in the product-radius margin rho(AB) - (rho(A) rho(B))^gamma.
inline constexpr double kGamma = 0.885;

struct Mat2 {
  BigInt a, b, c, d;  // row-major [[a, b], [c, d]]

  static Mat2 identity() { return {1, 0, 0, 1}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  BigInt trace() const { return a + d; }
  BigInt det() const { return a * d - b * c; }
};

// B_x = [[x, 1], [1, 0]], the continuant transfer matrix of letter x >= 1.
Mat2 letter_matrix(Letter x);

// Larger eigenvalue magnitude (|tr| + sqrt(tr^2 - 4 det)) / 2, to 1e-12
// relative accuracy. Throws std::invalid_argument when tr^2 < 4 det (complex
// eigenvalues) — products of letter matrices never hit that case.
double spectral_radius(const Mat2& m);

// rho(B_a B_b) - (rho(B_a) rho(B_b))^gamma; strictly positive for a != b.
double product_radius_margin(Letter a, Letter b);

struct SpectrumReport {
  Alphabet alphabet;
  std::vector<double> rho;  // rho(B_x) per alphabet letter, in order
  double gamma = kGamma;
  double X = 0.0;          // (1/k) sum of log rho(B_x)
  double threshold = 0.0;  // 1 + 2/gamma, the growth-ratio threshold
};

// Requires odd alphabet size >= 3.
SpectrumReport alphabet_spectrum(const Alphabet& alphabet);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// Both checks require V non-empty with equal letter counts over the alphabet.
// Upper: log K(V) / |V| <= X + 1e-12.
BoundCheck bound_check_upper(const Word& v, const SpectrumReport& spectrum);
// Lower (additionally requires odd |V|): log K(V) / |V| > gamma X - log(4)/|V| - 1e-12.
BoundCheck bound_check_lower(const Word& v, const SpectrumReport& spectrum);

struct ConcatGrowthRow {
  std::size_t n = 0;        // block index, n >= 2
  std::uint64_t u_len = 0;  // |U_n|, U_n = W1 W2^2 ... W_{n-1}^2
  std::uint64_t v_len = 0;  // |V_n|, V_n = W_n
  double eps_n = 0.0;       // log K(V_n) / log K(U_n) - 1
  double sandwich_lhs = 0.0;  // 2X/(lambda - 1) + 2n/|V_n|
  double sandwich_rhs = 0.0;  // gamma X - log(4)/|V_n|
};

struct ConcatGrowthReport {
  double lambda = 0.0;
  double X = 0.0;
  double threshold = 0.0;     // 1 + 2/gamma
  bool threshold_pass = false;  // lambda > threshold
  std::vector<ConcatGrowthRow> rows;  // n = 2..n_blocks
};

// Growth diagnostics for a = W1 W2^2 W3^2 ...: for each n in 2..n_blocks,
// eps_n compares the continuant growth of block W_n against the assembled
// prefix before it. The sandwich columns report the two sides that squeeze
// eps_n when lambda exceeds the threshold; they are diagnostics, not asserts.
// Requires n_blocks >= 3.
ConcatGrowthReport analyze_concat_growth(const ConcatFamily& fam, std::size_t n_blocks);

}  // namespace cfstammer
