#include "cfstammer/matgrowth.hpp"

#include <algorithm>
#include <cmath>

namespace cfstammer {

namespace {

double to_double_checked(const BigInt& x) {
  // All spectral uses involve products of a handful of letter matrices, far
  // below double range; guard anyway.
  if (boost::multiprecision::msb(x == 0 ? BigInt(1) : boost::multiprecision::abs(x)) > 1000)
    throw std::invalid_argument("spectral radius: matrix entries too large for double");
  return x.convert_to<double>();
}

// Letter counts of an equal-count word over the alphabet; returns the shared
// per-letter count. Throws unless counts are equal and letters are in range.
std::size_t equal_count_of(const Word& v, const Alphabet& alphabet) {
  if (v.empty()) throw std::invalid_argument("bound check: empty word");
  std::vector<std::size_t> counts(alphabet.size(), 0);
  for (Letter x : v) {
    auto it = std::lower_bound(alphabet.letters.begin(), alphabet.letters.end(), x);
    if (it == alphabet.letters.end() || *it != x)
      throw std::invalid_argument("bound check: letter outside alphabet");
    ++counts[static_cast<std::size_t>(it - alphabet.letters.begin())];
  }
  for (std::size_t c : counts)
    if (c != counts[0])
      throw std::invalid_argument("bound check: letter counts are not equal");
  return counts[0];
}

}  // namespace

Mat2 letter_matrix(Letter x) {
  if (x == 0) throw std::invalid_argument("letter matrix: letter must be positive");
  return {BigInt(x), 1, 1, 0};
}

double spectral_radius(const Mat2& m) {
  const BigInt tr = m.trace();
  const BigInt disc = tr * tr - 4 * m.det();
  if (disc < 0)
    throw std::invalid_argument("spectral radius: complex eigenvalues (tr^2 < 4 det)");
  const double trd = std::abs(to_double_checked(tr));
  const double sq = std::sqrt(to_double_checked(disc));
  return (trd + sq) / 2.0;
}

double product_radius_margin(Letter a, Letter b) {
  if (a == b) throw std::invalid_argument("product radius margin: letters must differ");
  const Mat2 A = letter_matrix(a);
  const Mat2 B = letter_matrix(b);
  const double rho_ab = spectral_radius(A * B);
  const double rho_a = spectral_radius(A);
  const double rho_b = spectral_radius(B);
  return rho_ab - std::pow(rho_a * rho_b, kGamma);
}

SpectrumReport alphabet_spectrum(const Alphabet& alphabet) {
  if (alphabet.size() < 3 || alphabet.size() % 2 == 0)
    throw std::invalid_argument("alphabet spectrum: need an odd alphabet size >= 3");
  SpectrumReport rep{alphabet, {}, kGamma, 0.0, 0.0};
  double sum = 0.0;
  for (Letter x : alphabet.letters) {
    const double r = spectral_radius(letter_matrix(x));
    rep.rho.push_back(r);
    sum += std::log(r);
  }
  rep.X = sum / static_cast<double>(alphabet.size());
  rep.threshold = 1.0 + 2.0 / kGamma;
  return rep;
}

BoundCheck bound_check_upper(const Word& v, const SpectrumReport& spectrum) {
  equal_count_of(v, spectrum.alphabet);
  BoundCheck c;
  c.lhs = log_of(continuant(v)) / static_cast<double>(v.size());
  c.rhs = spectrum.X;
  c.pass = c.lhs <= c.rhs + 1e-12;
  return c;
}

BoundCheck bound_check_lower(const Word& v, const SpectrumReport& spectrum) {
  equal_count_of(v, spectrum.alphabet);
  if (v.size() % 2 == 0)
    throw std::invalid_argument("bound check: lower bound needs an odd-length word");
  BoundCheck c;
  c.lhs = log_of(continuant(v)) / static_cast<double>(v.size());
  c.rhs = kGamma * spectrum.X - std::log(4.0) / static_cast<double>(v.size());
  c.pass = c.lhs > c.rhs - 1e-12;
  return c;
}

ConcatGrowthReport analyze_concat_growth(const ConcatFamily& fam, std::size_t n_blocks) {
  if (n_blocks < 3) throw std::invalid_argument("concat growth: need n_blocks >= 3");
  const SpectrumReport spectrum = alphabet_spectrum(fam.alphabet);

  ConcatGrowthReport rep;
  rep.lambda = fam.lambda;
  rep.X = spectrum.X;
  rep.threshold = spectrum.threshold;
  rep.threshold_pass = fam.lambda > spectrum.threshold;

  ConcatBlocks blocks(fam);
  Word u = blocks.block(1);  // U_n = W1 W2^2 ... W_{n-1}^2
  for (std::size_t n = 2; n <= n_blocks; ++n) {
    const Word& v = blocks.block(n);
    ConcatGrowthRow row;
    row.n = n;
    row.u_len = u.size();
    row.v_len = v.size();
    row.eps_n = log_of(continuant(v)) / log_of(continuant(u)) - 1.0;
    row.sandwich_lhs = 2.0 * spectrum.X / (fam.lambda - 1.0) +
                       2.0 * static_cast<double>(n) / static_cast<double>(v.size());
    row.sandwich_rhs = kGamma * spectrum.X - std::log(4.0) / static_cast<double>(v.size());
    rep.rows.push_back(row);
    u.reserve(u.size() + 2 * v.size());
    u.insert(u.end(), v.begin(), v.end());
    u.insert(u.end(), v.begin(), v.end());
  }
  return rep;
}

}  // namespace cfstammer
