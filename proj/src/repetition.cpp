#include "cfstammer/repetition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cfstammer {

namespace {

// Z-array of w[from..): z[i] = length of the longest common prefix of the
// suffix and the suffix shifted by i.
void z_array(const Letter* s, std::size_t n, std::vector<std::uint32_t>& z) {
  z.assign(n, 0);
  if (n == 0) return;
  z[0] = static_cast<std::uint32_t>(n);
  std::size_t l = 0, r = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t zi = 0;
    if (i < r) zi = std::min(r - i, static_cast<std::size_t>(z[i - l]));
    while (i + zi < n && s[zi] == s[i + zi]) ++zi;
    z[i] = static_cast<std::uint32_t>(zi);
    if (i + zi > r) {
      l = i;
      r = i + zi;
    }
  }
}

void validate_detect_args(const Word& prefix, std::uint64_t max_r, const Rat& min_w) {
  if (prefix.empty()) throw std::invalid_argument("detect: empty prefix");
  if (max_r >= prefix.size())
    throw std::invalid_argument("detect: max_r must be smaller than the prefix length");
  if (!(min_w > Rat(1))) throw std::invalid_argument("detect: min_w must exceed 1");
  if (min_w.denominator() > 1000000 || min_w.numerator() > 1000000000)
    throw std::invalid_argument("detect: min_w numerator/denominator too large");
}

}  // namespace

std::vector<RepetitionWitness> detect_repetitions(const Word& prefix, std::uint64_t max_r,
                                                  const Rat& min_w) {
  validate_detect_args(prefix, max_r, min_w);
  const std::size_t n = prefix.size();
  const auto wn = static_cast<std::uint64_t>(min_w.numerator());
  const auto wd = static_cast<std::uint64_t>(min_w.denominator());

  std::vector<std::uint64_t> best_p(n, 0), best_r(n, 0);
  std::vector<std::uint32_t> z;
  for (std::uint64_t r = 0; r <= max_r; ++r) {
    const std::size_t m = n - static_cast<std::size_t>(r);
    z_array(prefix.data() + r, m, z);
    for (std::size_t s = 1; s < m; ++s) {
      const std::uint64_t p = s + z[s];  // maximal s-periodic run length from r
      if (p * wd >= wn * s && p > best_p[s]) {
        best_p[s] = p;
        best_r[s] = r;
      }
    }
  }

  std::vector<RepetitionWitness> out;
  for (std::size_t s = 1; s < n; ++s)
    if (best_p[s] != 0) out.push_back({best_r[s], s, best_p[s]});
  return out;
}

ConditionReport condition_star(const Word& prefix, int T, const Rat& min_w) {
  if (prefix.size() < 10) throw std::invalid_argument("condition: prefix too short (< 10)");
  if (T < 3) throw std::invalid_argument("condition: T must be >= 3");
  ConditionReport rep;
  rep.T = T;
  rep.min_w = min_w;
  auto wits = detect_repetitions(prefix, 0, min_w);
  if (wits.size() < static_cast<std::size_t>(T)) {
    rep.star_witnesses = std::move(wits);
    return rep;
  }
  std::vector<Rat> ws;
  ws.reserve(wits.size());
  for (const auto& w : wits) ws.push_back(w.w());
  std::nth_element(ws.begin(), ws.begin() + (T - 1), ws.end(), std::greater<Rat>());
  const Rat star = ws[static_cast<std::size_t>(T - 1)];
  rep.star_w = star;
  for (const auto& w : wits)
    if (w.w() >= star) rep.star_witnesses.push_back(w);
  return rep;
}

ConditionReport condition_star(WordStream& s, std::size_t prefix_len, int T, const Rat& min_w) {
  return condition_star(take(s, prefix_len), T, min_w);
}

ConditionReport condition_star_star(const Word& prefix, int T, const Rat& min_w,
                                    const Rat& max_wprime, std::uint64_t max_r) {
  if (prefix.size() < 10) throw std::invalid_argument("condition: prefix too short (< 10)");
  if (T < 3) throw std::invalid_argument("condition: T must be >= 3");
  if (max_wprime < Rat(0)) throw std::invalid_argument("condition: max_wprime must be >= 0");
  ConditionReport rep;
  rep.T = T;
  rep.min_w = min_w;

  // One witness per scale is selected first (largest exponent, then smallest
  // offset); the offset-ratio filter applies to that table afterwards.
  auto table = detect_repetitions(prefix, max_r, min_w);
  std::vector<RepetitionWitness> eligible;
  for (const auto& w : table)
    if (w.offset_ratio() <= max_wprime) eligible.push_back(w);

  if (eligible.size() < static_cast<std::size_t>(T)) {
    rep.starstar_witnesses = std::move(eligible);
    return rep;
  }

  std::vector<Rat> ws;
  ws.reserve(eligible.size());
  for (const auto& w : eligible) ws.push_back(w.w());
  std::nth_element(ws.begin(), ws.begin() + (T - 1), ws.end(), std::greater<Rat>());
  const Rat wstar = ws[static_cast<std::size_t>(T - 1)];

  std::vector<Rat> ratios;
  for (const auto& w : eligible)
    if (w.w() >= wstar) ratios.push_back(w.offset_ratio());
  std::nth_element(ratios.begin(), ratios.begin() + (T - 1), ratios.end());
  const Rat wprime = ratios[static_cast<std::size_t>(T - 1)];

  rep.starstar_w = wstar;
  rep.starstar_wprime = wprime;
  for (const auto& w : eligible)
    if (w.w() >= wstar && w.offset_ratio() <= wprime) rep.starstar_witnesses.push_back(w);
  return rep;
}

ConditionReport condition_star_star(WordStream& s, std::size_t prefix_len, int T,
                                    const Rat& min_w, const Rat& max_wprime,
                                    std::uint64_t max_r) {
  return condition_star_star(take(s, prefix_len), T, min_w, max_wprime, max_r);
}

ConditionReport condition_both(const Word& prefix, int T, const Rat& min_w,
                               const Rat& max_wprime, std::uint64_t max_r) {
  ConditionReport star = condition_star(prefix, T, min_w);
  ConditionReport both = condition_star_star(prefix, T, min_w, max_wprime, max_r);
  both.star_w = star.star_w;
  both.star_witnesses = std::move(star.star_witnesses);
  return both;
}

std::optional<Periodicity> periodicity_scan(const Word& prefix, std::uint64_t max_period,
                                            std::uint64_t max_preperiod) {
  if (max_period < 1) throw std::invalid_argument("periodicity: max_period must be >= 1");
  if (max_preperiod + 2 * max_period > prefix.size())
    throw std::invalid_argument(
        "periodicity: need max_preperiod + 2*max_period <= prefix length");
  const std::size_t n = prefix.size();
  for (std::uint64_t p = 1; p <= max_period; ++p) {
    // Minimal preperiod for period p: one past the last mismatch at lag p.
    std::uint64_t rho = 0;
    for (std::size_t i = n - static_cast<std::size_t>(p); i-- > 0;) {
      if (prefix[i] != prefix[i + p]) {
        rho = i + 1;
        break;
      }
    }
    if (rho <= max_preperiod) return Periodicity{rho, p};
  }
  return std::nullopt;
}

std::optional<Periodicity> periodicity_scan(WordStream& s, std::size_t prefix_len,
                                            std::uint64_t max_period,
                                            std::uint64_t max_preperiod) {
  return periodicity_scan(take(s, prefix_len), max_period, max_preperiod);
}

std::string to_string(VerdictRule rule) {
  switch (rule) {
    case VerdictRule::theorem_a_w2: return "TheoremA_w2";
    case VerdictRule::theorem_a_bounded: return "TheoremA_bounded";
    case VerdictRule::theorem_31: return "Theorem31";
    case VerdictRule::theorem_b: return "TheoremB";
    case VerdictRule::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CriterionVerdict criterion_verdict(const ConditionReport& report, const GrowthEstimate& growth,
                                   const std::optional<Periodicity>& periodic,
                                   bool bounded_alphabet) {
  CriterionVerdict v;
  v.M_hat = growth.M_hat;
  v.m_hat = growth.m_hat;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "finite-prefix evidence at T=%d scales; growth over window [%llu, %llu] is an "
                "estimate, not a limit",
                report.T, static_cast<unsigned long long>(growth.window_start),
                static_cast<unsigned long long>(growth.window_end));
  v.caveat = buf;

  if (periodic) {
    v.rule = VerdictRule::inconclusive;
    v.caveat = "prefix is eventually periodic (preperiod " + std::to_string(periodic->preperiod) +
               ", period " + std::to_string(periodic->period) +
               "): bounded quadratic-style expansion, repetition rules not applicable";
    return v;
  }

  if (!(growth.M_hat > 1.0) || !(growth.m_hat > 1.0))
    throw std::domain_error("verdict: growth estimates must exceed 1");

  if (report.star_w && *report.star_w >= Rat(2)) {
    v.rule = VerdictRule::theorem_a_w2;
    v.w = report.star_w;
    v.margin = boost::rational_cast<double>(*report.star_w) - 2.0;
    return v;
  }
  if (report.star_w && *report.star_w > Rat(1) && bounded_alphabet) {
    v.rule = VerdictRule::theorem_a_bounded;
    v.w = report.star_w;
    v.margin = boost::rational_cast<double>(*report.star_w) - 1.0;
    return v;
  }

  if (report.starstar_w) {
    v.w = report.starstar_w;
    v.w_prime = report.starstar_wprime;
    const double w = boost::rational_cast<double>(*report.starstar_w);
    const double wp = boost::rational_cast<double>(*report.starstar_wprime);
    const double lM = std::log(growth.M_hat);
    const double lm = std::log(growth.m_hat);
    constexpr double kEps = 1e-12;  // outward rounding on both logs
    if (lm > kEps) {
      const double L_hi = (lM + kEps) / (lm - kEps);
      const double L_mid = lM / lm;
      if (w - (wp * (2.0 * L_hi - 1.0) + 1.0) > 0.0) {
        v.rule = VerdictRule::theorem_31;
        v.margin = w - (wp * (2.0 * L_mid - 1.0) + 1.0);
        return v;
      }
      if (w - (wp * (2.0 * L_hi - 1.0) + L_hi) > 0.0) {
        v.rule = VerdictRule::theorem_b;
        v.margin = w - (wp * (2.0 * L_mid - 1.0) + L_mid);
        return v;
      }
    }
  }

  v.rule = VerdictRule::inconclusive;
  if (!v.w) v.w = report.starstar_w ? report.starstar_w : report.star_w;
  if (!v.w_prime) v.w_prime = report.starstar_wprime;
  return v;
}

}  // namespace cfstammer
