#include "cfstammer/cf.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

namespace cfstammer {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

void require_letter(Letter a) {
  if (a == 0) throw std::invalid_argument("partial quotients must be positive");
}

int log_digits_from_env() {
  const char* s = std::getenv("CFSTAMMER_LOG_DIGITS");
  if (!s || !*s) return 30;
  int d = std::atoi(s);
  if (d < 15) d = 15;
  if (d > 50) d = 50;
  return d;
}

}  // namespace

void ConvergentScan::push(Letter a) {
  require_letter(a);
  BigInt np = BigInt(a) * p_ + pp_;
  BigInt nq = BigInt(a) * q_ + qp_;
  pp_ = std::move(p_);
  qp_ = std::move(q_);
  p_ = std::move(np);
  q_ = std::move(nq);
  ++index_;
}

std::vector<Convergent> convergents(WordStream& cf, std::uint64_t L) {
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(L) + 1);
  ConvergentScan scan;
  out.push_back(scan.current());
  for (std::uint64_t l = 1; l <= L; ++l) {
    auto a = cf.next();
    if (!a)
      throw StreamExhausted("expansion ended before index " + std::to_string(l) +
                            " (rational input)");
    scan.push(*a);
    out.push_back(scan.current());
  }
  return out;
}

std::vector<Convergent> convergents(const Word& quotients, std::uint64_t L) {
  FiniteWordStream s(quotients);
  return convergents(s, L);
}

BigInt continuant_linear(const Word& w) {
  BigInt q = 1, qp = 0;
  for (Letter a : w) {
    require_letter(a);
    BigInt nq = BigInt(a) * q + qp;
    qp = std::move(q);
    q = std::move(nq);
  }
  return q;
}

namespace {

struct QuadMat {
  // [[q, q_prev], [p, p_prev]] for the word of the covered range.
  BigInt q, qp, p, pp;
};

QuadMat quad_of_range(const Word& w, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 32) {
    BigInt q = 1, qp = 0, p = 0, pp = 1;
    for (std::size_t i = lo; i < hi; ++i) {
      require_letter(w[i]);
      BigInt a(w[i]);
      BigInt nq = a * q + qp;
      BigInt np = a * p + pp;
      qp = std::move(q);
      q = std::move(nq);
      pp = std::move(p);
      p = std::move(np);
    }
    return {std::move(q), std::move(qp), std::move(p), std::move(pp)};
  }
  std::size_t mid = lo + (hi - lo) / 2;
  QuadMat l = quad_of_range(w, lo, mid);
  QuadMat r = quad_of_range(w, mid, hi);
  // M(a1..am) = M(a1)...M(am) = [[q_m, q_{m-1}], [p_m, p_{m-1}]], so the
  // matrix of the concatenation is the plain product L * R.
  return {l.q * r.q + l.qp * r.p, l.q * r.qp + l.qp * r.pp, l.p * r.q + l.pp * r.p,
          l.p * r.qp + l.pp * r.pp};
}

}  // namespace

BigInt continuant_matrix(const Word& w) { return quad_of_range(w, 0, w.size()).q; }

BigInt continuant(const Word& w) {
  return w.size() > kContinuantSplitLen ? continuant_matrix(w) : continuant_linear(w);
}

RationalInterval eval_interval(WordStream& cf, std::uint64_t L) {
  if (L < 1) throw std::invalid_argument("eval_interval: L must be >= 1");
  ConvergentScan scan;
  for (std::uint64_t l = 1; l <= L; ++l) {
    auto a = cf.next();
    if (!a)
      throw StreamExhausted("expansion ended before index " + std::to_string(l) +
                            " (rational input)");
    scan.push(*a);
  }
  BigRat prev(scan.p_prev(), scan.q_prev());
  BigRat last(scan.p(), scan.q());
  if (prev < last) return {std::move(prev), std::move(last)};
  return {std::move(last), std::move(prev)};
}

RationalInterval eval_interval(const Word& quotients, std::uint64_t L) {
  FiniteWordStream s(quotients);
  return eval_interval(s, L);
}

double log_of(const BigInt& q) {
  if (q <= 0) throw std::invalid_argument("log_of: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(q) + 1;
  const int digits = log_digits_from_env();
  if (bits <= 63) {
    return std::log(static_cast<double>(q.convert_to<unsigned long long>()));
  }
  if (digits <= 19) {
    // Leading 63 bits carry ~19 significant digits; long double arithmetic.
    const auto top = (q >> (bits - 63)).convert_to<unsigned long long>();
    const long double ln2 = 0.6931471805599453094172321214581766L;
    return static_cast<double>(logl(static_cast<long double>(top)) +
                               static_cast<long double>(bits - 63) * ln2);
  }
  static const BigFloat ln2_hp = log(BigFloat(2));
  const unsigned keep = bits > 256 ? 256u : bits;
  const BigInt top = q >> (bits - keep);
  BigFloat val = log(top.convert_to<BigFloat>()) + BigFloat(bits - keep) * ln2_hp;
  return val.convert_to<double>();
}

GrowthEstimate growth_from_logs(const std::vector<double>& log_q, double tail_fraction) {
  if (log_q.size() < 10)
    throw std::invalid_argument("growth estimate: need at least 10 convergents");
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
    throw std::invalid_argument("growth estimate: tail_fraction must be in (0, 1]");
  const std::size_t n = log_q.size();
  auto wcount = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  if (wcount < 1) wcount = 1;
  if (wcount > n) wcount = n;
  const std::size_t start = n - wcount;

  GrowthEstimate g;
  g.window_start = start + 1;  // l is 1-based
  g.window_end = n;
  g.samples.reserve(wcount);
  for (std::size_t i = start; i < n; ++i) {
    const double l = static_cast<double>(i + 1);
    g.samples.push_back(std::exp(log_q[i] / l));
  }
  g.M_hat = g.samples[0];
  g.m_hat = g.samples[0];
  for (double s : g.samples) {
    if (s > g.M_hat) g.M_hat = s;
    if (s < g.m_hat) g.m_hat = s;
  }
  return g;
}

GrowthEstimate growth_estimate(const std::vector<Convergent>& convs, double tail_fraction) {
  std::vector<double> log_q;
  log_q.reserve(convs.size());
  for (const Convergent& c : convs) {
    if (c.index == 0) continue;
    if (c.index != log_q.size() + 1)
      throw std::invalid_argument("growth estimate: convergent indices must be consecutive");
    log_q.push_back(log_of(c.q));
  }
  return growth_from_logs(log_q, tail_fraction);
}

void write_convergents_csv(std::ostream& out, const Word& quotients, std::uint64_t L) {
  out << "l,p,q,growth\n";
  ConvergentScan scan;
  char buf[40];
  out << "0,0,1,\n";
  for (std::uint64_t l = 1; l <= L; ++l) {
    if (l > quotients.size())
      throw StreamExhausted("expansion ended before index " + std::to_string(l) +
                            " (rational input)");
    scan.push(quotients[static_cast<std::size_t>(l - 1)]);
    const double growth = std::exp(log_of(scan.q()) / static_cast<double>(l));
    std::snprintf(buf, sizeof(buf), "%.15g", growth);
    out << l << ',' << scan.p().str() << ',' << scan.q().str() << ',' << buf << '\n';
  }
}

}  // namespace cfstammer
