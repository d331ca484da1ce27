// cfstammer: exact continued-fraction streams, prefix-repetition structure,
// growth estimates and verdicts for the bundled word families.
//
// Exit codes: 0 success (including Inconclusive verdicts), 2 invalid input,
// 3 verification-suite failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfstammer/cf.hpp"
#include "cfstammer/generators.hpp"
#include "cfstammer/matgrowth.hpp"
#include "cfstammer/report.hpp"
#include "cfstammer/repetition.hpp"
#include "cfstammer/text_io.hpp"
#include "cfstammer/words.hpp"

namespace cfs = cfstammer;

namespace {

struct FamilyOptions {
  std::string a = "1", b = "2";
  std::string theta = "golden";
  std::string k = "2";
  std::string instructions = "plus";
  std::string word;
  std::vector<std::string> syms;
  std::string schedule = "0";
  std::string alphabet = "1,2,3";
  std::string lambda = "4";
  std::string blocks = "random:42";
  std::string odd = "true";
};

void add_family_options(CLI::App* cmd, FamilyOptions& fo) {
  cmd->add_option("--a", fo.a, "first output letter (automatic/paperfolding families)");
  cmd->add_option("--b", fo.b, "second output letter (automatic/paperfolding families)");
  cmd->add_option("--theta", fo.theta,
                  "quotient pattern: golden, sqrt2m1, sqrt3m1 or a comma list like 1,2");
  cmd->add_option("--k", fo.k, "davison modulus k");
  cmd->add_option("--instructions", fo.instructions,
                  "paperfolding instructions: plus, minus, a +/- pattern, or random:SEED");
  cmd->add_option("--word", fo.word, "perturbed: seed word (comma letter list)");
  cmd->add_option("--sym", fo.syms,
                  "perturbed: one symmetry \"X1:M1;X2:M2\" with X a comma letter list (may be "
                  "empty) and M in {E,R}; repeatable");
  cmd->add_option("--schedule", fo.schedule,
                  "perturbed: comma index list or random:SEED (default 0,0,0,...)");
  cmd->add_option("--alphabet", fo.alphabet, "concat: alphabet letters (comma list)");
  cmd->add_option("--lambda", fo.lambda, "concat: block growth ratio");
  cmd->add_option("--blocks", fo.blocks, "concat: random:SEED or file:PATH");
  cmd->add_option("--odd", fo.odd, "concat random blocks: force odd lengths (true/false)");
}

std::map<std::string, std::string> family_params(const std::string& family,
                                                 const FamilyOptions& fo) {
  std::map<std::string, std::string> p;
  if (family == "baum-sweet" || family == "rudin-shapiro" || family == "paperfolding") {
    p["a"] = fo.a;
    p["b"] = fo.b;
  }
  if (family == "davison") {
    p["theta"] = fo.theta;
    p["k"] = fo.k;
  }
  if (family == "paperfolding") p["instructions"] = fo.instructions;
  if (family == "perturbed") {
    p["word"] = fo.word;
    for (std::size_t i = 0; i < fo.syms.size(); ++i) p["sym" + std::to_string(i)] = fo.syms[i];
    p["schedule"] = fo.schedule;
  }
  if (family == "concat") {
    p["alphabet"] = fo.alphabet;
    p["lambda"] = fo.lambda;
    p["blocks"] = fo.blocks;
    p["odd"] = fo.odd;
  }
  return p;
}

int cmd_generate(const std::string& family, const FamilyOptions& fo, std::uint64_t count) {
  auto stream = cfs::make_family_stream(family, family_params(family, fo));
  const cfs::Word w = cfs::take(*stream, count);
  cfs::write_word_line(std::cout, w);
  return 0;
}

int cmd_analyze(const std::string& family, const FamilyOptions& fo, const std::string& input,
                cfs::AnalysisConfig cfg, const std::string& dump_csv) {
  cfs::Word prefix;
  if (!input.empty()) {
    cfg.family = "file";
    cfg.params = {{"path", input}};
    const cfs::WordFile wf = cfs::read_word_file(input);
    if (wf.words.empty()) throw std::invalid_argument("analyze: no words in " + input);
    prefix = wf.words[0];
    if (prefix.size() > cfg.prefix_len) prefix.resize(cfg.prefix_len);
  } else {
    cfg.family = family;
    cfg.params = family_params(family, fo);
    auto stream = cfs::make_family_stream(family, cfg.params);
    prefix = cfs::take(*stream, cfg.prefix_len);
  }

  const cfs::ReportDocument doc = cfs::run_analysis(cfg, prefix);
  std::cout << cfs::to_json(doc).dump(2) << '\n';

  if (!dump_csv.empty()) {
    std::ofstream out(dump_csv);
    if (!out) throw std::invalid_argument("cannot open " + dump_csv);
    cfs::write_convergents_csv(out, prefix, prefix.size());
  }
  return 0;
}

int verify_floor_suite(const std::string& theta, unsigned n_max, std::uint64_t cap) {
  cfs::Word pattern;
  if (theta == "golden")
    pattern = {1};
  else if (theta == "sqrt2m1")
    pattern = {2};
  else if (theta == "sqrt3m1")
    pattern = {1, 2};
  else
    pattern = cfs::parse_letter_list(theta);

  const auto rep = cfs::verify_floor_identities(pattern, n_max, cap);
  std::printf("floor-identities theta=%s n_max=%u cap=%llu\n", theta.c_str(), n_max,
              static_cast<unsigned long long>(cap));
  std::printf("  shift:      %llu checked\n", static_cast<unsigned long long>(rep.shift_checked));
  std::printf("  scaled:     %llu checked\n", static_cast<unsigned long long>(rep.scaled_checked));
  std::printf("  telescoped: %llu checked\n",
              static_cast<unsigned long long>(rep.telescoped_checked));
  if (!rep.pass) {
    std::printf("  FAIL: %s\n", rep.first_failure.c_str());
    return 3;
  }
  std::printf("  PASS\n");
  return 0;
}

int verify_continuants_suite(std::uint64_t trials, std::size_t max_len, cfs::Letter max_letter,
                             std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<cfs::Letter> letter_dist(1, max_letter);
  std::uint64_t split_checks = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t len = len_dist(gen);
    cfs::Word w(len);
    for (auto& x : w) x = letter_dist(gen);

    const cfs::BigInt k = cfs::continuant_linear(w);
    if (k != cfs::continuant_matrix(w)) {
      std::printf("FAIL: continuant route mismatch at trial %llu\n",
                  static_cast<unsigned long long>(t));
      return 3;
    }
    if (k != cfs::continuant_linear(cfs::mirror(w))) {
      std::printf("FAIL: mirror continuant mismatch at trial %llu\n",
                  static_cast<unsigned long long>(t));
      return 3;
    }
    // Every split: K(W1) K(W2) <= K(W) <= 2 K(W1) K(W2).
    std::vector<cfs::BigInt> fwd(len + 1), bwd(len + 1);
    {
      cfs::BigInt q = 1, qp = 0;
      fwd[0] = q;
      for (std::size_t i = 0; i < len; ++i) {
        cfs::BigInt nq = cfs::BigInt(w[i]) * q + qp;
        qp = q;
        q = nq;
        fwd[i + 1] = q;
      }
      q = 1;
      qp = 0;
      bwd[len] = q;
      for (std::size_t i = len; i-- > 0;) {
        cfs::BigInt nq = cfs::BigInt(w[i]) * q + qp;
        qp = q;
        q = nq;
        bwd[i] = q;
      }
    }
    for (std::size_t cut = 0; cut <= len; ++cut) {
      const cfs::BigInt prod = fwd[cut] * bwd[cut];
      if (!(prod <= k && k <= 2 * prod)) {
        std::printf("FAIL: split bound violated at trial %llu cut %zu\n",
                    static_cast<unsigned long long>(t), cut);
        return 3;
      }
      ++split_checks;
    }
  }
  std::printf("continuants trials=%llu: route+mirror checks %llu, split bounds %llu\n",
              static_cast<unsigned long long>(trials),
              static_cast<unsigned long long>(2 * trials),
              static_cast<unsigned long long>(split_checks));
  std::printf("  PASS\n");
  return 0;
}

int verify_matrix_suite(cfs::Letter max_letter, std::uint64_t trials, std::uint64_t seed) {
  // Pairwise product-radius margins.
  std::uint64_t margin_checks = 0;
  for (cfs::Letter a = 1; a <= max_letter; ++a)
    for (cfs::Letter b = a + 1; b <= max_letter; ++b) {
      if (!(cfs::product_radius_margin(a, b) > 0.0)) {
        std::printf("FAIL: non-positive product-radius margin at (%u, %u)\n", a, b);
        return 3;
      }
      ++margin_checks;
    }

  // Closed-form radius vs the quadratic formula, and rho(B)^2 = rho(B^2).
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<cfs::Letter> big(1, 1000000);
  std::uint64_t radius_checks = 0;
  for (cfs::Letter b = 1; b <= 1000; ++b) {
    const double rho = cfs::spectral_radius(cfs::letter_matrix(b));
    const double expect = (b + std::sqrt(static_cast<double>(b) * b + 4.0)) / 2.0;
    if (std::abs(rho - expect) > 1e-12 * expect) {
      std::printf("FAIL: radius closed form mismatch at b=%u\n", b);
      return 3;
    }
    ++radius_checks;
  }
  for (int i = 0; i < 1000; ++i) {
    const cfs::Letter b = big(gen);
    const cfs::Mat2 m = cfs::letter_matrix(b);
    const double rho = cfs::spectral_radius(m);
    const double expect = (b + std::sqrt(static_cast<double>(b) * b + 4.0)) / 2.0;
    if (std::abs(rho - expect) > 1e-12 * expect) {
      std::printf("FAIL: radius closed form mismatch at b=%u\n", b);
      return 3;
    }
    const double rho_sq = cfs::spectral_radius(m * m);
    if (std::abs(rho * rho - rho_sq) > 1e-9 * rho_sq) {
      std::printf("FAIL: rho(B)^2 != rho(B^2) at b=%u\n", b);
      return 3;
    }
    radius_checks += 2;
  }

  // Threshold constant.
  const cfs::SpectrumReport spec3 = cfs::alphabet_spectrum(cfs::Alphabet({1, 2, 3}));
  if (std::abs(spec3.threshold - 3.2598870056497176) > 1e-9) {
    std::printf("FAIL: threshold constant drifted: %.17g\n", spec3.threshold);
    return 3;
  }

  // Trace inequality spot checks: rearranging an equal-count product between
  // outer letter matrices never beats rho(B_first B_last)^l * tr(rest).
  std::uint64_t trace_checks = 0;
  for (int l : {1, 3}) {
    for (int t = 0; t < 200; ++t) {
      cfs::Word v;
      for (cfs::Letter x : {1, 2, 3}) v.insert(v.end(), static_cast<std::size_t>(l), x);
      std::shuffle(v.begin(), v.end(), gen);
      cfs::Mat2 full = cfs::Mat2::identity();
      cfs::Mat2 inner = cfs::Mat2::identity();
      for (cfs::Letter x : v) full = full * cfs::letter_matrix(x);
      for (cfs::Letter x : v)
        if (x != 1 && x != 3) inner = inner * cfs::letter_matrix(x);
      const double lhs = full.trace().convert_to<double>();
      const double rho_pair = cfs::spectral_radius(cfs::letter_matrix(1) * cfs::letter_matrix(3));
      const double rhs = std::pow(rho_pair, l) * inner.trace().convert_to<double>();
      if (!(lhs >= rhs * (1.0 - 1e-9))) {
        std::printf("FAIL: trace inequality violated (l=%d)\n", l);
        return 3;
      }
      ++trace_checks;
    }
  }

  // Upper/lower continuant growth checks on random equal-count words.
  std::uint64_t bound_checks = 0;
  for (std::size_t k : {std::size_t{3}, std::size_t{5}}) {
    std::vector<cfs::Letter> letters;
    for (std::size_t i = 1; i <= k; ++i) letters.push_back(static_cast<cfs::Letter>(i));
    const cfs::SpectrumReport spec = cfs::alphabet_spectrum(cfs::Alphabet(letters));
    std::uniform_int_distribution<std::size_t> h_dist(1, 15);
    for (std::uint64_t t = 0; t < trials; ++t) {
      std::size_t h = h_dist(gen);
      cfs::Word v;
      for (cfs::Letter x : letters) v.insert(v.end(), h, x);
      std::shuffle(v.begin(), v.end(), gen);
      const auto up = cfs::bound_check_upper(v, spec);
      if (!up.pass) {
        std::printf("FAIL: upper growth bound violated (k=%zu)\n", k);
        return 3;
      }
      ++bound_checks;
      if ((h * k) % 2 == 1) {
        const auto lo = cfs::bound_check_lower(v, spec);
        if (!lo.pass) {
          std::printf("FAIL: lower growth bound violated (k=%zu)\n", k);
          return 3;
        }
        ++bound_checks;
      }
    }
  }

  std::printf("matrix-growth: %llu pair margins, %llu radius checks, %llu trace checks, "
              "%llu bound checks\n",
              static_cast<unsigned long long>(margin_checks),
              static_cast<unsigned long long>(radius_checks),
              static_cast<unsigned long long>(trace_checks),
              static_cast<unsigned long long>(bound_checks));
  std::printf("  PASS\n");
  return 0;
}

int verify_cross_oracles_suite(std::uint64_t count) {
  // Baum-Sweet: direct binary-block rule vs morphic fixed point + coding.
  {
    auto direct = cfs::baum_sweet_stream(1, 2);
    auto morphic = cfs::coding_apply(cfs::bs_coding(1, 2),
                                     cfs::fixed_point_stream(cfs::bs_morphism(), 1));
    for (std::uint64_t i = 0; i < count; ++i) {
      if (*direct->next() != *morphic->next()) {
        std::printf("FAIL: baum-sweet oracle mismatch at index %llu\n",
                    static_cast<unsigned long long>(i));
        return 3;
      }
    }
  }
  // Rudin-Shapiro: direct digit-pair rule vs morphic fixed point + coding.
  {
    auto direct = cfs::rudin_shapiro_stream(1, 2);
    auto morphic = cfs::coding_apply(cfs::rs_coding(1, 2),
                                     cfs::fixed_point_stream(cfs::rs_morphism(), 1));
    for (std::uint64_t i = 0; i < count; ++i) {
      if (*direct->next() != *morphic->next()) {
        std::printf("FAIL: rudin-shapiro oracle mismatch at index %llu\n",
                    static_cast<unsigned long long>(i));
        return 3;
      }
    }
  }
  // Beatty floors: convergent bracketing vs integer-sqrt closed forms.
  {
    using cfs::BigInt;
    struct Case {
      const char* name;
      cfs::Word pattern;
      BigInt (*closed)(std::uint64_t);
    };
    const Case cases[] = {
        {"golden", {1},
         [](std::uint64_t n) {
           return (boost::multiprecision::sqrt(BigInt(5) * n * n) - n) / 2;
         }},
        {"sqrt2m1", {2},
         [](std::uint64_t n) { return boost::multiprecision::sqrt(BigInt(2) * n * n) - n; }},
        {"sqrt3m1", {1, 2},
         [](std::uint64_t n) { return boost::multiprecision::sqrt(BigInt(3) * n * n) - n; }},
    };
    const std::uint64_t n_max = std::min<std::uint64_t>(count, 5000);
    for (const auto& c : cases) {
      cfs::BeattyOracle oracle(std::make_unique<cfs::PeriodicStream>(c.pattern));
      for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (oracle.floor_mult(BigInt(n)) != c.closed(n)) {
          std::printf("FAIL: floor oracle mismatch (%s) at n=%llu\n", c.name,
                      static_cast<unsigned long long>(n));
          return 3;
        }
      }
    }
  }
  std::printf("cross-oracles count=%llu: baum-sweet, rudin-shapiro, beatty floors\n",
              static_cast<unsigned long long>(count));
  std::printf("  PASS\n");
  return 0;
}

int cmd_matrix_report(const std::string& alphabet) {
  const cfs::SpectrumReport rep = cfs::alphabet_spectrum(
      cfs::Alphabet(cfs::parse_letter_list(alphabet)));
  nlohmann::json j;
  j["alphabet"] = rep.alphabet.letters;
  j["rho"] = rep.rho;
  j["gamma"] = rep.gamma;
  j["X"] = rep.X;
  j["threshold"] = rep.threshold;
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact continued-fraction streams, repetition structure and growth verdicts"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit the first letters of a family word");
  std::string gen_family;
  FamilyOptions gen_fo;
  std::uint64_t gen_count = 64;
  gen->add_option("family", gen_family,
                  "baum-sweet | rudin-shapiro | davison | paperfolding | perturbed | concat")
      ->required();
  gen->add_option("--count", gen_count, "number of letters");
  add_family_options(gen, gen_fo);

  // analyze
  auto* ana = app.add_subcommand("analyze", "run the repetition/growth pipeline, print JSON");
  std::string ana_family, ana_input, ana_dump;
  FamilyOptions ana_fo;
  cfs::AnalysisConfig cfg;
  std::string ana_min_w = "5/4", ana_max_wprime = "1/2", ana_growth = "windowed";
  ana->add_option("family", ana_family, "family name (or use --input)");
  ana->add_option("--input", ana_input, "analyze the first word of this file instead");
  ana->add_option("--prefix", cfg.prefix_len, "prefix length (>= 100)");
  ana->add_option("--max-r", cfg.max_r, "largest repetition offset scanned");
  ana->add_option("--min-w", ana_min_w, "minimal exponent kept by the detector (rational)");
  ana->add_option("--scales", cfg.T, "required witness scales T (>= 3)");
  ana->add_option("--max-wprime", ana_max_wprime, "offset-ratio bound r/s (rational)");
  ana->add_option("--tail-fraction", cfg.tail_fraction, "growth window fraction (0, 1]");
  ana->add_option("--growth", ana_growth, "growth mode: windowed | converged");
  ana->add_option("--max-period", cfg.max_period, "periodicity scan bound (0 = auto)");
  ana->add_option("--max-preperiod", cfg.max_preperiod, "periodicity scan bound (0 = auto)");
  ana->add_option("--head", cfg.head_letters, "letters echoed in the report");
  ana->add_option("--dump-convergents", ana_dump, "write l,p,q,growth CSV to this path");
  add_family_options(ana, ana_fo);

  // verify
  auto* ver = app.add_subcommand("verify", "run a self-check suite");
  std::string ver_suite, ver_theta = "golden";
  unsigned ver_nmax = 12;
  std::uint64_t ver_cap = 100000, ver_trials = 0, ver_count = 100000, ver_seed = 12345;
  std::size_t ver_maxlen = 60;
  cfs::Letter ver_maxletter = 0;
  ver->add_option("suite", ver_suite,
                  "floor-identities | continuants | matrix-growth | cross-oracles")
      ->required();
  ver->add_option("--theta", ver_theta, "floor-identities: quotient pattern");
  ver->add_option("--n-max", ver_nmax, "floor-identities: largest convergent index");
  ver->add_option("--cap", ver_cap, "floor-identities: per-identity instance cap");
  ver->add_option("--trials", ver_trials, "continuants/matrix-growth: random trials");
  ver->add_option("--max-len", ver_maxlen, "continuants: longest random word");
  ver->add_option("--max-letter", ver_maxletter, "continuants/matrix-growth: largest letter");
  ver->add_option("--count", ver_count, "cross-oracles: letters compared per family");
  ver->add_option("--seed", ver_seed, "random seed");

  // matrix-report
  auto* mat = app.add_subcommand("matrix-report", "spectral radii, X and threshold as JSON");
  std::string mat_alphabet = "1,2,3";
  mat->add_option("--alphabet", mat_alphabet, "odd-size alphabet (comma list)");

  try {
    app.parse(argc, argv);

    if (gen->parsed()) return cmd_generate(gen_family, gen_fo, gen_count);

    if (ana->parsed()) {
      if (ana_family.empty() && ana_input.empty())
        throw CLI::ValidationError("analyze", "need a family or --input FILE");
      cfg.min_w = cfs::parse_rational(ana_min_w);
      cfg.max_wprime = cfs::parse_rational(ana_max_wprime);
      if (ana_growth == "converged")
        cfg.growth_mode = cfs::GrowthMode::converged;
      else if (ana_growth != "windowed")
        throw CLI::ValidationError("analyze", "--growth must be windowed or converged");
      return cmd_analyze(ana_family, ana_fo, ana_input, cfg, ana_dump);
    }

    if (ver->parsed()) {
      if (ver_suite == "floor-identities")
        return verify_floor_suite(ver_theta, ver_nmax, ver_cap);
      if (ver_suite == "continuants")
        return verify_continuants_suite(ver_trials ? ver_trials : 10000, ver_maxlen,
                                        ver_maxletter ? ver_maxletter : 10, ver_seed);
      if (ver_suite == "matrix-growth")
        return verify_matrix_suite(ver_maxletter ? ver_maxletter : 50,
                                   ver_trials ? ver_trials : 1000, ver_seed);
      if (ver_suite == "cross-oracles") return verify_cross_oracles_suite(ver_count);
      throw CLI::ValidationError("verify", "unknown suite: " + ver_suite);
    }

    if (mat->parsed()) return cmd_matrix_report(mat_alphabet);

    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
