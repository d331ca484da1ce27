#include "cfstammer/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "cfstammer/generators.hpp"
#include "cfstammer/text_io.hpp"

namespace cfstammer {

namespace {

std::string get_param(const std::map<std::string, std::string>& params, const std::string& key,
                      const std::string& dflt) {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

std::uint64_t get_u64(const std::map<std::string, std::string>& params, const std::string& key,
                      std::uint64_t dflt) {
  auto it = params.find(key);
  if (it == params.end()) return dflt;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for param '" + key + "': " + it->second);
  }
}

nlohmann::json rat_json(const Rat& r) {
  return {{"num", r.numerator()}, {"den", r.denominator()}};
}

nlohmann::json opt_rat_json(const std::optional<Rat>& r) {
  if (!r) return nullptr;
  return rat_json(*r);
}

nlohmann::json witnesses_json(const std::vector<RepetitionWitness>& ws) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : ws) {
    const Rat e = w.w();
    arr.push_back({{"r", w.r}, {"s", w.s}, {"w_num", e.numerator()}, {"w_den", e.denominator()}});
  }
  return arr;
}

}  // namespace

ReportDocument run_analysis(const AnalysisConfig& cfg, const Word& prefix) {
  if (cfg.prefix_len < 100)
    throw std::invalid_argument("analysis: prefix_len must be >= 100");
  if (prefix.size() < 100)
    throw std::invalid_argument("analysis: prefix must have at least 100 letters");
  if (cfg.T < 3) throw std::invalid_argument("analysis: T must be >= 3");
  if (!(cfg.min_w > Rat(1))) throw std::invalid_argument("analysis: min_w must exceed 1");
  if (!(cfg.tail_fraction > 0.0) || cfg.tail_fraction > 1.0)
    throw std::invalid_argument("analysis: tail_fraction must be in (0, 1]");

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = prefix.size();

  ReportDocument doc;
  doc.config = cfg;
  doc.prefix_len_used = n;
  doc.head.assign(prefix.begin(),
                  prefix.begin() + static_cast<std::ptrdiff_t>(std::min(cfg.head_letters, n)));

  const std::uint64_t max_r = std::min<std::uint64_t>(cfg.max_r, n - 1);
  doc.condition = condition_both(prefix, cfg.T, cfg.min_w, cfg.max_wprime, max_r);

  const std::uint64_t auto_bound = std::min<std::uint64_t>(1000, n / 4);
  const std::uint64_t max_period = cfg.max_period == 0 ? auto_bound : cfg.max_period;
  const std::uint64_t max_preperiod = cfg.max_preperiod == 0 ? auto_bound : cfg.max_preperiod;
  doc.periodic = periodicity_scan(prefix, max_period, max_preperiod);

  ConvergentScan scan;
  std::vector<double> log_q;
  log_q.reserve(n);
  for (Letter a : prefix) {
    scan.push(a);
    log_q.push_back(log_of(scan.q()));
  }
  doc.convergent_L = scan.index();
  doc.q_digits = scan.q().str().size();

  doc.growth = growth_from_logs(log_q, cfg.tail_fraction);
  if (cfg.growth_mode == GrowthMode::converged) {
    const double mid = std::sqrt(doc.growth.M_hat * doc.growth.m_hat);
    doc.growth.M_hat = mid;
    doc.growth.m_hat = mid;
  }

  doc.verdict = criterion_verdict(doc.condition, doc.growth, doc.periodic, true);

  doc.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
  return doc;
}

nlohmann::json to_json(const ReportDocument& doc) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["family"] = doc.config.family;
  j["params"] = doc.config.params;
  j["prefix_len"] = doc.prefix_len_used;
  j["head"] = doc.head;

  j["config"] = {
      {"prefix_len", doc.config.prefix_len},
      {"max_r", doc.config.max_r},
      {"min_w", rat_json(doc.config.min_w)},
      {"T", doc.config.T},
      {"max_wprime", rat_json(doc.config.max_wprime)},
      {"tail_fraction", doc.config.tail_fraction},
      {"growth_mode", doc.config.growth_mode == GrowthMode::converged ? "converged" : "windowed"},
      {"max_period", doc.config.max_period},
      {"max_preperiod", doc.config.max_preperiod},
  };

  j["convergents"] = {{"L", doc.convergent_L}, {"q_digits", doc.q_digits}};
  j["growth"] = {{"M_hat", doc.growth.M_hat},
                 {"m_hat", doc.growth.m_hat},
                 {"window", {doc.growth.window_start, doc.growth.window_end}}};

  j["condition"] = {
      {"T", doc.condition.T},
      {"min_w", rat_json(doc.condition.min_w)},
      {"star",
       {{"w", opt_rat_json(doc.condition.star_w)},
        {"witnesses", witnesses_json(doc.condition.star_witnesses)}}},
      {"star_star",
       {{"w", opt_rat_json(doc.condition.starstar_w)},
        {"w_prime", opt_rat_json(doc.condition.starstar_wprime)},
        {"witnesses", witnesses_json(doc.condition.starstar_witnesses)}}},
  };
  j["witnesses"] = witnesses_json(doc.condition.witnesses());

  if (doc.periodic) {
    j["periodicity"] = {{"preperiod", doc.periodic->preperiod}, {"period", doc.periodic->period}};
  } else {
    j["periodicity"] = nullptr;
  }

  j["verdict"] = {{"rule", to_string(doc.verdict.rule)},
                  {"w", opt_rat_json(doc.verdict.w)},
                  {"w_prime", opt_rat_json(doc.verdict.w_prime)},
                  {"M_hat", doc.verdict.M_hat},
                  {"m_hat", doc.verdict.m_hat},
                  {"margin", doc.verdict.margin},
                  {"caveat", doc.verdict.caveat}};
  j["elapsed_ms"] = doc.elapsed_ms;
  return j;
}

namespace {

Word theta_pattern_from(const std::string& text) {
  if (text == "golden") return {1};
  if (text == "sqrt2m1") return {2};
  if (text == "sqrt3m1") return {1, 2};
  return parse_letter_list(text);
}

std::unique_ptr<SignStream> signs_from(const std::string& text) {
  if (text == "plus") return constant_signs(1);
  if (text == "minus") return constant_signs(-1);
  if (text.rfind("random:", 0) == 0) return seeded_signs(std::stoull(text.substr(7)));
  SignedWord pattern;
  for (char c : text) {
    if (c == '+')
      pattern.push_back(1);
    else if (c == '-')
      pattern.push_back(-1);
    else
      throw std::invalid_argument("bad sign pattern (use '+'/'-', \"plus\", \"minus\" or "
                                  "\"random:SEED\"): " +
                                  text);
  }
  return periodic_signs(std::move(pattern));
}

// One symmetry: "X1:M1;X2:M2;..." with X a comma letter list (may be empty)
// and M one of E, R. Example: "3:E" or "1,2:R;:E".
PerturbedSymmetry symmetry_from(const std::string& text) {
  PerturbedSymmetry sym;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ';')) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos || colon + 1 != item.size() - 1)
      throw std::invalid_argument("bad symmetry item (want LETTERS:E or LETTERS:R): " + item);
    const char mode = item.back();
    if (mode != 'E' && mode != 'R')
      throw std::invalid_argument("bad symmetry mode (want E or R): " + item);
    const std::string letters = item.substr(0, colon);
    sym.inserts.push_back(letters.empty() ? Word{} : parse_letter_list(letters));
    sym.modes.push_back(mode == 'E' ? InsertMode::E : InsertMode::R);
  }
  if (sym.inserts.empty())
    throw std::invalid_argument("bad symmetry (no items): " + text);
  return sym;
}

Alphabet alphabet_of_letters(std::vector<Letter> ls) {
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  return Alphabet(std::move(ls));
}

// Comma-separated non-negative schedule indices (0 is a valid index here).
std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::string tok;
  std::istringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad schedule list: " + text);
    }
  }
  if (out.empty()) throw std::invalid_argument("bad schedule list: " + text);
  return out;
}

}  // namespace

std::unique_ptr<WordStream> make_family_stream(
    const std::string& family, const std::map<std::string, std::string>& params) {
  const auto letter_param = [&](const std::string& key, Letter dflt) {
    const auto v = get_u64(params, key, dflt);
    if (v == 0 || v > UINT32_MAX)
      throw std::invalid_argument("bad letter for param '" + key + "'");
    return static_cast<Letter>(v);
  };

  if (family == "baum-sweet") {
    return baum_sweet_stream(letter_param("a", 1), letter_param("b", 2));
  }
  if (family == "rudin-shapiro") {
    return rudin_shapiro_stream(letter_param("a", 1), letter_param("b", 2));
  }
  if (family == "davison") {
    const Word pattern = theta_pattern_from(get_param(params, "theta", "golden"));
    const auto k = get_u64(params, "k", 2);
    if (k == 0 || k > 1000000) throw std::invalid_argument("davison: bad modulus k");
    return davison_stream(std::make_unique<PeriodicStream>(pattern),
                          static_cast<unsigned>(k));
  }
  if (family == "paperfolding") {
    FoldingSystem sys;
    sys.instructions = signs_from(get_param(params, "instructions", "plus"));
    sys.letter_plus = letter_param("a", 1);
    sys.letter_minus = letter_param("b", 2);
    return paperfolding_stream(std::move(sys));
  }
  if (family == "perturbed") {
    const auto word_it = params.find("word");
    if (word_it == params.end())
      throw std::invalid_argument("perturbed: missing 'word' param (comma letter list)");
    Word seed = parse_letter_list(word_it->second);

    std::vector<PerturbedSymmetry> syms;
    std::vector<Letter> letters(seed.begin(), seed.end());
    // Symmetries are passed as sym0, sym1, ... (or a single "sym").
    if (auto it = params.find("sym"); it != params.end())
      syms.push_back(symmetry_from(it->second));
    for (std::size_t i = 0;; ++i) {
      auto it = params.find("sym" + std::to_string(i));
      if (it == params.end()) break;
      syms.push_back(symmetry_from(it->second));
    }
    if (syms.empty())
      throw std::invalid_argument("perturbed: need at least one 'sym' param");
    for (const auto& sym : syms)
      for (const Word& x : sym.inserts) letters.insert(letters.end(), x.begin(), x.end());

    std::unique_ptr<IndexStream> schedule;
    const std::string sched = get_param(params, "schedule", "0");
    if (sched.rfind("random:", 0) == 0) {
      schedule = seeded_indices(std::stoull(sched.substr(7)), syms.size());
    } else {
      schedule = periodic_indices(parse_index_list(sched));
    }

    PerturbedSystem sys{alphabet_of_letters(std::move(letters)), std::move(seed),
                        std::move(syms), std::move(schedule)};
    return perturbed_symmetry_stream(std::move(sys));
  }
  if (family == "concat") {
    Alphabet alphabet(parse_letter_list(get_param(params, "alphabet", "1,2,3")));
    double lambda;
    try {
      lambda = std::stod(get_param(params, "lambda", "4"));
    } catch (const std::exception&) {
      throw std::invalid_argument("concat: bad lambda");
    }
    const std::string blocks = get_param(params, "blocks", "random:42");
    std::shared_ptr<BlockSource> source;
    if (blocks.rfind("random:", 0) == 0) {
      const bool odd = get_param(params, "odd", "true") != "false";
      source = random_equal_blocks(alphabet, lambda, std::stoull(blocks.substr(7)), odd);
    } else if (blocks.rfind("file:", 0) == 0) {
      WordFile wf = read_word_file(blocks.substr(5));
      source = fixed_blocks(std::move(wf.words));
    } else {
      throw std::invalid_argument("concat: blocks must be random:SEED or file:PATH");
    }
    ConcatFamily fam{std::move(alphabet), lambda, std::move(source)};
    return concat_family_stream(fam);
  }
  throw std::invalid_argument("unknown family: " + family);
}

}  // namespace cfstammer
