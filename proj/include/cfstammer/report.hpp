#pragma once
// End-to-end analysis pipeline: prefix -> repetition conditions + periodicity
// + growth -> verdict, assembled into a JSON-serializable document. Also the
// family registry shared by the CLI and the python bindings.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "cfstammer/cf.hpp"
#include "cfstammer/repetition.hpp"
#include "cfstammer/words.hpp"

namespace cfstammer {

inline constexpr const char* kSchemaVersion = "1";

enum class GrowthMode { windowed, converged };

struct AnalysisConfig {
  std::string family;  // family name, or "file" for externally supplied words
  std::map<std::string, std::string> params;

  std::size_t prefix_len = 8192;  // >= 100
  std::uint64_t max_r = kDefaultMaxR;
  Rat min_w = kDefaultMinW;  // > 1
  int T = kDefaultT;         // >= 3
  Rat max_wprime = kDefaultMaxWprime;
  double tail_fraction = 0.5;
  // converged asserts the growth limit exists: M_hat = m_hat = geometric
  // midpoint of the windowed values, so L = log M_hat / log m_hat is exactly 1.
  GrowthMode growth_mode = GrowthMode::windowed;
  std::uint64_t max_period = 0;     // 0 = auto: min(1000, prefix_len / 4)
  std::uint64_t max_preperiod = 0;  // 0 = auto: min(1000, prefix_len / 4)
  std::size_t head_letters = 32;
};

struct ReportDocument {
  AnalysisConfig config;
  Word head;                    // first letters of the analyzed prefix
  std::size_t prefix_len_used = 0;
  std::uint64_t convergent_L = 0;  // index of the last convergent scanned
  std::size_t q_digits = 0;        // decimal digits of q_L
  GrowthEstimate growth;
  ConditionReport condition;
  std::optional<Periodicity> periodic;
  CriterionVerdict verdict;
  double elapsed_ms = 0.0;
};

// Validates the config, evaluates both repetition conditions, the periodicity
// scan, the convergent scan and growth estimate, and the verdict.
ReportDocument run_analysis(const AnalysisConfig& cfg, const Word& prefix);

nlohmann::json to_json(const ReportDocument& doc);

// Family registry: builds the stream described by (family, params). Known
// families: baum-sweet, rudin-shapiro, davison, paperfolding, perturbed,
// concat. Throws std::invalid_argument on unknown family or bad params.
// Recognized params mirror the CLI options of `generate` (see README).
std::unique_ptr<WordStream> make_family_stream(const std::string& family,
                                               const std::map<std::string, std::string>& params);

}  // namespace cfstammer
