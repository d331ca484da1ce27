#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfstammer/cf.hpp"
#include "cfstammer/generators.hpp"
#include "cfstammer/matgrowth.hpp"
#include "cfstammer/report.hpp"
#include "cfstammer/repetition.hpp"
#include "cfstammer/words.hpp"

namespace py = pybind11;
using namespace cfstammer;

namespace {

py::int_ big_to_py(const BigInt& x) {
  // Round-trip through hex text; exact for any magnitude.
  const std::string hex = x.str(0, std::ios_base::hex);
  py::object i = py::module_::import("builtins").attr("int")(hex, 16);
  return py::int_(i);
}

py::dict witness_dict(const RepetitionWitness& w) {
  py::dict d;
  d["r"] = w.r;
  d["s"] = w.s;
  d["p"] = w.p;
  const Rat e = w.w();
  d["w_num"] = e.numerator();
  d["w_den"] = e.denominator();
  return d;
}

py::object opt_rat_tuple(const std::optional<Rat>& r) {
  if (!r) return py::none();
  return py::make_tuple(r->numerator(), r->denominator());
}

py::dict condition_dict(const ConditionReport& rep) {
  py::dict d;
  d["T"] = rep.T;
  d["star_w"] = opt_rat_tuple(rep.star_w);
  py::list star;
  for (const auto& w : rep.star_witnesses) star.append(witness_dict(w));
  d["star_witnesses"] = star;
  d["starstar_w"] = opt_rat_tuple(rep.starstar_w);
  d["starstar_wprime"] = opt_rat_tuple(rep.starstar_wprime);
  py::list ss;
  for (const auto& w : rep.starstar_witnesses) ss.append(witness_dict(w));
  d["starstar_witnesses"] = ss;
  return d;
}

void bind_words(py::module_& m) {
  m.def("mirror", [](const Word& w) { return mirror(w); }, py::arg("word"),
        "Reverse a word.");
  m.def(
      "frac_power",
      [](const Word& w, long long num, long long den) { return frac_power(w, Rat(num, den)); },
      py::arg("word"), py::arg("num"), py::arg("den") = 1,
      "Fractional power: the first (num/den)*len(word) letters of word^inf.");
}

void bind_cf(py::module_& m) {
  m.def(
      "continuant", [](const Word& w) { return big_to_py(continuant(w)); }, py::arg("word"),
      "Continuant K(word): the denominator of [0; word].");
  m.def(
      "convergents",
      [](const Word& quotients, std::uint64_t L) {
        py::list out;
        for (const auto& c : convergents(quotients, L))
          out.append(py::make_tuple(c.index, big_to_py(c.p), big_to_py(c.q)));
        return out;
      },
      py::arg("quotients"), py::arg("L"), "Convergents (l, p_l, q_l) for l = 0..L.");
  m.def(
      "eval_interval",
      [](const Word& quotients, std::uint64_t L) {
        const auto iv = eval_interval(quotients, L);
        return py::make_tuple(
            py::make_tuple(big_to_py(numerator(iv.lo)), big_to_py(denominator(iv.lo))),
            py::make_tuple(big_to_py(numerator(iv.hi)), big_to_py(denominator(iv.hi))));
      },
      py::arg("quotients"), py::arg("L"),
      "Open interval bracketing the value after L quotients, as two fractions.");
}

void bind_repetition(py::module_& m) {
  m.def(
      "detect_repetitions",
      [](const Word& prefix, std::uint64_t max_r, long long min_w_num, long long min_w_den) {
        py::list out;
        for (const auto& w : detect_repetitions(prefix, max_r, Rat(min_w_num, min_w_den)))
          out.append(witness_dict(w));
        return out;
      },
      py::arg("prefix"), py::arg("max_r") = kDefaultMaxR, py::arg("min_w_num") = 5,
      py::arg("min_w_den") = 4, "Best repetition witness per scale.");
  m.def(
      "condition_star",
      [](const Word& prefix, int T, long long num, long long den) {
        return condition_dict(condition_star(prefix, T, Rat(num, den)));
      },
      py::arg("prefix"), py::arg("T") = kDefaultT, py::arg("min_w_num") = 5,
      py::arg("min_w_den") = 4);
  m.def(
      "condition_star_star",
      [](const Word& prefix, int T, long long num, long long den, long long wp_num,
         long long wp_den, std::uint64_t max_r) {
        return condition_dict(
            condition_star_star(prefix, T, Rat(num, den), Rat(wp_num, wp_den), max_r));
      },
      py::arg("prefix"), py::arg("T") = kDefaultT, py::arg("min_w_num") = 5,
      py::arg("min_w_den") = 4, py::arg("max_wprime_num") = 1, py::arg("max_wprime_den") = 2,
      py::arg("max_r") = kDefaultMaxR);
  m.def(
      "periodicity_scan",
      [](const Word& prefix, std::uint64_t max_period, std::uint64_t max_preperiod) -> py::object {
        const auto p = periodicity_scan(prefix, max_period, max_preperiod);
        if (!p) return py::none();
        return py::make_tuple(p->preperiod, p->period);
      },
      py::arg("prefix"), py::arg("max_period"), py::arg("max_preperiod"),
      "Least (period-first) eventual periodicity, or None.");
}

void bind_matgrowth(py::module_& m) {
  m.def(
      "alphabet_spectrum",
      [](const std::vector<Letter>& letters) {
        const auto rep = alphabet_spectrum(Alphabet(letters));
        py::dict d;
        d["alphabet"] = rep.alphabet.letters;
        d["rho"] = rep.rho;
        d["gamma"] = rep.gamma;
        d["X"] = rep.X;
        d["threshold"] = rep.threshold;
        return d;
      },
      py::arg("alphabet"), "Spectral radii, X and the growth-ratio threshold.");
  m.def("product_radius_margin", &product_radius_margin, py::arg("a"), py::arg("b"),
        "rho(B_a B_b) - (rho(B_a) rho(B_b))^gamma.");
}

void bind_pipeline(py::module_& m) {
  m.def(
      "generate",
      [](const std::string& family, const std::map<std::string, std::string>& params,
         std::size_t count) {
        auto stream = make_family_stream(family, params);
        return take(*stream, count);
      },
      py::arg("family"), py::arg("params") = std::map<std::string, std::string>{},
      py::arg("count") = 64, "First letters of a family word (see README for params).");
  m.def(
      "analyze_json",
      [](const std::string& family, const std::map<std::string, std::string>& params,
         std::size_t prefix_len, int T, std::uint64_t max_r, const std::string& growth_mode) {
        AnalysisConfig cfg;
        cfg.family = family;
        cfg.params = params;
        cfg.prefix_len = prefix_len;
        cfg.T = T;
        cfg.max_r = max_r;
        if (growth_mode == "converged")
          cfg.growth_mode = GrowthMode::converged;
        else if (growth_mode != "windowed")
          throw std::invalid_argument("growth_mode must be windowed or converged");
        auto stream = make_family_stream(family, params);
        const Word prefix = take(*stream, prefix_len);
        return to_json(run_analysis(cfg, prefix)).dump();
      },
      py::arg("family"), py::arg("params") = std::map<std::string, std::string>{},
      py::arg("prefix_len") = std::size_t{8192}, py::arg("T") = kDefaultT,
      py::arg("max_r") = kDefaultMaxR, py::arg("growth_mode") = "windowed",
      "Full analysis pipeline; returns the report as a JSON string.");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact continued-fraction streams, repetition structure and growth verdicts";
  m.attr("__version__") = "0.1.0";
  bind_words(m);
  bind_cf(m);
  bind_repetition(m);
  bind_matgrowth(m);
  bind_pipeline(m);
}
