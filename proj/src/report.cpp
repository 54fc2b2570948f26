#include "smbalg/report.hpp"

#include "report_json.hpp"

namespace smbalg {

  namespace detail {
    nlohmann::json witness_json(std::vector<Elem> const& w) {
      auto out = nlohmann::json::array();
      for (Elem x : w) {
        out.push_back(x);
      }
      return out;
    }

    nlohmann::json violation_json(std::string const& rule, std::vector<Elem> const& witness) {
      return {{"rule", rule}, {"witness", witness_json(witness)}};
    }

    char const* verdict_word(bool holds) {
      return holds ? "holds" : "fails";
    }

    nlohmann::json to_json(SmbReport const& report) {
      auto violations = nlohmann::json::array();
      for (auto const& v : report.violations) {
        violations.push_back(violation_json(v.rule, v.witness));
      }
      return {{"verdict", verdict_word(report.holds)},
              {"sim", to_string(report.sim)},
              {"violations", std::move(violations)}};
    }

    nlohmann::json to_json(RegularityReport const& report, Partition const& sim) {
      static char const* const names[] = {"i", "ii", "iii", "iv"};
      auto                     violations = nlohmann::json::array();
      for (std::size_t i = 0; i < 4; ++i) {
        if (!report.conditions[i]) {
          violations.push_back(
              violation_json(names[i], report.conditions[i].counterexample.value_or(std::vector<Elem>{})));
        }
      }
      return {{"verdict", verdict_word(report.regular())},
              {"sim", to_string(sim)},
              {"violations", std::move(violations)}};
    }

    nlohmann::json to_json(BaseReport const& report) {
      auto violations = nlohmann::json::array();
      for (std::size_t i = 0; i < report.names.size(); ++i) {
        if (!report.verdicts[i]) {
          violations.push_back(violation_json(
              report.names[i], report.verdicts[i].counterexample.value_or(std::vector<Elem>{})));
        }
      }
      nlohmann::json sim = nullptr;
      if (report.recovered_sim) {
        sim = to_string(*report.recovered_sim);
      }
      return {{"verdict", verdict_word(report.holds())},
              {"sim", std::move(sim)},
              {"violations", std::move(violations)}};
    }
  }  // namespace detail

  std::string report_json(SmbReport const& report) {
    return detail::to_json(report).dump();
  }

  std::string report_json(RegularityReport const& report, Partition const& sim) {
    return detail::to_json(report, sim).dump();
  }

  std::string report_json(BaseReport const& report) {
    return detail::to_json(report).dump();
  }

  std::string verdict_text(Verdict const& v) {
    if (v.holds) {
      return "holds";
    }
    std::string out = "fails at (";
    if (v.counterexample) {
      for (std::size_t i = 0; i < v.counterexample->size(); ++i) {
        out += (i ? "," : "") + std::to_string((*v.counterexample)[i]);
      }
    }
    return out + ")";
  }

}  // namespace smbalg
