#pragma once

#include <json.hpp>

#include "smbalg/analyzer.hpp"
#include "smbalg/identity.hpp"
#include "smbalg/partition.hpp"

namespace smbalg::detail {

  nlohmann::json witness_json(std::vector<Elem> const& w);
  nlohmann::json violation_json(std::string const& rule, std::vector<Elem> const& witness);
  char const*    verdict_word(bool holds);

  nlohmann::json to_json(SmbReport const& report);
  nlohmann::json to_json(RegularityReport const& report, Partition const& sim);
  nlohmann::json to_json(BaseReport const& report);

}  // namespace smbalg::detail
