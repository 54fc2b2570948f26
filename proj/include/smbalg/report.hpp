#pragma once

#include <string>  // for string

#include "smbalg/analyzer.hpp"
#include "smbalg/identity.hpp"
#include "smbalg/partition.hpp"

namespace smbalg {

  //! JSON documents, serialized with sorted keys and no indentation.
  //!
  //!     SmbReport         {"verdict", "sim", "violations": [{"rule", "witness"}]}
  //!     RegularityReport  {"verdict", "sim", "violations"}   rules "i".."iv"
  //!     BaseReport        {"verdict", "sim" (or null), "violations"}  rules are base names
  //!
  //! "verdict" is "holds" or "fails"; partitions use the "0 1 | 2" text form.
  std::string report_json(SmbReport const& report);
  std::string report_json(RegularityReport const& report, Partition const& sim);
  std::string report_json(BaseReport const& report);

  //! "holds", or "fails at (a,b,...)".
  std::string verdict_text(Verdict const& v);

}  // namespace smbalg
