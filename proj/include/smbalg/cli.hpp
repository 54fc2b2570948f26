#pragma once

#include <iosfwd>  // for ostream
#include <string>  // for string
#include <vector>  // for vector

namespace smbalg {

  //! Exit codes of run_cli.
  enum ExitCode : int {
    exit_holds     = 0,  //!< verdict holds, or the command succeeded
    exit_fails     = 1,  //!< verdict fails; the report says where
    exit_usage     = 2,  //!< bad arguments, unreadable or malformed input
    exit_falsified = 3  //!< an internal cross-check disagreed
  };

  //! Runs the command line \p args (without the program name).
  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace smbalg
