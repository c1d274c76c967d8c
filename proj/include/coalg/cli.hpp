// cli.hpp -- deterministic command-line frontend.  Exit codes: 0 success,
// 1 property failure (a check that came out negative), 2 usage or parse
// errors.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coalg {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coalg
