#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lmu {

/// Runs the `lmu` command line (arguments without the program name).
/// Returns 0 on success, 1 on input errors, 2 on internal failures,
/// including a cross-check disagreement.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lmu
