#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/coloring.hpp"
#include "cloudlab/states.hpp"

namespace cloudlab::cli {

enum ExitCode : int { kOk = 0, kClaimFails = 1, kUsage = 2 };

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

using DotOverlay = std::variant<std::monostate, TwoValuedState, Coloring>;

/// Graphviz document of the skeleton. Each edge takes the color of the
/// first context containing it. A state overlay draws true vertices as
/// boxes, false ones as filled circles and undefined ones as open circles;
/// a coloring overlay fills each vertex with its color class.
std::string export_dot(const Cloud& cloud, const DotOverlay& overlay = {});

}  // namespace cloudlab::cli
